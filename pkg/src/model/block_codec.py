"""
Block segmentation and block-value extraction
The passive (decode-side) core: keys, blocks, values and hidden bits
"""

import logging
from collections import Counter
from typing import Iterable, List, Optional

from model.errors import (IdOutOfRange, InvalidKey, InvalidMessage,
                          OverlappingBlocks)
from model.objects import Block, ObjectStream, StegKey

logger = logging.getLogger(__name__)


def validate_key(key: StegKey) :
	"""
	Check every StegKey invariant

	Parameters:
		key (StegKey): key to check

	Raises:
		InvalidKey: naming the first violated invariant
	"""
	if not isinstance(key.n, int) or key.n < 1 :
		raise InvalidKey(f"alphabet size n must be >= 1, got {key.n}")
	if not key.key_ids :
		raise InvalidKey("key_ids must not be empty")
	for key_id in sorted(key.key_ids) :
		if not 1 <= key_id <= key.n :
			raise InvalidKey(
				f"key id {key_id} out of range 1..{key.n}")
	if key.value_bits < 1 :
		raise InvalidKey(f"value bits x must be >= 1, got {key.value_bits}")
	policy = key.start_policy
	if policy.kind not in ('chained', 'stride') :
		raise InvalidKey(f"unknown start policy '{policy.kind}'")
	if policy.kind == 'stride' and (policy.stride is None or policy.stride < 1) :
		raise InvalidKey(f"stride must be >= 1, got {policy.stride}")


def block_value(length: int, x: int) -> int :
	"""
	Value of a block: the last x bits of its object count

	Parameters:
		length (int): number of objects in the block (>= 1)
		x (int): number of value bits (>= 1)

	Returns:
		int: length mod 2^x
	"""
	if length < 1 or x < 1 :
		raise ValueError(f"block_value needs length >= 1 and x >= 1, "
		                 f"got ({length}, {x})")
	return length & ((1 << x) - 1)


def render_value(value: int, x: int) -> str :
	"""Render a block value as x bits, most significant first"""
	return format(value, f"0{x}b")


def check_bitstring(bits: str) :
	"""Raise InvalidMessage unless bits only holds '0' and '1'"""
	if not isinstance(bits, str) or set(bits) - {'0', '1'} :
		raise InvalidMessage("message must be a string of '0' and '1'")


def split_message(message: str, x: int) -> List[int] :
	"""
	Split a message into x-bit chunk values

	Parameters:
		message (str): bitstring
		x (int): chunk width

	Returns:
		list: chunk values, most significant bit first within each chunk
	"""
	check_bitstring(message)
	if len(message) % x :
		raise InvalidMessage(
			f"message length {len(message)} is not a multiple of x={x}")
	return [int(message[i :i + x], 2) for i in range(0, len(message), x)]


def _check_ids(stream: ObjectStream, key: StegKey) :
	for item in stream :
		if not 1 <= item.object_id <= key.n :
			raise IdOutOfRange(
				f"object id {item.object_id} at seq {item.seq} outside 1..{key.n}")


def segment_blocks(stream: ObjectStream, key: StegKey) -> List[Block] :
	"""
	Cut a stream into minimal blocks covering the key

	Each block is the shortest window from its start that contains every
	key identifier. The first block starts at seq 0; chained blocks start
	right after the previous end, stride blocks m objects after the previous
	start. A trailing window that never covers the key yields no block.

	Parameters:
		stream (ObjectStream): objects in seq order
		key (StegKey): validated key

	Returns:
		list: Block objects in stream order

	Raises:
		OverlappingBlocks: a stride start falls inside the previous block
	"""
	validate_key(key)
	_check_ids(stream, key)

	ids = stream.ids()
	blocks = []
	start = 0
	while start < len(ids) :
		missing = set(key.key_ids)
		end = None
		for position in range(start, len(ids)) :
			missing.discard(ids[position])
			if not missing :
				end = position
				break
		if end is None :
			break

		length = end - start + 1
		blocks.append(Block(start, end, length,
		                    block_value(length, key.value_bits)))

		if key.start_policy.is_chained :
			start = end + 1
		else :
			next_start = start + key.start_policy.stride
			if next_start <= end :
				raise OverlappingBlocks(
					f"block {len(blocks) - 1} ends at {end} but the next "
					f"stride start is {next_start}")
			start = next_start

	return blocks


def decode_stream(stream: ObjectStream, key: StegKey) -> str :
	"""
	Extract the hidden bits carried by a stream

	Parameters:
		stream (ObjectStream): received objects in decode order
		key (StegKey): shared key

	Returns:
		str: concatenated x-bit block values (MSB first)
	"""
	blocks = segment_blocks(stream, key)
	return ''.join(render_value(block.value, key.value_bits)
	               for block in blocks)


def block_value_histogram(stream: ObjectStream, key: StegKey) -> Counter :
	"""Count how often each block value occurs in a stream"""
	return Counter(block.value for block in segment_blocks(stream, key))


class BlockTracker :
	"""
	Incremental state of the block currently being sent

	Encoders ask what emitting an object would do before committing to it.
	Only the chained start policy is tracked.
	"""

	# Outcomes of emitting one object
	OPEN = 'open'
	CORRECT = 'correct'
	WRONG = 'wrong'

	def __init__(self, key: StegKey) :
		self.key = key
		self.length = 0
		self.missing = set(key.key_ids)

	def snapshot(self) :
		return self.length, frozenset(self.missing)

	def restore(self, state) :
		self.length, missing = state
		self.missing = set(missing)

	def completes(self, object_id: int) -> bool :
		"""Whether emitting object_id closes the current block"""
		return self.missing <= {object_id}

	def outcome(self, object_id: int, wanted: Optional[int]) -> str :
		"""
		Classify emitting object_id against the wanted block value

		Parameters:
			object_id (int): candidate object
			wanted (int): value the current block must take, or None
				when no message bits remain

		Returns:
			str: OPEN, CORRECT or WRONG
		"""
		if not self.completes(object_id) :
			return self.OPEN
		if wanted is None :
			return self.CORRECT
		value = block_value(self.length + 1, self.key.value_bits)
		return self.CORRECT if value == wanted else self.WRONG

	def push(self, object_id: int) -> Optional[int] :
		"""
		Emit an object

		Returns:
			int or None: value of the block this object closed
		"""
		self.length += 1
		self.missing.discard(object_id)
		if self.missing :
			return None
		value = block_value(self.length, self.key.value_bits)
		self.length = 0
		self.missing = set(self.key.key_ids)
		return value

	def feasible(self, available: Iterable[int]) -> bool :
		"""Whether the objects still available can close the block"""
		return self.missing <= set(available)
