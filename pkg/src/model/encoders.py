"""
Active embedding strategies
Produce object streams whose blocks carry the requested bits by controlling
the current object, a bounded buffer, or the entire communication
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from model.block_codec import BlockTracker, split_message, validate_key
from model.errors import (EmbeddingStall, IncompleteEmbedding,
                          UnsupportedConfiguration, ValidationError)
from model.objects import DEFAULT_INTERVAL_NS, ObjectStream, StegKey

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10 ** 6


# ---------------------------------------------------------------------------
# Cover sources
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TraceReplay :
	"""Replays recorded identifiers (and optionally their timestamps)"""
	items: Tuple[int, ...]
	t_ns: Optional[Tuple[int, ...]] = None
	interval_ns: int = DEFAULT_INTERVAL_NS

	def stream(self) -> ObjectStream :
		return ObjectStream.from_ids(self.items, self.t_ns, self.interval_ns)


@dataclass(frozen=True)
class IidUniform :
	"""Independent identifiers drawn uniformly from {1..n}"""
	n: int
	limit: int
	seed: int
	interval_ns: int = DEFAULT_INTERVAL_NS

	def stream(self) -> ObjectStream :
		rng = np.random.default_rng(self.seed)
		ids = rng.integers(1, self.n + 1, size=self.limit)
		return ObjectStream.from_ids(ids.tolist(), interval_ns=self.interval_ns)


@dataclass(frozen=True)
class GroupUniform :
	"""Whole permutations of {1..n}, each of the n! equally likely"""
	n: int
	groups: int
	seed: int
	interval_ns: int = DEFAULT_INTERVAL_NS

	def permutations(self) -> np.ndarray :
		"""Array of shape (groups, n), one uniform permutation per row"""
		rng = np.random.default_rng(self.seed)
		base = np.tile(np.arange(1, self.n + 1), (self.groups, 1))
		return rng.permuted(base, axis=1)

	def stream(self) -> ObjectStream :
		return ObjectStream.from_ids(self.permutations().ravel().tolist(),
		                             interval_ns=self.interval_ns)


CoverSource = Union[TraceReplay, IidUniform, GroupUniform]


def as_cover_stream(cover) -> ObjectStream :
	"""
	Normalise the accepted cover forms into an ObjectStream

	Parameters:
		cover: CoverSource, ObjectStream or a plain sequence of identifiers

	Returns:
		ObjectStream: the cover as it would be sent without steganography
	"""
	if isinstance(cover, ObjectStream) :
		return cover
	if hasattr(cover, 'stream') :
		return cover.stream()
	return ObjectStream.from_ids(cover)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class EncodeReport :
	"""Outcome of one encode call"""
	stego: ObjectStream
	bits_embedded: int
	suspensions: int
	stalled: bool
	strategy: str = ''
	message_bits: int = 0
	blocks: int = 0
	pending: int = 0
	parameters: dict = field(default_factory=dict)

	@property
	def embedding_rate(self) -> float :
		"""Hidden bits per sent object"""
		if not len(self.stego) :
			return 0.0
		return self.bits_embedded / len(self.stego)

	def to_dict(self) -> dict :
		return {
			'strategy' : self.strategy,
			'bits_embedded' : self.bits_embedded,
			'message_bits' : self.message_bits,
			'blocks' : self.blocks,
			'suspensions' : self.suspensions,
			'pending' : self.pending,
			'stalled' : self.stalled,
			'objects' : len(self.stego),
			'embedding_rate' : self.embedding_rate,
			'parameters' : self.parameters,
			}


def _check_encoder_key(key: StegKey) :
	validate_key(key)
	if not key.start_policy.is_chained :
		raise UnsupportedConfiguration(
			"encoders support the chained start policy only")


class _Emitter :
	"""
	Collects emitted objects and re-derives their send times

	The k-th emission leaves no earlier than the k-th cover slot, no earlier
	than the object itself became available, and never before the previous
	emission. Deferred objects therefore bunch up behind their successors.
	"""

	def __init__(self, cover: ObjectStream) :
		self.slots = cover.times()
		self.ids = []
		self.times = []

	def emit(self, object_id, available_ns) :
		slot = self.slots[len(self.ids)]
		previous = self.times[-1] if self.times else slot
		self.ids.append(object_id)
		self.times.append(max(previous, slot, available_ns))

	def stream(self) -> ObjectStream :
		return ObjectStream.from_ids(self.ids, self.times)


def _parameters(key, message, **extra) :
	params = {'key' : key.describe(), 'message_bits' : len(message)}
	params.update(extra)
	return params


# ---------------------------------------------------------------------------
# Control of the current object
# ---------------------------------------------------------------------------

def encode_current_object(source, key: StegKey, message: str) -> EncodeReport :
	"""
	Embed by suspending objects that would close a block with the wrong value

	Suspended objects are retried first, in FIFO order, before the next
	source object is considered. Once the message is placed, held objects and
	the rest of the source are sent unchanged.

	Parameters:
		source: cover source (CoverSource, ObjectStream or identifiers)
		key (StegKey): chained key
		message (str): bitstring, length a multiple of x

	Returns:
		EncodeReport: stego stream and counters

	Raises:
		IncompleteEmbedding: source exhausted with bits remaining
	"""
	_check_encoder_key(key)
	chunks = split_message(message, key.value_bits)
	cover = as_cover_stream(source)
	tracker = BlockTracker(key)
	emitter = _Emitter(cover)
	suspended: List[Tuple[int, int]] = []
	position = 0
	placed = 0
	suspensions = 0

	while placed < len(chunks) :
		wanted = chunks[placed]
		choice = next((i for i, (object_id, _) in enumerate(suspended)
		               if tracker.outcome(object_id, wanted)
		               != BlockTracker.WRONG), None)
		if choice is not None :
			object_id, available = suspended.pop(choice)
		else :
			if position >= len(cover) :
				report = EncodeReport(
					emitter.stream(), placed * key.value_bits, suspensions,
					True, 'current', len(message), placed, len(suspended),
					_parameters(key, message))
				raise IncompleteEmbedding(
					f"source exhausted after {placed * key.value_bits} of "
					f"{len(message)} bits", report)
			item = cover.items[position]
			position += 1
			if tracker.outcome(item.object_id, wanted) == BlockTracker.WRONG :
				suspended.append((item.object_id, item.t_ns))
				suspensions += 1
				logger.debug("suspended object %d at seq %d", item.object_id,
				             item.seq)
				continue
			object_id, available = item.object_id, item.t_ns

		emitter.emit(object_id, available)
		if tracker.push(object_id) is not None :
			placed += 1

	for object_id, available in suspended :
		emitter.emit(object_id, available)
	for item in cover.items[position :] :
		emitter.emit(item.object_id, item.t_ns)

	logger.info("current-object control: %d bits, %d suspensions",
	            len(message), suspensions)
	return EncodeReport(emitter.stream(), len(message), suspensions, False,
	                    'current', len(message), placed, 0,
	                    _parameters(key, message))


# ---------------------------------------------------------------------------
# Control of the buffer
# ---------------------------------------------------------------------------

def encode_buffered(source, key: StegKey, message: str, s: int) -> EncodeReport :
	"""
	Embed by reordering within a look-ahead window of s objects

	At each step the earliest window object that does not close the current
	block with a wrong value is sent, then the window is refilled.

	Parameters:
		source: cover source
		key (StegKey): chained key
		message (str): bitstring, length a multiple of x
		s (int): buffer size, at least 2

	Returns:
		EncodeReport: stego stream and counters

	Raises:
		EmbeddingStall: a full window holds only wrong-closing objects
		IncompleteEmbedding: source exhausted with bits remaining
	"""
	if s < 2 :
		raise ValidationError(f"buffer size s must be >= 2, got {s}")
	_check_encoder_key(key)
	chunks = split_message(message, key.value_bits)
	cover = as_cover_stream(source)
	tracker = BlockTracker(key)
	emitter = _Emitter(cover)
	window: List[Tuple[int, int]] = []
	position = 0
	placed = 0
	suspensions = 0

	def partial_report() :
		return EncodeReport(emitter.stream(), placed * key.value_bits,
		                    suspensions, True, 'buffer', len(message), placed,
		                    len(window), _parameters(key, message, buffer=s))

	while placed < len(chunks) :
		while len(window) < s and position < len(cover) :
			item = cover.items[position]
			window.append((item.object_id, item.t_ns))
			position += 1

		wanted = chunks[placed]
		choice = next((i for i, (object_id, _) in enumerate(window)
		               if tracker.outcome(object_id, wanted)
		               != BlockTracker.WRONG), None)
		if choice is None :
			if len(window) == s :
				logger.debug("buffer stalled on %s", [o for o, _ in window])
				raise EmbeddingStall(
					f"every object in the {s}-object buffer closes the block "
					f"with a wrong value", partial_report())
			raise IncompleteEmbedding(
				f"source exhausted after {placed * key.value_bits} of "
				f"{len(message)} bits", partial_report())

		if choice :
			suspensions += 1
		object_id, available = window.pop(choice)
		emitter.emit(object_id, available)
		if tracker.push(object_id) is not None :
			placed += 1

	for object_id, available in window :
		emitter.emit(object_id, available)
	for item in cover.items[position :] :
		emitter.emit(item.object_id, item.t_ns)

	logger.info("buffer control (s=%d): %d bits, %d reorderings", s,
	            len(message), suspensions)
	return EncodeReport(emitter.stream(), len(message), suspensions, False,
	                    'buffer', len(message), placed, 0,
	                    _parameters(key, message, buffer=s))


# ---------------------------------------------------------------------------
# Control of the entire communication
# ---------------------------------------------------------------------------

def _out_of_order(order: Sequence[int]) -> int :
	"""Count emissions that skipped an earlier, still unsent cover object"""
	sent = set()
	lowest = 0
	skipped = 0
	for index in order :
		while lowest in sent :
			lowest += 1
		if index != lowest :
			skipped += 1
		sent.add(index)
	return skipped


def encode_full_control(cover, key: StegKey, message: str,
                        node_budget: int = DEFAULT_NODE_BUDGET) -> EncodeReport :
	"""
	Embed by choosing a whole reordering of the cover before sending

	Depth-first search, block by block, trying the remaining objects in cover
	order and never closing a block with a wrong value. The send times are the
	cover's send times position by position.

	Parameters:
		cover: cover source
		key (StegKey): chained key
		message (str): bitstring, length a multiple of x
		node_budget (int): maximum number of search nodes

	Returns:
		EncodeReport: stego stream (a permutation of the cover)

	Raises:
		IncompleteEmbedding: no reordering found within the budget
	"""
	_check_encoder_key(key)
	chunks = split_message(message, key.value_bits)
	cover_stream = as_cover_stream(cover)
	ids = cover_stream.ids()
	total = len(ids)
	used = [False] * total
	remaining = {}
	for object_id in ids :
		remaining[object_id] = remaining.get(object_id, 0) + 1

	tracker = BlockTracker(key)
	order: List[int] = []
	placed = 0
	first_free = 0
	best_placed = 0
	best_order: List[int] = []
	nodes = 0

	def candidates() :
		seen = set()
		picked = []
		wanted = chunks[placed] if placed < len(chunks) else None
		live = sum(1 for count in remaining.values() if count > 0)
		for index in range(first_free, total) :
			object_id = ids[index]
			if used[index] or object_id in seen :
				continue
			seen.add(object_id)
			if tracker.outcome(object_id, wanted) != BlockTracker.WRONG :
				picked.append(index)
			if len(seen) == live :
				break
		return picked

	def feasible() :
		return tracker.feasible(o for o, c in remaining.items() if c > 0)

	def finish(chosen) :
		taken = set(chosen)
		full = list(chosen) + [i for i in range(total) if i not in taken]
		stego = ObjectStream.from_ids([ids[i] for i in full],
		                              cover_stream.times())
		return full, stego

	# Each frame: [candidate indices, next candidate, state before emitting]
	stack = []
	if chunks and feasible() :
		stack.append([candidates(), 0, (tracker.snapshot(), placed)])

	while placed < len(chunks) and stack :
		frame = stack[-1]
		if frame[1] >= len(frame[0]) :
			stack.pop()
			if not stack :
				break
			index = order.pop()
			used[index] = False
			remaining[ids[index]] += 1
			first_free = min(first_free, index)
			state, placed = stack[-1][2]
			tracker.restore(state)
			continue

		index = frame[0][frame[1]]
		frame[1] += 1
		nodes += 1
		if nodes > node_budget :
			logger.debug("node budget %d spent", node_budget)
			break

		used[index] = True
		remaining[ids[index]] -= 1
		order.append(index)
		while first_free < total and used[first_free] :
			first_free += 1
		if tracker.push(ids[index]) is not None :
			placed += 1
			if placed > best_placed :
				best_placed = placed
				best_order = list(order)

		if placed == len(chunks) :
			break
		if feasible() :
			stack.append([candidates(), 0, (tracker.snapshot(), placed)])
		else :
			order.pop()
			used[index] = False
			remaining[ids[index]] += 1
			first_free = min(first_free, index)
			state, placed = frame[2]
			tracker.restore(state)

	params = _parameters(key, message, node_budget=node_budget, nodes=nodes)
	if placed < len(chunks) :
		full, stego = finish(best_order)
		report = EncodeReport(stego, best_placed * key.value_bits,
		                      _out_of_order(full), True, 'full', len(message),
		                      best_placed, 0, params)
		raise IncompleteEmbedding(
			f"no reordering within {node_budget} nodes embeds all "
			f"{len(message)} bits (best {best_placed * key.value_bits})", report)

	full, stego = finish(order)
	suspensions = _out_of_order(full)
	logger.info("full control: %d bits, %d objects moved, %d nodes",
	            len(message), suspensions, nodes)
	return EncodeReport(stego, len(message), suspensions, False, 'full',
	                    len(message), placed, 0, params)
