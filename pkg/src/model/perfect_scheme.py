"""
Perfectly undetectable group scheme
Parity-structured enumeration of permutation groups, group selection that
forces a block value, and one-time-pad coupling of the hidden message
"""

import logging
from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from model.block_codec import check_bitstring, validate_key
from model.encoders import GroupUniform
from model.errors import (InsufficientCover, InvalidKey, InvalidMessage,
                          KeyIdAbsent, MalformedGroup, NTooLarge, RankOutOfRange,
                          UnsupportedConfiguration)
from model.objects import ObjectStream, StegKey
from model.pad import Pad, vernam_xor

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]

# n! must fit an unsigned 64-bit count
MAX_RANK_N = 20
# the parity enumeration is materialised (8! = 40320 entries)
MAX_TABLE_N = 8


def check_permutation(p: Sequence[int], n: Optional[int] = None) -> Permutation :
	"""
	Validate that p is a permutation of {1..n}

	Parameters:
		p: candidate group
		n (int): expected size; len(p) if omitted

	Returns:
		tuple: p as a tuple

	Raises:
		MalformedGroup: wrong size, duplicates or identifiers out of range
	"""
	p = tuple(int(v) for v in p)
	n = len(p) if n is None else n
	if len(p) != n or sorted(p) != list(range(1, n + 1)) :
		raise MalformedGroup(f"{list(p)} is not a permutation of 1..{n}")
	return p


def lex_rank(p: Sequence[int]) -> int :
	"""
	Lexicographic rank of a permutation of {1..n} (Lehmer code)

	Parameters:
		p: permutation

	Returns:
		int: rank in [0, n!)
	"""
	if len(p) > MAX_RANK_N :
		raise NTooLarge(f"n={len(p)} exceeds {MAX_RANK_N}")
	p = check_permutation(p)
	unused = list(range(1, len(p) + 1))
	rank = 0
	for i, value in enumerate(p) :
		smaller = unused.index(value)
		rank += smaller * factorial(len(p) - 1 - i)
		unused.pop(smaller)
	return rank


def lex_unrank(r: int, n: int) -> Permutation :
	"""
	Permutation of {1..n} with lexicographic rank r

	Parameters:
		r (int): rank in [0, n!)
		n (int): permutation size, at most 20

	Returns:
		tuple: the permutation
	"""
	if n > MAX_RANK_N :
		raise NTooLarge(f"n={n} exceeds {MAX_RANK_N}")
	if not 0 <= r < factorial(n) :
		raise RankOutOfRange(f"rank {r} outside [0, {n}!)")
	unused = list(range(1, n + 1))
	result = []
	for i in range(n) :
		digit, r = divmod(r, factorial(n - 1 - i))
		result.append(unused.pop(digit))
	return tuple(result)


def value_of_group(p: Sequence[int], key_id: int) -> int :
	"""
	Block value of a group for a single-identifier key and x = 1

	The block starting at the group's first object ends at key_id, so its
	length is key_id's 1-based position.

	Raises:
		KeyIdAbsent: key_id not in p
	"""
	try :
		position = list(p).index(key_id) + 1
	except ValueError :
		raise KeyIdAbsent(f"key id {key_id} not in group {list(p)}") from None
	return position % 2


class ParityEnumeration :
	"""
	Canonical ordering e_0..e_{n!-1} of all groups

	Even indices walk the value-0 groups in lexicographic order, odd indices
	the value-1 groups, so value(e_i) = i mod 2. Requires n even, one key
	identifier and one value bit.
	"""

	def __init__(self, n: int, key_id: int) :
		"""
		Build the enumeration table

		Parameters:
			n (int): even alphabet size, at most 8
			key_id (int): the single key identifier
		"""
		if n < 2 or n % 2 :
			raise UnsupportedConfiguration(
				f"the group scheme needs an even n, got {n}; see check_balance "
				f"for other (n, k) combinations")
		if n > MAX_TABLE_N :
			raise NTooLarge(f"n={n} exceeds {MAX_TABLE_N} for the table")
		if not 1 <= key_id <= n :
			raise InvalidKey(f"key id {key_id} out of range 1..{n}")

		self.n = n
		self.key_id = key_id

		classes: Tuple[List[Permutation], List[Permutation]] = ([], [])
		for p in permutations(range(1, n + 1)) :
			classes[value_of_group(p, key_id)].append(p)

		self.table: List[Permutation] = []
		for even, odd in zip(*classes) :
			self.table.extend((even, odd))
		self.index: Dict[Permutation, int] = {
			p : i for i, p in enumerate(self.table)}

	@classmethod
	def from_key(cls, key: StegKey) -> "ParityEnumeration" :
		"""Enumeration for a StegKey meeting the scheme's assumptions"""
		validate_key(key)
		if key.k != 1 or key.value_bits != 1 or not key.start_policy.is_chained :
			raise UnsupportedConfiguration(
				"the group scheme needs exactly one key id, x = 1 and "
				"chained blocks")
		return cls(key.n, next(iter(key.key_ids)))

	@property
	def size(self) -> int :
		return len(self.table)

	def __len__(self) :
		return len(self.table)


def parity_unrank(i: int, enum: ParityEnumeration) -> Permutation :
	"""Group e_i of the enumeration"""
	if not 0 <= i < enum.size :
		raise RankOutOfRange(f"index {i} outside [0, {enum.size})")
	return enum.table[i]


def parity_rank(p: Sequence[int], enum: ParityEnumeration) -> int :
	"""Index i with e_i = p"""
	key = tuple(p)
	try :
		return enum.index[key]
	except KeyError :
		check_permutation(key, enum.n)
		raise


def select_group(id_j: int, x_j: int, enum: ParityEnumeration) -> Permutation :
	"""
	Group to send in place of cover group e_{id_j} so that its value is x_j

	Returns e_{(id_j + (x_j xor v_j)) mod n!} with v_j = id_j mod 2.
	"""
	if not 0 <= id_j < enum.size :
		raise RankOutOfRange(f"index {id_j} outside [0, {enum.size})")
	if x_j not in (0, 1) :
		raise InvalidMessage(f"group value must be 0 or 1, got {x_j!r}")
	v_j = id_j % 2
	return enum.table[(id_j + (x_j ^ v_j)) % enum.size]


@dataclass(frozen=True)
class GroupTrace :
	"""
	A carrier made of whole groups

	Attributes:
		n (int): group size
		groups (tuple): permutations of {1..n} in send order
		t_ns (tuple): per-object send times, n per group
	"""
	n: int
	groups: Tuple[Permutation, ...]
	t_ns: Tuple[int, ...]

	@classmethod
	def from_stream(cls, stream: ObjectStream, n: int) -> "GroupTrace" :
		"""
		Split a stream into groups of n objects

		Raises:
			MalformedGroup: trailing partial group or a non-permutation
		"""
		ids = stream.ids()
		if len(ids) % n :
			raise MalformedGroup(
				f"{len(ids)} objects do not split into groups of {n}")
		groups = tuple(check_permutation(ids[i :i + n], n)
		               for i in range(0, len(ids), n))
		return cls(n, groups, stream.times())

	@classmethod
	def from_source(cls, source: GroupUniform) -> "GroupTrace" :
		"""Materialise a uniform group source"""
		rows = [tuple(row) for row in source.permutations().tolist()]
		times = tuple(i * source.interval_ns
		              for i in range(source.groups * source.n))
		return cls(source.n, tuple(rows), times)

	def to_stream(self) -> ObjectStream :
		ids = [object_id for group in self.groups for object_id in group]
		return ObjectStream.from_ids(ids, self.t_ns)

	def __len__(self) :
		return len(self.groups)


def perfect_encode(cover, enum: ParityEnumeration, message: str,
                   pad: Pad) -> GroupTrace :
	"""
	Embed a message with the one-time-pad group scheme

	X = message xor pad; group j of the cover with index id_j is replaced by
	select_group(id_j, x_j). Groups past the message are sent unchanged and
	timestamps are the cover's.

	Parameters:
		cover: GroupTrace or GroupUniform source
		enum (ParityEnumeration): shared enumeration
		message (str): bitstring
		pad (Pad): key material, advanced by len(message)

	Returns:
		GroupTrace: the steganogram

	Raises:
		InsufficientCover: fewer groups than message bits
		PadExhausted: not enough pad bits
	"""
	if isinstance(cover, GroupUniform) :
		cover = GroupTrace.from_source(cover)
	check_bitstring(message)
	if cover.n != enum.n :
		raise MalformedGroup(f"cover groups have n={cover.n}, "
		                     f"enumeration has n={enum.n}")
	if len(cover.groups) < len(message) :
		raise InsufficientCover(
			f"{len(cover.groups)} cover groups for {len(message)} bits")

	sent = list(cover.groups)
	indices = [parity_rank(group, enum) for group in sent[:len(message)]]
	encrypted = vernam_xor(message, pad)
	for j, (id_j, bit) in enumerate(zip(indices, encrypted)) :
		sent[j] = select_group(id_j, int(bit), enum)

	logger.debug("group scheme: %d bits over %d groups", len(message),
	             len(sent))
	return GroupTrace(cover.n, tuple(sent), cover.t_ns)


def perfect_decode(trace: GroupTrace, enum: ParityEnumeration, pad: Pad,
                   length: Optional[int] = None) -> str :
	"""
	Recover a message from a group steganogram

	Parameters:
		trace (GroupTrace): received groups in send order
		enum (ParityEnumeration): shared enumeration
		pad (Pad): key material at the offset used for encoding
		length (int): number of groups to read; all groups if None

	Returns:
		str: decrypted message bits
	"""
	groups = trace.groups if length is None else trace.groups[:length]
	if length is not None and length > len(trace.groups) :
		raise InsufficientCover(
			f"{length} bits requested from {len(trace.groups)} groups")
	encrypted = ''.join(
		str(value_of_group(check_permutation(group, enum.n), enum.key_id))
		for group in groups)
	return vernam_xor(encrypted, pad)


def check_balance(n: int, key_ids) -> bool :
	"""
	Whether exactly half of all groups carry block value 1 (x = 1)

	Parameters:
		n (int): alphabet size, at most 8
		key_ids: key identifiers

	Returns:
		bool: True for a balanced (n, key) combination
	"""
	if n > MAX_TABLE_N :
		raise NTooLarge(f"n={n} exceeds {MAX_TABLE_N} for an exhaustive scan")
	key_ids = set(key_ids)
	validate_key(StegKey(n, frozenset(key_ids)))
	ones = 0
	for p in permutations(range(1, n + 1)) :
		length = max(p.index(key_id) for key_id in key_ids) + 1
		ones += length % 2
	return 2 * ones == factorial(n)
