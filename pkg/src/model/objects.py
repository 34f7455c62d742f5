"""
Core carrier data structures
Object streams, steganographic keys, block start policies and blocks
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

from model.errors import InvalidKey, TraceFormatError

# Object identifiers are dense integers 1..n; carrier identifiers
# (TCP connection ids, SCTP stream ids) map onto them unchanged.
ObjectId = int

DEFAULT_INTERVAL_NS = 1_000_000


@dataclass(frozen=True)
class StreamItem :
	"""One sent (or received) object"""
	object_id: ObjectId
	t_ns: int
	seq: int


@dataclass(frozen=True)
class ObjectStream :
	"""
	Timestamped sequence of object identifiers, the overt carrier

	seq values run 0, 1, 2, ... and t_ns never decreases along them.
	"""
	items: Tuple[StreamItem, ...] = ()

	def __post_init__(self) :
		object.__setattr__(self, 'items', tuple(self.items))

	@classmethod
	def from_ids(cls, ids: Iterable[int], t_ns: Optional[Sequence[int]] = None,
	             interval_ns: int = DEFAULT_INTERVAL_NS) -> "ObjectStream" :
		"""
		Build a stream from bare identifiers

		Parameters:
			ids: object identifiers in send order
			t_ns: explicit timestamps; evenly spaced at interval_ns if omitted
			interval_ns (int): gap used for generated timestamps

		Returns:
			ObjectStream: stream with seq 0..len-1
		"""
		ids = [int(i) for i in ids]
		if t_ns is None :
			t_ns = [i * interval_ns for i in range(len(ids))]
		if len(t_ns) != len(ids) :
			raise TraceFormatError(
				f"{len(ids)} identifiers but {len(t_ns)} timestamps")
		return cls(tuple(StreamItem(object_id, int(t), seq)
		                 for seq, (object_id, t) in enumerate(zip(ids, t_ns))))

	def ids(self) -> Tuple[int, ...] :
		"""Identifier sequence in seq order"""
		return tuple(item.object_id for item in self.items)

	def times(self) -> Tuple[int, ...] :
		"""Timestamp sequence in seq order"""
		return tuple(item.t_ns for item in self.items)

	def validate(self) :
		"""
		Check the stream invariants

		Raises:
			TraceFormatError: seq not contiguous from 0 or time going backwards
		"""
		previous_t = None
		for expected_seq, item in enumerate(self.items) :
			if item.seq != expected_seq :
				raise TraceFormatError(
					f"seq {item.seq} found where {expected_seq} was expected")
			if item.object_id < 1 :
				raise TraceFormatError(
					f"object id {item.object_id} at seq {item.seq} is below 1")
			if previous_t is not None and item.t_ns < previous_t :
				raise TraceFormatError(f"t_ns decreases at seq {item.seq}")
			previous_t = item.t_ns

	def __len__(self) :
		return len(self.items)

	def __iter__(self) :
		return iter(self.items)


@dataclass(frozen=True)
class StartPolicy :
	"""
	Where the next block starts

	kind is 'chained' (right after the previous block's end) or 'stride'
	(a fixed number of objects after the previous block's start).
	"""
	kind: str = 'chained'
	stride: Optional[int] = None

	@classmethod
	def chained(cls) -> "StartPolicy" :
		return cls('chained')

	@classmethod
	def every(cls, m: int) -> "StartPolicy" :
		"""Stride policy with m objects between block starts"""
		return cls('stride', m)

	@classmethod
	def parse(cls, text: str) -> "StartPolicy" :
		"""
		Parse 'chained' or 'stride:M'

		Parameters:
			text (str): policy as written on the command line

		Returns:
			StartPolicy: parsed policy (not yet validated)
		"""
		text = text.strip().lower()
		if text == 'chained' :
			return cls.chained()
		if text.startswith('stride:') :
			try :
				return cls.every(int(text.split(':', 1)[1]))
			except ValueError :
				pass
		raise ValueError(f"Unknown start policy '{text}'")

	@property
	def is_chained(self) -> bool :
		return self.kind == 'chained'

	def __str__(self) :
		return 'chained' if self.is_chained else f"stride:{self.stride}"


@dataclass(frozen=True)
class StegKey :
	"""
	Shared secret of sender and receiver

	Attributes:
		n (int): carrier alphabet size
		key_ids (frozenset): identifiers whose joint coverage closes a block
		value_bits (int): x, the number of low bits of a block length used
		start_policy (StartPolicy): block start rule
	"""
	n: int
	key_ids: frozenset
	value_bits: int = 1
	start_policy: StartPolicy = field(default_factory=StartPolicy.chained)

	def __post_init__(self) :
		object.__setattr__(self, 'key_ids', frozenset(self.key_ids))

	@classmethod
	def parse(cls, n: int, key_text: str, value_bits: int = 1,
	          start: str = 'chained') -> "StegKey" :
		"""
		Build a key from command-line text

		Parameters:
			n (int): alphabet size
			key_text (str): comma-separated identifiers, e.g. "1,3"
			value_bits (int): x
			start (str): 'chained' or 'stride:M'

		Raises:
			InvalidKey: unreadable identifiers or start policy
		"""
		try :
			ids = [int(part) for part in key_text.split(',') if part.strip()]
			policy = StartPolicy.parse(start)
		except ValueError as e :
			raise InvalidKey(f"cannot read key: {e}") from None
		if len(set(ids)) != len(ids) :
			raise InvalidKey(f"repeated key identifier in '{key_text}'")
		key_ids = frozenset(ids)
		return cls(n, key_ids, value_bits, policy)

	@property
	def k(self) -> int :
		return len(self.key_ids)

	def describe(self) -> dict :
		"""Plain-data form for reports"""
		return {
			'n' : self.n,
			'key_ids' : sorted(self.key_ids),
			'value_bits' : self.value_bits,
			'start_policy' : str(self.start_policy),
			}


@dataclass(frozen=True)
class Block :
	"""A segmented subsequence: positions are seq indices, inclusive"""
	start: int
	end: int
	length: int
	value: int
