"""
One-time pad key material
Single-use bit consumption and Vernam XOR
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from model.block_codec import check_bitstring
from model.errors import PadExhausted

logger = logging.getLogger(__name__)


@dataclass
class Pad :
	"""
	One-time pad K of length l with a consumption offset

	The offset only moves forward, so no pad bit is ever used twice.
	"""
	bits: str
	offset: int = 0

	def __post_init__(self) :
		check_bitstring(self.bits)
		if not 0 <= self.offset <= len(self.bits) :
			raise PadExhausted(
				f"offset {self.offset} outside pad of {len(self.bits)} bits")

	@property
	def length(self) -> int :
		return len(self.bits)

	@property
	def remaining(self) -> int :
		return len(self.bits) - self.offset

	@classmethod
	def random(cls, length: int, seed: Optional[int] = None) -> "Pad" :
		"""
		Draw a uniform pad

		Parameters:
			length (int): number of bits
			seed (int): seed for reproducible experiments; OS entropy if None
		"""
		rng = np.random.default_rng(seed)
		return cls(''.join(map(str, rng.integers(0, 2, size=length).tolist())))

	def take(self, count: int) -> str :
		"""
		Consume the next count pad bits

		Raises:
			PadExhausted: fewer than count unused bits remain
		"""
		if count > self.remaining :
			raise PadExhausted(
				f"{count} pad bits needed, {self.remaining} remaining")
		chunk = self.bits[self.offset :self.offset + count]
		self.offset += count
		return chunk


def vernam_xor(bits: str, pad: Pad) -> str :
	"""
	XOR bits with the next unused pad bits (S = M xor K)

	Applying it again with a pad at the same offset restores the input.

	Parameters:
		bits (str): bitstring to encrypt or decrypt
		pad (Pad): key material; its offset advances by len(bits)

	Returns:
		str: bitwise XOR
	"""
	check_bitstring(bits)
	key = pad.take(len(bits))
	return ''.join('1' if a != b else '0' for a, b in zip(bits, key))
