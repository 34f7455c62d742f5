"""
Unit tests for the one-time pad
"""

import pytest
import os
import sys

# Add the src directory to the path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from model.errors import InvalidMessage, PadExhausted
from model.pad import Pad, vernam_xor


class TestPad :
	"""Test cases for pad consumption and Vernam XOR"""

	def test_xor_example(self) :
		assert vernam_xor("1010", Pad("0110")) == "1100"

	def test_zero_pad_is_identity(self) :
		assert vernam_xor("100111", Pad("000000")) == "100111"

	def test_self_inverse(self) :
		pad_bits = "1101001110"
		encrypted = vernam_xor("0011101010", Pad(pad_bits))
		assert vernam_xor(encrypted, Pad(pad_bits)) == "0011101010"

	def test_exhausted(self) :
		pad = Pad("10101010", offset=4)
		with pytest.raises(PadExhausted) :
			vernam_xor("11110000", pad)
		assert pad.offset == 4

	def test_offset_advances(self) :
		pad = Pad("0110")
		assert pad.take(3) == "011"
		assert pad.remaining == 1
		assert pad.take(1) == "0"
		assert pad.remaining == 0

	def test_random_is_seeded(self) :
		assert Pad.random(64, seed=7).bits == Pad.random(64, seed=7).bits
		assert set(Pad.random(64, seed=7).bits) <= {'0', '1'}

	def test_invalid_bits(self) :
		with pytest.raises(InvalidMessage) :
			Pad("0120")

	def test_bad_offset(self) :
		with pytest.raises(PadExhausted) :
			Pad("01", offset=3)


if __name__ == "__main__" :
	pytest.main([__file__, "-v"])
