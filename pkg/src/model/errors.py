"""
Exception hierarchy for StegBlocks
Model code raises these; the controller layer maps them to exit codes
"""


class StegBlocksError(Exception) :
	"""Base class for every error raised by the model layer"""


# ---------------------------------------------------------------------------
# Validation (exit code 2)
# ---------------------------------------------------------------------------

class ValidationError(StegBlocksError, ValueError) :
	"""Inputs or parameters violate a documented invariant"""


class InvalidKey(ValidationError) :
	"""A steganographic key violates its invariants"""


class InvalidMessage(ValidationError) :
	"""A message is not a bitstring or cannot be chunked into x-bit values"""


class UnsupportedConfiguration(ValidationError) :
	"""A valid key/parameter set that a given component does not handle"""


class RankOutOfRange(ValidationError) :
	"""Permutation rank outside [0, n!)"""


class NTooLarge(ValidationError) :
	"""Alphabet size too large for the requested enumeration"""


class KeyIdAbsent(ValidationError) :
	"""The key identifier does not occur in a group"""


class PadExhausted(ValidationError) :
	"""Not enough unused one-time-pad bits remain"""


class InvalidChannelConfig(ValidationError) :
	"""Channel parameters violate their invariants"""


class IdOutOfRange(ValidationError) :
	"""An object identifier lies outside the carrier's identifier domain"""


class EmptySample(ValidationError) :
	"""A statistic was requested over no samples"""


class TooFewEvents(ValidationError) :
	"""Not enough events to form inter-event gaps"""


class ZeroSupportMismatch(ValidationError) :
	"""KL term with P(i) > 0 and Q(i) = 0 under the Error policy"""


class CategoryMismatch(ValidationError) :
	"""Two distributions are defined over different category universes"""


class TraceFormatError(ValidationError) :
	"""A trace or pad file does not follow its documented format"""


# ---------------------------------------------------------------------------
# Embedding (exit code 3)
# ---------------------------------------------------------------------------

class EmbeddingError(StegBlocksError) :
	"""
	The encoder could not place every message bit

	Attributes:
		report: partial EncodeReport, or None when nothing was produced
	"""

	def __init__(self, message, report=None) :
		super().__init__(message)
		self.report = report


class IncompleteEmbedding(EmbeddingError) :
	"""Cover exhausted (or search budget spent) with bits remaining"""


class EmbeddingStall(EmbeddingError) :
	"""Every object in a full buffer would close the block with a wrong value"""


class InsufficientCover(EmbeddingError) :
	"""Fewer cover groups than message bits"""


# ---------------------------------------------------------------------------
# Decoding (exit code 4)
# ---------------------------------------------------------------------------

class DecodeError(StegBlocksError, ValueError) :
	"""A received carrier cannot be decoded"""


class MalformedGroup(DecodeError) :
	"""A group is not a permutation of {1..n}"""


class MissingTsn(DecodeError) :
	"""TSN ordering requested for an arrival that carries no TSN"""


class OverlappingBlocks(DecodeError) :
	"""A stride start would fall inside the previous block"""
