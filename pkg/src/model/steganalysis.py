"""
Steganalysis
Empirical distributions over data units and inter-send times, relative
entropy, chi-square tests and the three undetectability checks
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from math import e as EULER, log
from typing import Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import rel_entr
from scipy.stats import chi2, chi2_contingency, chisquare

from model.block_codec import check_bitstring
from model.errors import (CategoryMismatch, EmptySample, InvalidMessage,
                          MalformedGroup, TooFewEvents, ValidationError,
                          ZeroSupportMismatch)
from model.objects import ObjectStream
from model.pad import Pad
from model.perfect_scheme import (GroupTrace, ParityEnumeration, lex_rank,
                                  perfect_encode)

logger = logging.getLogger(__name__)

CRITICAL_ALPHAS = (0.05, 0.01, 0.001)
MAX_TABLE_DOF = 120

DEFAULT_THRESHOLD_BITS = 0.005
DEFAULT_BIN_NS = 1_000_000


@dataclass(frozen=True)
class EmpiricalDistribution :
	"""
	Frequency counts over an explicit category universe

	Attributes:
		categories (tuple): outcome labels, e.g. group ranks or time bins
		counts (tuple): non-negative count per category
		total (int): sum of counts
	"""
	categories: Tuple[Hashable, ...]
	counts: Tuple[int, ...]
	total: int

	def probabilities(self) -> np.ndarray :
		"""count/total per category"""
		if not self.total :
			raise EmptySample("distribution has no samples")
		return np.asarray(self.counts, dtype=float) / self.total

	def as_dict(self) -> dict :
		return dict(zip(self.categories, self.counts))

	def aligned_counts(self, categories: Sequence[Hashable]) -> np.ndarray :
		"""Counts reordered to the given universe"""
		lookup = self.as_dict()
		return np.asarray([lookup[c] for c in categories], dtype=float)


def _ordered(labels: Iterable[Hashable]) -> List[Hashable] :
	labels = list(dict.fromkeys(labels))
	try :
		return sorted(labels)
	except TypeError :
		return labels


def estimate_distribution(samples: Sequence[Hashable],
                          universe: Optional[Iterable[Hashable]] = None
                          ) -> EmpiricalDistribution :
	"""
	Count outcome labels

	Parameters:
		samples: observed labels
		universe: optional category universe; unobserved categories get
			count 0

	Returns:
		EmpiricalDistribution: counts over the universe (observed labels if
			no universe is given)

	Raises:
		EmptySample: no samples
		CategoryMismatch: a sample lies outside the given universe
	"""
	samples = list(samples)
	if not samples :
		raise EmptySample("cannot estimate a distribution from no samples")
	counts = Counter(samples)
	if universe is None :
		categories = _ordered(counts)
	else :
		categories = _ordered(universe)
		outside = set(counts) - set(categories)
		if outside :
			raise CategoryMismatch(
				f"samples {sorted(map(str, outside))} lie outside the universe")
	return EmpiricalDistribution(tuple(categories),
	                             tuple(counts.get(c, 0) for c in categories),
	                             len(samples))


class ZeroPolicy(Enum) :
	"""What to do with a term where P(i) > 0 and Q(i) = 0"""
	ERROR = 'error'
	INFINITY = 'infinity'
	SMOOTH = 'smooth'


@dataclass(frozen=True)
class DivergenceOptions :
	"""
	Settings of kl_divergence

	Attributes:
		log_base (float): 2 for bits, e for nats
		zero_policy (ZeroPolicy): handling of empty Q support
		epsilon (float): mass added to every category under SMOOTH
	"""
	log_base: float = 2.0
	zero_policy: ZeroPolicy = ZeroPolicy.SMOOTH
	epsilon: float = 1e-9

	def __post_init__(self) :
		if self.log_base not in (2, 2.0, EULER) :
			raise ValidationError(f"log base must be 2 or e, got {self.log_base}")
		if self.zero_policy is ZeroPolicy.SMOOTH and not self.epsilon > 0 :
			raise ValidationError(
				f"smoothing epsilon must be > 0, got {self.epsilon}")

	@classmethod
	def exact(cls, log_base: float = 2.0) -> "DivergenceOptions" :
		"""Unsmoothed divergence that refuses undefined terms"""
		return cls(log_base, ZeroPolicy.ERROR)


def _smooth(p: np.ndarray, epsilon: float) -> np.ndarray :
	p = p + epsilon
	return p / p.sum()


def kl_divergence(p: EmpiricalDistribution, q: EmpiricalDistribution,
                  opts: Optional[DivergenceOptions] = None) -> float :
	"""
	Relative entropy D(P||Q) = sum P(i) log(P(i)/Q(i))

	Terms with P(i) = 0 contribute 0.

	Parameters:
		p (EmpiricalDistribution): reference distribution (the cover)
		q (EmpiricalDistribution): compared distribution (the steganogram)
		opts (DivergenceOptions): base and zero policy; smoothed bits if None

	Returns:
		float: divergence, never negative

	Raises:
		CategoryMismatch: different category universes
		ZeroSupportMismatch: P(i) > 0 = Q(i) under the ERROR policy
	"""
	opts = opts or DivergenceOptions()
	if set(p.categories) != set(q.categories) :
		raise CategoryMismatch(
			"distributions are defined over different categories")
	if not q.total :
		raise EmptySample("distribution has no samples")
	pp = p.probabilities()
	qq = q.aligned_counts(p.categories) / q.total

	if opts.zero_policy is ZeroPolicy.SMOOTH :
		pp = _smooth(pp, opts.epsilon)
		qq = _smooth(qq, opts.epsilon)
	elif np.any((pp > 0) & (qq == 0)) :
		if opts.zero_policy is ZeroPolicy.ERROR :
			raise ZeroSupportMismatch(
				"P has mass on a category where Q has none")
		return float('inf')

	value = float(rel_entr(pp, qq).sum()) / log(opts.log_base)
	return max(value, 0.0)


def chi_square_uniformity(dist: EmpiricalDistribution) -> Tuple[float, int] :
	"""
	Pearson statistic against the uniform expectation

	Parameters:
		dist (EmpiricalDistribution): observed counts

	Returns:
		tuple: (statistic, degrees of freedom = categories - 1)

	Raises:
		EmptySample: no samples or fewer than two categories
	"""
	if not dist.total :
		raise EmptySample("chi-square needs at least one sample")
	if len(dist.categories) < 2 :
		raise EmptySample("chi-square needs at least two categories")
	result = chisquare(np.asarray(dist.counts, dtype=float))
	return float(result.statistic), len(dist.counts) - 1


@lru_cache(maxsize=None)
def chi_square_critical(dof: int, alpha: float = 0.001) -> float :
	"""
	Upper critical value of the chi-square distribution

	Parameters:
		dof (int): degrees of freedom, 1..120
		alpha (float): 0.05, 0.01 or 0.001

	Returns:
		float: value exceeded with probability alpha under the null
	"""
	if alpha not in CRITICAL_ALPHAS :
		raise ValidationError(
			f"alpha must be one of {CRITICAL_ALPHAS}, got {alpha}")
	if not 1 <= dof <= MAX_TABLE_DOF :
		raise ValidationError(f"dof must lie in 1..{MAX_TABLE_DOF}, got {dof}")
	return float(chi2.ppf(1.0 - alpha, dof))


def chi_square_homogeneity(p: EmpiricalDistribution,
                           q: EmpiricalDistribution) -> Tuple[float, int] :
	"""
	Two-sample chi-square test over a 2 x K contingency table

	Categories empty in both samples are dropped; a table with a single
	remaining category gives (0.0, 0).

	Returns:
		tuple: (statistic, degrees of freedom)
	"""
	if set(p.categories) != set(q.categories) :
		raise CategoryMismatch(
			"distributions are defined over different categories")
	table = np.vstack([np.asarray(p.counts, dtype=float),
	                   q.aligned_counts(p.categories)])
	table = table[:, table.sum(axis=0) > 0]
	if table.shape[1] < 2 :
		return 0.0, 0
	result = chi2_contingency(table, correction=False)
	return float(result.statistic), int(result.dof)


def _event_times(events) -> List[int] :
	if isinstance(events, ObjectStream) :
		return list(events.times())
	times = []
	for event in events :
		times.append(getattr(event, 't_send_ns', getattr(event, 't_ns', event)))
	return [int(t) for t in times]


def inter_event_gaps(events) -> np.ndarray :
	"""Successive gaps of an ObjectStream, SendEvents or plain timestamps"""
	times = _event_times(events)
	if len(times) < 2 :
		raise TooFewEvents(f"{len(times)} events give no inter-event gap")
	return np.diff(np.asarray(times, dtype=np.int64))


def timing_bins(events, bin_ns: int) -> List[int] :
	if bin_ns <= 0 :
		raise ValidationError(f"bin_ns must be > 0, got {bin_ns}")
	return (inter_event_gaps(events) // bin_ns).tolist()


def timing_distribution(events, bin_ns: int,
                        universe: Optional[Iterable[int]] = None
                        ) -> EmpiricalDistribution :
	"""
	Histogram of inter-event gaps binned by floor(gap / bin_ns)

	Parameters:
		events: ObjectStream, SendEvents or timestamps in send order
		bin_ns (int): bin width
		universe: optional set of bins to include

	Raises:
		TooFewEvents: fewer than two events
	"""
	return estimate_distribution(timing_bins(events, bin_ns), universe)


def data_units(stream: ObjectStream, group_size: Optional[int] = None) -> List[int] :
	"""
	Data-unit labels of a carrier

	Whole groups are labelled by their lexicographic rank; without a group
	size every object is its own unit, labelled by its identifier.

	Raises:
		MalformedGroup: the stream does not split into permutations
	"""
	if group_size is None :
		return list(stream.ids())
	trace = GroupTrace.from_stream(stream, group_size)
	return [lex_rank(group) for group in trace.groups]


def paired_distributions(cover_labels: Sequence[Hashable],
                         stego_labels: Sequence[Hashable]
                         ) -> Tuple[EmpiricalDistribution, EmpiricalDistribution] :
	"""Estimate two distributions over the union of their observed labels"""
	universe = set(cover_labels) | set(stego_labels)
	return (estimate_distribution(cover_labels, universe),
	        estimate_distribution(stego_labels, universe))


@dataclass(frozen=True)
class AnalysisOptions :
	"""
	Thresholds and estimator settings of undetectability_report

	Attributes:
		group_size (int): n for group carriers; per-object units if None
		bin_ns (int): timing histogram bin width
		kl_threshold (float): maximal data-unit divergence in bits
		timing_threshold (float): maximal inter-send-time divergence in bits
		alpha (float): significance level of the chi-square test
		divergence (DivergenceOptions): KL settings
	"""
	group_size: Optional[int] = None
	bin_ns: int = DEFAULT_BIN_NS
	kl_threshold: float = DEFAULT_THRESHOLD_BITS
	timing_threshold: float = DEFAULT_THRESHOLD_BITS
	alpha: float = 0.001
	divergence: DivergenceOptions = field(default_factory=DivergenceOptions)

	def __post_init__(self) :
		if not 0.0 < self.alpha < 1.0 :
			raise ValidationError(f"alpha must lie in (0, 1), got {self.alpha}")

	def describe(self) -> dict :
		return {
			'group_size' : self.group_size,
			'bin_ns' : self.bin_ns,
			'kl_threshold' : self.kl_threshold,
			'timing_threshold' : self.timing_threshold,
			'alpha' : self.alpha,
			'log_base' : 'e' if self.divergence.log_base == EULER else 2,
			'zero_policy' : self.divergence.zero_policy.value,
			'epsilon' : self.divergence.epsilon,
			}


@dataclass
class UndetectabilityReport :
	"""Per-condition results and the overall verdict"""
	condition2: dict
	condition3: dict
	condition1: Optional[dict] = None
	parameters: dict = field(default_factory=dict)

	@property
	def passed(self) -> bool :
		conditions = [self.condition2, self.condition3]
		if self.condition1 is not None :
			conditions.append(self.condition1)
		return all(condition['pass'] for condition in conditions)

	@property
	def verdict(self) -> str :
		return 'pass' if self.passed else 'fail'

	def to_dict(self) -> dict :
		report = {}
		if self.condition1 is not None :
			report['condition1'] = self.condition1
		report['condition2'] = self.condition2
		report['condition3'] = self.condition3
		report['verdict'] = self.verdict
		report['parameters'] = self.parameters
		return report


def undetectability_report(cover: ObjectStream, stego: ObjectStream,
                           opts: Optional[AnalysisOptions] = None,
                           condition1: Optional[dict] = None
                           ) -> UndetectabilityReport :
	"""
	Compare a cover trace with a steganogram

	Condition 2 compares data-unit distributions (KL in bits plus a
	two-sample chi-square test); condition 3 compares inter-send-time
	histograms. A precomputed condition-1 result joins the verdict.

	Parameters:
		cover (ObjectStream): cover trace
		stego (ObjectStream): steganogram
		opts (AnalysisOptions): thresholds and estimator settings
		condition1 (dict): result of message_independence_check, optional

	Returns:
		UndetectabilityReport: per-condition figures and verdict
	"""
	opts = opts or AnalysisOptions()
	if opts.group_size is not None :
		for name, stream in (('cover', cover), ('stego', stego)) :
			if len(stream) % opts.group_size :
				raise MalformedGroup(
					f"{name} has {len(stream)} objects, not a multiple of "
					f"{opts.group_size}")

	p_units, q_units = paired_distributions(data_units(cover, opts.group_size),
	                                        data_units(stego, opts.group_size))
	kl_units = kl_divergence(p_units, q_units, opts.divergence)
	statistic, dof = chi_square_homogeneity(p_units, q_units)
	critical = float(chi2.ppf(1.0 - opts.alpha, dof)) if dof else None
	chi_ok = critical is None or statistic < critical
	condition2 = {
		'kl_bits' : kl_units,
		'chi2' : statistic,
		'dof' : dof,
		'critical' : critical,
		'pass' : bool(kl_units <= opts.kl_threshold and chi_ok),
		}

	p_times, q_times = paired_distributions(timing_bins(cover, opts.bin_ns),
	                                        timing_bins(stego, opts.bin_ns))
	kl_times = kl_divergence(p_times, q_times, opts.divergence)
	condition3 = {
		'kl_bits' : kl_times,
		'pass' : bool(kl_times <= opts.timing_threshold),
		}

	report = UndetectabilityReport(condition2, condition3, condition1,
	                               opts.describe())
	logger.info("undetectability: condition2 kl=%.6g chi2=%.4g dof=%d, "
	            "condition3 kl=%.6g, verdict %s", kl_units, statistic, dof,
	            kl_times, report.verdict)
	return report


def _trial_groups(enum: ParityEnumeration, message: str, master_seed: int,
                  trial: int) -> List[int] :
	"""Sent-group ranks of one encode with a fresh cover and pad"""
	rng = np.random.default_rng([master_seed, trial])
	base = np.tile(np.arange(1, enum.n + 1), (len(message), 1))
	rows = rng.permuted(base, axis=1).tolist()
	pad = Pad(''.join(map(str, rng.integers(0, 2, size=len(message)).tolist())))
	cover = GroupTrace(enum.n, tuple(tuple(row) for row in rows),
	                   tuple(range(len(message) * enum.n)))
	stego = perfect_encode(cover, enum, message, pad)
	return [lex_rank(group) for group in stego.groups]


def message_independence_test(enum: ParityEnumeration, messages: Sequence[str],
                              trials: int, master_seed: int,
                              opts: Optional[DivergenceOptions] = None) -> float :
	"""
	Largest divergence between the steganogram distributions of fixed messages

	Every message is encoded trials times; trial t draws its cover and pad
	from a generator seeded with (master_seed, t), so all messages see the
	same randomness. Independence of message and steganogram means every
	pairwise divergence tends to 0.

	Parameters:
		enum (ParityEnumeration): group scheme
		messages: fixed bitstrings
		trials (int): encodes per message
		master_seed (int): root of the per-trial seeds
		opts (DivergenceOptions): KL settings

	Returns:
		float: maximum pairwise KL; 0 with a single message

	Raises:
		EmptySample: no trials or an empty message
	"""
	if trials < 1 :
		raise EmptySample(f"independence test needs trials >= 1, got {trials}")
	if not messages :
		raise InvalidMessage("independence test needs at least one message")
	for message in messages :
		check_bitstring(message)
		if not message :
			raise EmptySample("independence test needs non-empty messages")
	if len(messages) == 1 :
		return 0.0

	samples = []
	for message in messages :
		labels = []
		for trial in range(trials) :
			labels.extend(_trial_groups(enum, message, master_seed, trial))
		samples.append(labels)
		logger.debug("independence test: %d groups for message %s", len(labels),
		             message[:16])

	universe = set().union(*map(set, samples))
	dists = [estimate_distribution(labels, universe) for labels in samples]
	worst = 0.0
	for a, b in combinations(range(len(dists)), 2) :
		worst = max(worst, kl_divergence(dists[a], dists[b], opts),
		            kl_divergence(dists[b], dists[a], opts))
	logger.info("independence test over %d messages x %d trials: max kl %.6g",
	            len(messages), trials, worst)
	return worst


def message_independence_check(enum: ParityEnumeration, messages: Sequence[str],
                               trials: int, master_seed: int,
                               threshold: float = DEFAULT_THRESHOLD_BITS,
                               opts: Optional[DivergenceOptions] = None) -> dict :
	"""Condition-1 entry of an undetectability report"""
	worst = message_independence_test(enum, messages, trials, master_seed, opts)
	return {
		'max_pairwise_kl_bits' : worst,
		'messages' : len(messages),
		'trials' : trials,
		'master_seed' : master_seed,
		'pass' : bool(worst <= threshold),
		}
