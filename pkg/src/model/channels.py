"""
Carrier models
Discrete-event simulation of parallel TCP connections (arrival-order
semantics, optional ACK gating) and of a multi-stream SCTP association
(TSN reassembly)
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import simpy

from model.errors import IdOutOfRange, InvalidChannelConfig, MissingTsn
from model.objects import ObjectStream

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SendEvent :
	"""
	One object handed to the carrier

	object_id is the TCP connection id or the SCTP stream id; tsn is set for
	SCTP only and grows with seq.
	"""
	seq: int
	object_id: int
	t_send_ns: int
	tsn: Optional[int] = None


@dataclass(frozen=True)
class ChannelConfig :
	"""
	Parameters shared by both carriers

	Attributes:
		delay_ns (int): base one-way delay
		jitter_ns (int): extra delay drawn uniformly from [0, jitter_ns]
		loss_p (float): probability that one transmission attempt is lost
		rto_ns (int): retransmission timeout after a loss
	"""
	delay_ns: int = 10_000_000
	jitter_ns: int = 0
	loss_p: float = 0.0
	rto_ns: int = 200_000_000

	name = 'channel'

	@property
	def identifiers(self) -> int :
		raise NotImplementedError("Subclasses define their identifier count")

	def validate(self) :
		"""
		Check the configuration invariants

		Raises:
			InvalidChannelConfig: naming the violated invariant
		"""
		if not 0 <= self.loss_p < 1 :
			raise InvalidChannelConfig(
				f"loss_p must satisfy 0 <= loss_p < 1, got {self.loss_p}")
		if self.delay_ns < 0 :
			raise InvalidChannelConfig(f"delay_ns must be >= 0, got {self.delay_ns}")
		if self.jitter_ns < 0 :
			raise InvalidChannelConfig(
				f"jitter_ns must be >= 0, got {self.jitter_ns}")
		if self.rto_ns <= 0 :
			raise InvalidChannelConfig(f"rto_ns must be > 0, got {self.rto_ns}")
		if self.identifiers < 1 :
			raise InvalidChannelConfig(
				f"{self.name} needs at least one identifier, got {self.identifiers}")


@dataclass(frozen=True)
class TcpModel(ChannelConfig) :
	"""n parallel TCP connections, in-order delivery within each one"""
	connections: int = 4
	ack_gated: bool = False

	name = 'tcp'

	@property
	def identifiers(self) -> int :
		return self.connections


@dataclass(frozen=True)
class SctpModel(ChannelConfig) :
	"""One SCTP association with n streams; chunks carry a global TSN"""
	streams: int = 4

	name = 'sctp'

	@property
	def identifiers(self) -> int :
		return self.streams


@dataclass(frozen=True)
class Arrival :
	"""One delivered object; attempts counts transmissions including retries"""
	object_id: int
	t_recv_ns: int
	seq: int
	tsn: Optional[int] = None
	attempts: int = 1


@dataclass(frozen=True)
class ReceptionTrace :
	"""Deliveries in arrival-time order, exactly one per sent seq"""
	arrivals: Tuple[Arrival, ...] = ()

	def __len__(self) :
		return len(self.arrivals)


def schedule_send(stream: ObjectStream, config: ChannelConfig) -> List[SendEvent] :
	"""
	Bind an object stream to carrier send events

	Timestamps are copied verbatim, except for an ACK-gated TCP model where
	each send waits one worst-case lossless delivery (delay + jitter) after
	the previous one. SCTP chunks get TSN 1, 2, 3, ... in seq order.

	Parameters:
		stream (ObjectStream): objects in send order
		config (ChannelConfig): carrier model

	Returns:
		list: SendEvent per object

	Raises:
		IdOutOfRange: an identifier exceeds the carrier's connections/streams
	"""
	config.validate()
	events = []
	previous = None
	for item in stream :
		if not 1 <= item.object_id <= config.identifiers :
			raise IdOutOfRange(
				f"object id {item.object_id} at seq {item.seq} outside "
				f"1..{config.identifiers} of the {config.name} model")
		t_send = item.t_ns
		if isinstance(config, TcpModel) and config.ack_gated and previous is not None :
			t_send = max(t_send, previous + config.delay_ns + config.jitter_ns)
		tsn = item.seq + 1 if isinstance(config, SctpModel) else None
		events.append(SendEvent(item.seq, item.object_id, t_send, tsn))
		previous = t_send
	return events


def _transmit(env, event, config, rng, gate, in_order, done, arrivals) :
	"""simpy process carrying one object across the channel"""
	if gate is not None :
		yield gate
	yield env.timeout(max(0, event.t_send_ns - env.now))

	attempts = 1
	while config.loss_p and rng.random() < config.loss_p :
		logger.debug("seq %d lost at %d ns, retransmitting", event.seq, env.now)
		yield env.timeout(config.rto_ns)
		attempts += 1

	jitter = int(rng.integers(0, config.jitter_ns, endpoint=True)) \
		if config.jitter_ns else 0
	yield env.timeout(config.delay_ns + jitter)

	if in_order is not None :
		yield in_order

	arrivals.append(Arrival(event.object_id, env.now, event.seq, event.tsn,
	                        attempts))
	done.succeed()


def simulate(events: Sequence[SendEvent], config: ChannelConfig,
             seed: int) -> ReceptionTrace :
	"""
	Run the carrier model over a list of send events

	Each attempt is lost with probability loss_p and retried after rto_ns;
	a delivered attempt takes delay_ns plus a uniform jitter draw. The TCP
	model keeps each connection FIFO (and, when ACK-gated, holds every send
	until the previous object is delivered); the SCTP model delivers chunks
	independently.

	Parameters:
		events: SendEvents in seq order
		config (ChannelConfig): carrier model
		seed (int): seed of the loss/jitter draws

	Returns:
		ReceptionTrace: arrivals sorted by (t_recv, seq)
	"""
	config.validate()
	rng = np.random.default_rng(seed)
	env = simpy.Environment()
	arrivals: List[Arrival] = []
	tcp = isinstance(config, TcpModel)

	last_on_connection = {}
	previous_done = None
	for event in events :
		done = env.event()
		gate = previous_done if tcp and config.ack_gated else None
		in_order = last_on_connection.get(event.object_id) if tcp else None
		env.process(_transmit(env, event, config, rng, gate, in_order, done,
		                      arrivals))
		last_on_connection[event.object_id] = done
		previous_done = done

	env.run()
	arrivals.sort(key=lambda a : (a.t_recv_ns, a.seq))
	retransmitted = sum(1 for a in arrivals if a.attempts > 1)
	logger.info("%s channel: %d objects delivered, %d retransmitted",
	            config.name, len(arrivals), retransmitted)
	return ReceptionTrace(tuple(arrivals))


def _running_max(times) :
	latest = None
	result = []
	for t in times :
		latest = t if latest is None else max(latest, t)
		result.append(latest)
	return result


def arrival_order_stream(trace: ReceptionTrace) -> ObjectStream :
	"""Objects in reception order (ties by seq), the TCP decode path"""
	ordered = sorted(trace.arrivals, key=lambda a : (a.t_recv_ns, a.seq))
	return ObjectStream.from_ids([a.object_id for a in ordered],
	                             [a.t_recv_ns for a in ordered])


def tsn_order_stream(trace: ReceptionTrace) -> ObjectStream :
	"""
	Objects reassembled by TSN, independent of reception times

	Each object is stamped with the time it becomes deliverable in TSN order.

	Raises:
		MissingTsn: an arrival carries no TSN
	"""
	for arrival in trace.arrivals :
		if arrival.tsn is None :
			raise MissingTsn(f"arrival with seq {arrival.seq} has no TSN")
	ordered = sorted(trace.arrivals, key=lambda a : a.tsn)
	return ObjectStream.from_ids([a.object_id for a in ordered],
	                             _running_max(a.t_recv_ns for a in ordered))


def seq_order_stream(trace: ReceptionTrace) -> ObjectStream :
	"""Objects in original send order (an omniscient reference ordering)"""
	ordered = sorted(trace.arrivals, key=lambda a : a.seq)
	return ObjectStream.from_ids([a.object_id for a in ordered],
	                             _running_max(a.t_recv_ns for a in ordered))
