"""
Unit tests for the carrier models
Tests send scheduling, the simpy simulation and reception orderings
"""

import pytest
import os
import sys

# Add the src directory to the path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from model.block_codec import decode_stream
from model.channels import (Arrival, ReceptionTrace, SctpModel, SendEvent,
                            TcpModel, arrival_order_stream, schedule_send,
                            simulate, tsn_order_stream)
from model.encoders import IidUniform, encode_full_control
from model.errors import IdOutOfRange, InvalidChannelConfig, MissingTsn
from model.objects import ObjectStream, StegKey

MS = 1_000_000
WORKED_IDS = [1, 4, 3, 2, 4, 1, 2, 2, 3, 3, 4, 1, 1, 3]
WORKED_KEY = StegKey(4, frozenset({1, 3}))


def roundtrip(stream, config, seed) :
	return simulate(schedule_send(stream, config), config, seed)


class TestChannelConfig :
	"""Test cases for configuration invariants"""

	@pytest.mark.parametrize("kwargs", [
		{'loss_p' : 1.0}, {'loss_p' : -0.1}, {'delay_ns' : -1},
		{'rto_ns' : 0}, {'jitter_ns' : -5}, {'connections' : 0}])
	def test_invalid(self, kwargs) :
		with pytest.raises(InvalidChannelConfig) :
			TcpModel(**kwargs).validate()

	def test_defaults(self) :
		config = SctpModel()
		config.validate()
		assert config.delay_ns == 10 * MS
		assert config.rto_ns == 200 * MS
		assert config.identifiers == 4


class TestScheduleSend :
	"""Test cases for binding streams to send events"""

	def test_sctp_tsn(self) :
		events = schedule_send(ObjectStream.from_ids([2, 1, 2]), SctpModel())
		assert [e.tsn for e in events] == [1, 2, 3]

	def test_ack_gated(self) :
		stream = ObjectStream.from_ids([1, 2, 3], [0, 0, 0])
		events = schedule_send(stream, TcpModel(ack_gated=True))
		assert [e.t_send_ns for e in events] == [0, 10 * MS, 20 * MS]

	def test_pass_through(self) :
		stream = ObjectStream.from_ids([1, 2, 3], [0, 3, 9])
		events = schedule_send(stream, TcpModel())
		assert [e.t_send_ns for e in events] == [0, 3, 9]
		assert all(e.tsn is None for e in events)

	def test_id_out_of_range(self) :
		with pytest.raises(IdOutOfRange) :
			schedule_send(ObjectStream.from_ids([1, 5]), TcpModel(connections=4))


class TestSimulate :
	"""Test cases for the discrete-event channel"""

	def test_degenerate_channel(self) :
		stream = ObjectStream.from_ids(WORKED_IDS)
		trace = roundtrip(stream, TcpModel(), seed=1)
		assert [a.seq for a in trace.arrivals] == list(range(len(WORKED_IDS)))
		assert [a.t_recv_ns for a in trace.arrivals] == \
			[t + 10 * MS for t in stream.times()]
		assert all(a.attempts == 1 for a in trace.arrivals)

	def test_single_loss(self) :
		"""A dropped attempt is delivered one RTO later with its TSN"""
		config = SctpModel(loss_p=0.5)
		event = [SendEvent(0, 1, 5 * MS, 1)]
		retried = 0
		for seed in range(200) :
			arrival = simulate(event, config, seed).arrivals[0]
			if arrival.attempts == 2 :
				retried += 1
				assert arrival.t_recv_ns == 5 * MS + config.rto_ns + config.delay_ns
				assert arrival.tsn == 1
		assert retried > 0

	def test_conservation_and_determinism(self) :
		stream = IidUniform(4, 200, seed=3).stream()
		config = TcpModel(jitter_ns=5 * MS, loss_p=0.3)
		first = roundtrip(stream, config, seed=42)
		second = roundtrip(stream, config, seed=42)
		assert first == second
		assert sorted(a.seq for a in first.arrivals) == list(range(200))

	def test_per_connection_fifo(self) :
		stream = IidUniform(4, 40, seed=8).stream()
		config = TcpModel(jitter_ns=20 * MS, loss_p=0.2)
		for seed in range(1000) :
			last = {}
			for arrival in roundtrip(stream, config, seed).arrivals :
				assert arrival.seq > last.get(arrival.object_id, -1)
				last[arrival.object_id] = arrival.seq


class TestReceptionOrder :
	"""Test cases for the decode-side orderings"""

	def test_arrival_ties_by_seq(self) :
		trace = ReceptionTrace((Arrival(3, 10, 1), Arrival(2, 10, 0)))
		assert arrival_order_stream(trace).ids() == (2, 3)

	def test_tsn_sort(self) :
		trace = ReceptionTrace((Arrival(3, 5, 2, 3), Arrival(1, 7, 0, 1),
		                        Arrival(2, 9, 1, 2)))
		stream = tsn_order_stream(trace)
		assert stream.ids() == (1, 2, 3)
		assert stream.times() == (7, 9, 9)

	def test_missing_tsn(self) :
		with pytest.raises(MissingTsn) :
			tsn_order_stream(ReceptionTrace((Arrival(1, 0, 0),)))

	def test_sctp_recovers_send_order(self) :
		"""Lossy, jittery SCTP always decodes exactly through TSN order"""
		stream = ObjectStream.from_ids(WORKED_IDS)
		config = SctpModel(jitter_ns=30 * MS, loss_p=0.2)
		for seed in range(100) :
			received = tsn_order_stream(roundtrip(stream, config, seed))
			assert received.ids() == stream.ids()
			assert decode_stream(received, WORKED_KEY) == "1010"

	def test_tcp_reordering_breaks_decoding(self) :
		"""Jitter far above the send gap reorders connections"""
		cover = IidUniform(4, 120, seed=21).stream()
		stego = encode_full_control(cover, WORKED_KEY, "10110010").stego
		config = TcpModel(jitter_ns=2 * MS)
		wrong = 0
		for seed in range(100) :
			received = arrival_order_stream(roundtrip(stego, config, seed))
			if not decode_stream(received, WORKED_KEY).startswith("10110010") :
				wrong += 1
		assert wrong >= 1

	def test_ack_gated_keeps_order(self) :
		stream = ObjectStream.from_ids(WORKED_IDS)
		config = TcpModel(ack_gated=True, jitter_ns=30 * MS, loss_p=0.2)
		for seed in range(100) :
			received = arrival_order_stream(roundtrip(stream, config, seed))
			assert received.ids() == stream.ids()
			assert decode_stream(received, WORKED_KEY) == "1010"


if __name__ == "__main__" :
	pytest.main([__file__, "-v"])
