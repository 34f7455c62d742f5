"""
Unit tests for persistence and configuration
Tests trace files, pad files and channel config parsing
"""

import pytest
import os
import sys

# Add the src directory to the path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from model.channels import (SctpModel, TcpModel, schedule_send, simulate)
from model.config import load_channel_config, parse_channel_config
from model.errors import (InvalidChannelConfig, TraceFormatError,
                          ValidationError)
from model.objects import ObjectStream
from model.pad import Pad
from model.trace_io import (TraceRecord, bits_to_bytes, bytes_to_bits,
                            read_offset, read_pad, read_records, read_stream,
                            save_offset, write_pad, write_reception,
                            write_stream)


class TestTraceFiles :
	"""Test cases for JSONL traces"""

	def test_stream_roundtrip(self, tmp_path) :
		path = str(tmp_path / "cover.jsonl")
		stream = ObjectStream.from_ids([3, 1, 2, 2], [0, 4, 4, 9])
		write_stream(stream, path)
		assert read_stream(path) == stream
		assert read_records(path)[0] == TraceRecord(0, 3, 0, None)

	def test_reception_keeps_tsn(self, tmp_path) :
		path = str(tmp_path / "recv.jsonl")
		stream = ObjectStream.from_ids([1, 2, 1, 2])
		config = SctpModel(streams=2, jitter_ns=5_000_000)
		trace = simulate(schedule_send(stream, config), config, 4)
		write_reception(trace, path)
		assert read_stream(path, 'tsn').ids() == stream.ids()
		arrival = read_stream(path, 'arrival')
		assert list(arrival.times()) == sorted(a.t_recv_ns for a in trace.arrivals)

	def test_missing_field(self, tmp_path) :
		path = tmp_path / "bad.jsonl"
		path.write_text('{"t_ns": 0, "seq": 0, "tsn": null}\n')
		with pytest.raises(TraceFormatError, match="missing field") :
			read_records(str(path))

	def test_time_goes_backwards(self, tmp_path) :
		path = tmp_path / "bad.jsonl"
		path.write_text('{"t_ns": 5, "id": 1, "seq": 0, "tsn": null}\n'
		                '{"t_ns": 2, "id": 1, "seq": 1, "tsn": null}\n')
		with pytest.raises(TraceFormatError) :
			read_records(str(path))

	def test_seq_gap(self, tmp_path) :
		path = tmp_path / "bad.jsonl"
		path.write_text('{"t_ns": 0, "id": 1, "seq": 0, "tsn": null}\n'
		                '{"t_ns": 1, "id": 1, "seq": 2, "tsn": null}\n')
		with pytest.raises(TraceFormatError) :
			read_records(str(path))

	def test_not_json(self, tmp_path) :
		path = tmp_path / "bad.jsonl"
		path.write_text("t_ns=0\n")
		with pytest.raises(TraceFormatError) :
			read_records(str(path))

	def test_unknown_order(self, tmp_path) :
		path = str(tmp_path / "cover.jsonl")
		write_stream(ObjectStream.from_ids([1]), path)
		with pytest.raises(ValidationError) :
			read_stream(path, 'random')


class TestPadFiles :
	"""Test cases for pad files and the offset sidecar"""

	def test_bit_packing(self) :
		assert bits_to_bytes("10000001") == b"\x81"
		assert bits_to_bytes("1") == b"\x80"
		assert bytes_to_bits(b"\x81\x00") == "1000000100000000"

	def test_roundtrip_with_sidecar(self, tmp_path) :
		path = str(tmp_path / "key.pad")
		write_pad(Pad("1011000111110000"), path)
		assert read_offset(path) == 0
		save_offset(path, 5)
		pad = read_pad(path)
		assert pad.bits == "1011000111110000"
		assert pad.offset == 5
		assert read_pad(path, offset=0).offset == 0

	def test_refuses_overwrite(self, tmp_path) :
		path = str(tmp_path / "key.pad")
		write_pad(Pad("00000000"), path)
		with pytest.raises(ValidationError) :
			write_pad(Pad("11111111"), path)
		write_pad(Pad("11111111"), path, force=True)
		assert read_pad(path).bits == "11111111"

	def test_offset_only_increases(self, tmp_path) :
		path = str(tmp_path / "key.pad")
		write_pad(Pad("00000000"), path)
		save_offset(path, 4)
		with pytest.raises(ValidationError) :
			save_offset(path, 2)


class TestChannelConfigFiles :
	"""Test cases for key=value channel configuration"""

	def test_tcp(self) :
		config = parse_channel_config(
			"# parallel connections\nconnections = 6\nack_gated = true\n"
			"delay_ns=5_000_000\njitter_ns = 1000\nloss_p = 0.1\n", 'tcp')
		assert config == TcpModel(delay_ns=5_000_000, jitter_ns=1000,
		                          loss_p=0.1, connections=6, ack_gated=True)

	def test_defaults(self) :
		assert parse_channel_config("", 'sctp') == SctpModel()

	def test_unknown_key(self) :
		with pytest.raises(InvalidChannelConfig, match="unknown key") :
			parse_channel_config("streams = 4\n", 'tcp')

	def test_bad_value(self) :
		with pytest.raises(InvalidChannelConfig) :
			parse_channel_config("loss_p = lots\n", 'sctp')

	def test_invariant(self) :
		with pytest.raises(InvalidChannelConfig) :
			parse_channel_config("loss_p = 1.0\n", 'sctp')

	def test_load_file(self, tmp_path) :
		path = tmp_path / "sctp.conf"
		path.write_text("streams = 8\nrto_ns = 50000000\n")
		config = load_channel_config(str(path), 'sctp')
		assert config.streams == 8
		assert config.rto_ns == 50_000_000


if __name__ == "__main__" :
	pytest.main([__file__, "-v"])
