"""
Tests for the command-line tool
Runs main() end to end and checks outputs, files and exit codes
"""

import pytest
import json
import os
import sys

# Add the src directory to the path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from controller.error_controller import ErrorController
from main import main
from model.errors import (EmbeddingStall, InvalidKey, MalformedGroup,
                          ValidationError)
from model.objects import ObjectStream
from model.trace_io import read_records, read_stream, write_stream
from view.console_view import ConsoleView

WORKED_IDS = [1, 4, 3, 2, 4, 1, 2, 2, 3, 3, 4, 1, 1, 3]


class TestCommandLine :
	"""End-to-end command tests"""

	def setup_method(self) :
		self.key_flags = ['--n', '4', '--key', '1,3', '--x', '1']

	def write_cover(self, tmp_path, ids, name="cover.jsonl") :
		path = str(tmp_path / name)
		write_stream(ObjectStream.from_ids(ids), path)
		return path

	def test_keygen(self, tmp_path) :
		first = str(tmp_path / "a.pad")
		second = str(tmp_path / "b.pad")
		assert main(['keygen', '--bits', '16', '--seed', '7', '--out', first]) == 0
		assert main(['keygen', '--bits', '16', '--seed', '7', '--out', second]) == 0
		with open(first, 'rb') as f :
			data = f.read()
		assert len(data) == 2
		with open(second, 'rb') as f :
			assert f.read() == data
		with open(first + '.offset') as f :
			assert f.read().strip() == "0"

	def test_keygen_zero_bits(self, tmp_path) :
		assert main(['keygen', '--bits', '0', '--out',
		             str(tmp_path / "k.pad")]) == 2

	def test_keygen_refuses_overwrite(self, tmp_path) :
		path = str(tmp_path / "k.pad")
		assert main(['keygen', '--bits', '8', '--out', path]) == 0
		assert main(['keygen', '--bits', '8', '--out', path]) == 2
		assert main(['keygen', '--bits', '8', '--out', path, '--force']) == 0

	def test_demo(self, capsys) :
		assert main(['demo-fig1']) == 0
		out = capsys.readouterr().out
		assert "decoded: 1010" in out
		assert "re-encoding decodes to: 1010" in out
		assert "value  blocks" in out

	def test_full_control_roundtrip(self, tmp_path, capsys) :
		cover = self.write_cover(tmp_path, WORKED_IDS)
		stego = str(tmp_path / "stego.jsonl")
		report = str(tmp_path / "report.json")
		assert main(['encode', '--mode', 'full', *self.key_flags,
		             '--message-bits', '1010', '--cover', cover,
		             '--out', stego, '--report', report]) == 0
		capsys.readouterr()
		assert main(['decode', *self.key_flags, '--bits', '4', stego]) == 0
		assert capsys.readouterr().out.strip() == "1010"
		with open(report) as f :
			data = json.load(f)
		assert data['bits_embedded'] == 4
		assert data['parameters']['mode'] == 'full'

	def test_message_file(self, tmp_path, capsys) :
		message = tmp_path / "message.txt"
		message.write_text("0110\n")
		stego = str(tmp_path / "stego.jsonl")
		assert main(['encode', '--mode', 'current', *self.key_flags,
		             '--message', str(message), '--generate', 'iid',
		             '--count', '200', '--seed', '3', '--out', stego]) == 0
		capsys.readouterr()
		assert main(['decode', *self.key_flags, '--bits', '4', stego]) == 0
		assert capsys.readouterr().out.strip() == "0110"

	def test_perfect_roundtrip(self, tmp_path, capsys) :
		pad = str(tmp_path / "key.pad")
		stego = str(tmp_path / "stego.jsonl")
		message = "1100101001110001"
		assert main(['keygen', '--bits', '64', '--seed', '1', '--out', pad]) == 0
		assert main(['encode', '--mode', 'perfect', '--n', '4', '--key', '1',
		             '--message-bits', message, '--pad', pad, '--generate',
		             'group', '--count', '20', '--seed', '5',
		             '--out', stego]) == 0
		with open(pad + '.offset') as f :
			assert f.read().strip() == "16"
		capsys.readouterr()
		assert main(['decode', '--mode', 'perfect', '--n', '4', '--key', '1',
		             '--pad', pad, '--pad-offset', '0', '--bits', '16',
		             stego]) == 0
		assert capsys.readouterr().out.strip() == message

	def test_perfect_odd_n(self, tmp_path) :
		pad = str(tmp_path / "key.pad")
		main(['keygen', '--bits', '8', '--out', pad])
		assert main(['encode', '--mode', 'perfect', '--n', '3', '--key', '1',
		             '--message-bits', '1', '--pad', pad, '--generate', 'group',
		             '--count', '4', '--out', str(tmp_path / "s.jsonl")]) == 2

	def test_perfect_short_pad(self, tmp_path) :
		pad = str(tmp_path / "key.pad")
		main(['keygen', '--bits', '8', '--seed', '2', '--out', pad])
		assert main(['encode', '--mode', 'perfect', '--n', '4', '--key', '1',
		             '--message-bits', '1' * 16, '--pad', pad, '--generate',
		             'group', '--count', '16',
		             '--out', str(tmp_path / "s.jsonl")]) == 2
		with open(pad + '.offset') as f :
			assert f.read().strip() == "0"

	def test_buffer_stall(self, tmp_path) :
		cover = self.write_cover(tmp_path, [1, 1])
		assert main(['encode', '--mode', 'buffer', '--n', '1', '--key', '1',
		             '--message-bits', '0', '--buffer-size', '2',
		             '--cover', cover, '--out', str(tmp_path / "s.jsonl")]) == 3

	def test_tsn_order_without_tsn(self, tmp_path) :
		cover = self.write_cover(tmp_path, WORKED_IDS)
		assert main(['decode', *self.key_flags, '--order', 'tsn', cover]) == 4

	def test_missing_input(self, tmp_path) :
		assert main(['decode', *self.key_flags,
		             str(tmp_path / "absent.jsonl")]) == 5

	def test_simulate_invalid_loss(self, tmp_path) :
		config = tmp_path / "tcp.conf"
		config.write_text("loss_p = 1.0\n")
		cover = self.write_cover(tmp_path, WORKED_IDS)
		assert main(['simulate', '--channel', 'tcp', '--config', str(config),
		             '--out', str(tmp_path / "r.jsonl"), cover]) == 2

	def test_simulate_sctp_then_decode(self, tmp_path, capsys) :
		config = tmp_path / "sctp.conf"
		config.write_text("streams = 4\nloss_p = 0.2\njitter_ns = 20000000\n")
		cover = self.write_cover(tmp_path, WORKED_IDS)
		received = str(tmp_path / "r.jsonl")
		assert main(['simulate', '--channel', 'sctp', '--config', str(config),
		             '--seed', '9', '--out', received, cover]) == 0
		assert all(r.tsn is not None for r in read_records(received))
		capsys.readouterr()
		assert main(['decode', *self.key_flags, '--order', 'tsn', received]) == 0
		assert capsys.readouterr().out.strip() == "1010"

	def test_simulate_ack_gated(self, tmp_path) :
		config = tmp_path / "tcp.conf"
		config.write_text("connections = 4\nack_gated = true\n"
		                  "jitter_ns = 20000000\n")
		cover = self.write_cover(tmp_path, WORKED_IDS)
		received = str(tmp_path / "r.jsonl")
		assert main(['simulate', '--channel', 'tcp', '--config', str(config),
		             '--seed', '3', '--out', received, cover]) == 0
		assert read_stream(received, 'arrival').ids() == tuple(WORKED_IDS)

	def test_analyze_identical(self, tmp_path, capsys) :
		cover = self.write_cover(tmp_path, WORKED_IDS * 10)
		report = str(tmp_path / "analysis.json")
		assert main(['analyze', cover, cover, '--report', report]) == 0
		assert "verdict: pass" in capsys.readouterr().out
		with open(report) as f :
			data = json.load(f)
		assert data['verdict'] == 'pass'
		assert data['condition2']['kl_bits'] == 0.0
		assert data['condition3']['kl_bits'] == 0.0

	def test_analyze_suspension_heavy(self, tmp_path, capsys) :
		cover = self.write_cover(tmp_path, [1, 2] * 200)
		stego = str(tmp_path / "stego.jsonl")
		assert main(['encode', '--mode', 'current', '--n', '2', '--key', '1',
		             '--message-bits', '0' * 150, '--cover', cover,
		             '--out', stego]) == 0
		report = str(tmp_path / "analysis.json")
		assert main(['analyze', cover, stego, '--report', report]) == 6
		with open(report) as f :
			data = json.load(f)
		assert data['condition3']['pass'] is False
		assert data['verdict'] == 'fail'

	def test_analyze_with_independence(self, tmp_path) :
		pad = str(tmp_path / "key.pad")
		stego = str(tmp_path / "stego.jsonl")
		main(['keygen', '--bits', '4000', '--seed', '4', '--out', pad])
		main(['encode', '--mode', 'perfect', '--n', '4', '--key', '1',
		      '--message-bits', '0' * 4000, '--pad', pad, '--generate', 'group',
		      '--count', '4000', '--seed', '8', '--out', stego])
		report = str(tmp_path / "analysis.json")
		main(['analyze', stego, stego, '--group-size', '4', '--n', '4',
		      '--key', '1', '--independence-trials', '50',
		      '--independence-bits', '4', '--report', report])
		with open(report) as f :
			data = json.load(f)
		assert data['condition1']['trials'] == 50
		assert 'max_pairwise_kl_bits' in data['condition1']


	def test_analyze_six_object_groups(self, tmp_path, capsys) :
		pad = str(tmp_path / "key.pad")
		stego = str(tmp_path / "stego.jsonl")
		assert main(['keygen', '--bits', '104', '--seed', '6', '--out', pad]) == 0
		assert main(['encode', '--mode', 'perfect', '--n', '6', '--key', '2',
		             '--message-bits', '01' * 50, '--pad', pad, '--generate',
		             'group', '--count', '300', '--seed', '11',
		             '--out', stego]) == 0
		report = str(tmp_path / "analysis.json")
		assert main(['analyze', stego, stego, '--group-size', '6',
		             '--report', report]) == 0
		assert "verdict: pass" in capsys.readouterr().out
		with open(report) as f :
			data = json.load(f)
		assert data['condition2']['dof'] > 120
		assert data['condition2']['critical'] > data['condition2']['dof']

	def test_independence_uses_value_bits(self, tmp_path) :
		cover = self.write_cover(tmp_path, WORKED_IDS)
		assert main(['analyze', cover, cover, '--independence-trials', '5',
		             '--n', '4', '--key', '1', '--x', '2']) == 2


class TestWarnings :
	"""Non-fatal conditions are reported on stderr and the command succeeds"""

	def test_keygen_rounds_to_bytes(self, tmp_path, capsys) :
		path = str(tmp_path / "k.pad")
		assert main(['keygen', '--bits', '12', '--out', path]) == 0
		captured = capsys.readouterr()
		assert "warning" in captured.err
		assert "rounded up to 16" in captured.err
		with open(path, 'rb') as f :
			assert len(f.read()) == 2

	def test_keygen_whole_bytes_silent(self, tmp_path, capsys) :
		assert main(['keygen', '--bits', '16',
		             '--out', str(tmp_path / "k.pad")]) == 0
		assert "warning" not in capsys.readouterr().err

	def test_decode_short_message(self, tmp_path, capsys) :
		cover = str(tmp_path / "cover.jsonl")
		write_stream(ObjectStream.from_ids(WORKED_IDS), cover)
		assert main(['decode', '--n', '4', '--key', '1,3', '--bits', '10',
		             cover]) == 0
		captured = capsys.readouterr()
		assert captured.out.strip() == "1010"
		assert "only 4 of 10 bits" in captured.err

	def test_encode_suspensions(self, tmp_path, capsys) :
		cover = str(tmp_path / "cover.jsonl")
		write_stream(ObjectStream.from_ids([1, 2] * 200), cover)
		assert main(['encode', '--mode', 'current', '--n', '2', '--key', '1',
		             '--message-bits', '0' * 150, '--cover', cover,
		             '--out', str(tmp_path / "s.jsonl")]) == 0
		assert "suspensions" in capsys.readouterr().err

	def test_tcp_jitter_without_ack_gating(self, tmp_path, capsys) :
		config = tmp_path / "tcp.conf"
		config.write_text("connections = 4\njitter_ns = 20000000\n")
		cover = str(tmp_path / "cover.jsonl")
		write_stream(ObjectStream.from_ids(WORKED_IDS), cover)
		assert main(['simulate', '--channel', 'tcp', '--config', str(config),
		             '--out', str(tmp_path / "r.jsonl"), cover]) == 0
		assert "ack_gated" in capsys.readouterr().err


class TestErrorController :
	"""Exception to exit-code mapping"""

	@pytest.mark.parametrize("exc, code", [
		(InvalidKey("bad"), 2),
		(EmbeddingStall("stuck"), 3),
		(MalformedGroup("short"), 4),
		(FileNotFoundError("gone"), 5),
		])
	def test_exit_code_for(self, exc, code) :
		assert ErrorController.exit_code_for(exc) == code

	def test_unknown_error_reraised(self) :
		class Silent :
			def show_error(self, error_type, message) :
				pass

		with pytest.raises(KeyError) :
			ErrorController(Silent()).handle(KeyError("x"))

	def test_handle_reports_type(self, capsys) :
		controller = ErrorController(ConsoleView())
		assert controller.handle(ValidationError("x")) == 2
		assert "invalid input" in capsys.readouterr().err


if __name__ == "__main__" :
	pytest.main([__file__, "-v"])
