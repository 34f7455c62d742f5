"""
Persistence of traces, pads and reports
JSONL trace files, raw pad files with an offset sidecar, JSON reports
"""

import json
import logging
import os
from dataclasses import dataclass
from typing import Iterable, List, Optional

from model.channels import (Arrival, ReceptionTrace, arrival_order_stream,
                            seq_order_stream, tsn_order_stream)
from model.errors import TraceFormatError, ValidationError
from model.objects import ObjectStream
from model.pad import Pad

logger = logging.getLogger(__name__)

ORDERS = ('arrival', 'tsn', 'seq')
OFFSET_SUFFIX = '.offset'


@dataclass(frozen=True)
class TraceRecord :
	"""One line of a trace file"""
	t_ns: int
	id: int
	seq: int
	tsn: Optional[int] = None

	def to_json(self) -> str :
		return json.dumps({'t_ns' : self.t_ns, 'id' : self.id,
		                   'seq' : self.seq, 'tsn' : self.tsn})


def _ensure_directory_exists(filepath) :
	directory = os.path.dirname(filepath)
	if directory and not os.path.exists(directory) :
		os.makedirs(directory)


def _check_overwrite(filepath, force) :
	if not force and os.path.exists(filepath) :
		raise ValidationError(f"{filepath} exists; use --force to overwrite")


def write_records(records: Iterable[TraceRecord], filepath: str,
                  force: bool = True) -> int :
	"""
	Write trace records as JSON lines

	Returns:
		int: number of records written
	"""
	_check_overwrite(filepath, force)
	_ensure_directory_exists(filepath)
	count = 0
	with open(filepath, 'w', encoding='utf-8') as f :
		for record in records :
			f.write(record.to_json() + '\n')
			count += 1
	logger.debug("wrote %d records to %s", count, filepath)
	return count


def write_stream(stream: ObjectStream, filepath: str, force: bool = True) -> int :
	"""Write a sent object stream (tsn null)"""
	return write_records((TraceRecord(item.t_ns, item.object_id, item.seq)
	                      for item in stream), filepath, force)


def write_reception(trace: ReceptionTrace, filepath: str,
                    force: bool = True) -> int :
	"""Write a reception trace in arrival order, t_ns being receive times"""
	ordered = sorted(trace.arrivals, key=lambda a : (a.t_recv_ns, a.seq))
	return write_records((TraceRecord(a.t_recv_ns, a.object_id, a.seq, a.tsn)
	                      for a in ordered), filepath, force)


def _parse_line(line: str, number: int, filepath: str) -> TraceRecord :
	try :
		data = json.loads(line)
	except json.JSONDecodeError as e :
		raise TraceFormatError(f"{filepath}:{number}: not JSON ({e.msg})") from e
	if not isinstance(data, dict) :
		raise TraceFormatError(f"{filepath}:{number}: expected a JSON object")
	try :
		tsn = data.get('tsn')
		record = TraceRecord(int(data['t_ns']), int(data['id']), int(data['seq']),
		                     None if tsn is None else int(tsn))
	except KeyError as e :
		raise TraceFormatError(f"{filepath}:{number}: missing field {e}") from None
	except (TypeError, ValueError) as e :
		raise TraceFormatError(f"{filepath}:{number}: bad field value") from e
	if record.id < 1 :
		raise TraceFormatError(f"{filepath}:{number}: id {record.id} is below 1")
	return record


def read_records(filepath: str) -> List[TraceRecord] :
	"""
	Parse and validate a trace file

	Records must have ids >= 1 and non-decreasing t_ns in file order, and
	their seq values must be exactly 0..N-1 (in order for sent traces, in any
	order for reception traces).

	Raises:
		TraceFormatError: on any violation
		OSError: file cannot be read
	"""
	records = []
	with open(filepath, 'r', encoding='utf-8') as f :
		for number, line in enumerate(f, start=1) :
			if line.strip() :
				records.append(_parse_line(line, number, filepath))

	previous = None
	for record in records :
		if previous is not None and record.t_ns < previous :
			raise TraceFormatError(
				f"{filepath}: t_ns decreases at seq {record.seq}")
		previous = record.t_ns
	if sorted(r.seq for r in records) != list(range(len(records))) :
		raise TraceFormatError(f"{filepath}: seq values are not 0..{len(records) - 1}")
	return records


def read_trace(filepath: str) -> ReceptionTrace :
	"""Load a trace file as a reception trace"""
	return ReceptionTrace(tuple(Arrival(r.id, r.t_ns, r.seq, r.tsn)
	                            for r in read_records(filepath)))


def read_stream(filepath: str, order: str = 'seq') -> ObjectStream :
	"""
	Load a trace file as an object stream

	Parameters:
		filepath (str): JSONL trace
		order (str): 'arrival' (file/receive order), 'tsn' or 'seq'

	Returns:
		ObjectStream: objects in the requested decode order
	"""
	if order not in ORDERS :
		raise ValidationError(f"order must be one of {ORDERS}, got '{order}'")
	trace = read_trace(filepath)
	if order == 'arrival' :
		return arrival_order_stream(trace)
	if order == 'tsn' :
		return tsn_order_stream(trace)
	return seq_order_stream(trace)


# ---------------------------------------------------------------------------
# Pad files
# ---------------------------------------------------------------------------

def bits_to_bytes(bits: str) -> bytes :
	"""Pack a bitstring MSB-first, zero-filling the last byte"""
	bits = bits + '0' * (-len(bits) % 8)
	return bytes(int(bits[i :i + 8], 2) for i in range(0, len(bits), 8))


def bytes_to_bits(data: bytes) -> str :
	return ''.join(format(byte, '08b') for byte in data)


def offset_path(pad_path: str) -> str :
	return pad_path + OFFSET_SUFFIX


def write_pad(pad: Pad, filepath: str, force: bool = False) :
	"""
	Write pad bytes and a sidecar holding the pad offset

	Raises:
		ValidationError: the file exists and force is False
	"""
	_check_overwrite(filepath, force)
	_ensure_directory_exists(filepath)
	with open(filepath, 'wb') as f :
		f.write(bits_to_bytes(pad.bits))
	with open(offset_path(filepath), 'w', encoding='utf-8') as f :
		f.write(f"{pad.offset}\n")
	logger.info("wrote %d-bit pad to %s", pad.length, filepath)


def read_offset(filepath: str) -> int :
	"""Consumed-bit offset from the sidecar; 0 when there is none"""
	sidecar = offset_path(filepath)
	if not os.path.exists(sidecar) :
		return 0
	with open(sidecar, 'r', encoding='utf-8') as f :
		text = f.read().strip()
	try :
		return int(text)
	except ValueError :
		raise TraceFormatError(f"{sidecar}: '{text}' is not an integer") from None


def read_pad(filepath: str, offset: Optional[int] = None) -> Pad :
	"""
	Load a pad file

	Parameters:
		filepath (str): raw pad bytes
		offset (int): starting offset; the sidecar value if None
	"""
	with open(filepath, 'rb') as f :
		bits = bytes_to_bits(f.read())
	start = read_offset(filepath) if offset is None else offset
	if not 0 <= start <= len(bits) :
		raise TraceFormatError(
			f"pad offset {start} outside 0..{len(bits)} for {filepath}")
	return Pad(bits, start)


def save_offset(filepath: str, offset: int) :
	"""
	Advance the sidecar offset

	Raises:
		ValidationError: the new offset is below the stored one
	"""
	current = read_offset(filepath)
	if offset < current :
		raise ValidationError(
			f"pad offset may only increase ({current} -> {offset})")
	with open(offset_path(filepath), 'w', encoding='utf-8') as f :
		f.write(f"{offset}\n")
	logger.debug("pad %s offset now %d", filepath, offset)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def write_json(data: dict, filepath: str) :
	"""Write a report as indented JSON"""
	_ensure_directory_exists(filepath)
	with open(filepath, 'w', encoding='utf-8') as f :
		json.dump(data, f, indent=2, sort_keys=False)
		f.write('\n')


def read_bits_file(filepath: str) -> str :
	"""Read a message file holding '0'/'1' characters (whitespace ignored)"""
	with open(filepath, 'r', encoding='utf-8') as f :
		return ''.join(f.read().split())
