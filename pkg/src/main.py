"""
Main entry point for the StegBlocks command-line tool
"""

import argparse
import logging
import os
import sys

# Add src to path so the packages import when run as a script
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from controller.main_controller import MainController
from model.objects import DEFAULT_INTERVAL_NS
from model.encoders import DEFAULT_NODE_BUDGET
from model.steganalysis import DEFAULT_BIN_NS, DEFAULT_THRESHOLD_BITS


def _add_key_flags(parser, required=True) :
	parser.add_argument('--n', type=int, required=required,
	                    help="alphabet size (connections or streams)")
	parser.add_argument('--key', required=required,
	                    help="comma-separated key identifiers, e.g. 1,3")
	parser.add_argument('--x', type=int, default=1,
	                    help="value bits per block (default 1)")
	parser.add_argument('--start', default='chained',
	                    help="block start policy: chained or stride:M")


def build_parser() :
	"""
	Build the argument parser

	Returns:
		argparse.ArgumentParser: parser with one subcommand per operation
	"""
	parser = argparse.ArgumentParser(
		prog='stegblocks',
		description="Block-based network steganography over object streams")
	parser.add_argument('-v', '--verbose', action='count', default=0,
	                    help="-v for info, -vv for debug diagnostics on stderr")
	commands = parser.add_subparsers(dest='command', required=True)

	keygen = commands.add_parser('keygen', help="write a one-time pad")
	keygen.add_argument('--bits', type=int, required=True)
	keygen.add_argument('--out', required=True)
	keygen.add_argument('--seed', type=int)
	keygen.add_argument('--force', action='store_true')

	encode = commands.add_parser('encode', help="embed a message")
	encode.add_argument('--mode', required=True,
	                    choices=['current', 'buffer', 'full', 'perfect'])
	_add_key_flags(encode)
	message = encode.add_mutually_exclusive_group(required=True)
	message.add_argument('--message', help="file holding the message bits")
	message.add_argument('--message-bits', help="message bits inline")
	encode.add_argument('--pad', help="pad file (perfect mode)")
	encode.add_argument('--cover', help="cover trace file")
	encode.add_argument('--generate', choices=['iid', 'group'],
	                    help="generate a cover instead of reading one")
	encode.add_argument('--count', type=int,
	                    help="generated objects (iid) or groups (group)")
	encode.add_argument('--seed', type=int, default=0)
	encode.add_argument('--interval-ns', type=int, default=DEFAULT_INTERVAL_NS)
	encode.add_argument('--buffer-size', type=int, default=8)
	encode.add_argument('--node-budget', type=int, default=DEFAULT_NODE_BUDGET)
	encode.add_argument('--out', required=True, help="stego trace file")
	encode.add_argument('--report', help="JSON encode report")

	decode = commands.add_parser('decode', help="recover hidden bits")
	decode.add_argument('--mode', default='codec', choices=['codec', 'perfect'])
	_add_key_flags(decode)
	decode.add_argument('--order', default='seq',
	                    choices=['arrival', 'tsn', 'seq'])
	decode.add_argument('--pad', help="pad file (perfect mode)")
	decode.add_argument('--pad-offset', type=int,
	                    help="pad offset to start from instead of the sidecar")
	decode.add_argument('--bits', type=int, help="number of bits to output")
	decode.add_argument('input', help="trace file")

	simulate = commands.add_parser('simulate', help="run a channel model")
	simulate.add_argument('--channel', required=True, choices=['tcp', 'sctp'])
	simulate.add_argument('--config', help="key=value channel config")
	simulate.add_argument('--seed', type=int, default=0)
	simulate.add_argument('--out', required=True)
	simulate.add_argument('input', help="sent trace file")

	analyze = commands.add_parser('analyze', help="undetectability report")
	analyze.add_argument('cover')
	analyze.add_argument('stego')
	analyze.add_argument('--order', default='seq',
	                     choices=['arrival', 'tsn', 'seq'])
	analyze.add_argument('--group-size', type=int,
	                     help="n for group carriers; per-object units otherwise")
	analyze.add_argument('--bin-ns', type=int, default=DEFAULT_BIN_NS)
	analyze.add_argument('--kl-threshold', type=float,
	                     default=DEFAULT_THRESHOLD_BITS)
	analyze.add_argument('--timing-threshold', type=float,
	                     default=DEFAULT_THRESHOLD_BITS)
	analyze.add_argument('--alpha', type=float, default=0.001,
	                     choices=[0.05, 0.01, 0.001])
	analyze.add_argument('--epsilon', type=float, default=1e-9)
	analyze.add_argument('--independence-trials', type=int, default=0)
	analyze.add_argument('--independence-bits', type=int, default=8)
	analyze.add_argument('--master-seed', type=int, default=0)
	_add_key_flags(analyze, required=False)
	analyze.add_argument('--report', help="JSON report path")

	commands.add_parser('demo-fig1', help="worked four-connection example")
	return parser


def configure_logging(verbosity) :
	level = logging.WARNING
	if verbosity == 1 :
		level = logging.INFO
	elif verbosity >= 2 :
		level = logging.DEBUG
	logging.basicConfig(stream=sys.stderr, level=level,
	                    format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) :
	"""
	Command-line entry point

	Parameters:
		argv (list): arguments without the program name; sys.argv if None

	Returns:
		int: exit code
	"""
	args = build_parser().parse_args(argv)
	configure_logging(args.verbose)
	return MainController().dispatch(args)


if __name__ == "__main__" :
	sys.exit(main())
