"""
Handles the decode command
"""

import logging

from controller.encode_controller import key_from_args
from model.block_codec import decode_stream
from model.errors import ValidationError
from model.perfect_scheme import GroupTrace, ParityEnumeration, perfect_decode
from model.trace_io import read_pad, read_stream, save_offset

logger = logging.getLogger(__name__)

MODES = ('codec', 'perfect')


class DecodeController:
    """
    Recovers hidden bits from a received trace
    """

    def __init__(self, view, error_controller):
        self.view = view
        self.error_controller = error_controller

    def decode(self, args):
        """
        Run the decode command and print the bits on stdout

        Parameters:
            args: parsed command-line arguments (mode, order, key flags,
                pad, pad_offset, bits, input)

        Returns:
            tuple: (success, message)
        """
        if args.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}")
        key = key_from_args(args)
        stream = read_stream(args.input, args.order)

        if args.mode == 'codec':
            bits = decode_stream(stream, key)
            if args.bits is not None:
                bits = bits[:args.bits]
            if args.bits is not None and len(bits) < args.bits:
                self.error_controller.show_warning(
                    "decode", f"only {len(bits)} of {args.bits} bits present")
        else:
            if not args.pad:
                raise ValidationError("--pad is required in perfect mode")
            enum = ParityEnumeration.from_key(key)
            trace = GroupTrace.from_stream(stream, key.n)
            pad = read_pad(args.pad, args.pad_offset)
            bits = perfect_decode(trace, enum, pad, args.bits)
            if args.pad_offset is None:
                save_offset(args.pad, pad.offset)

        logger.info("decode %s (order %s): %d bits", args.mode, args.order,
                    len(bits))
        self.view.show_result(bits)
        return True, bits
