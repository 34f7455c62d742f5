"""
Handles the encode command
Builds the key, message and cover from arguments and runs one strategy
"""

import logging

from model.encoders import (GroupUniform, IidUniform, encode_buffered,
                            encode_current_object, encode_full_control)
from model.errors import EmbeddingError, ValidationError
from model.objects import StegKey
from model.perfect_scheme import GroupTrace, ParityEnumeration, perfect_encode
from model.trace_io import (read_bits_file, read_pad, read_stream, save_offset,
                            write_json, write_stream)

logger = logging.getLogger(__name__)

MODES = ('current', 'buffer', 'full', 'perfect')


def key_from_args(args):
    """StegKey from the shared --n/--key/--x/--start flags"""
    if args.n is None or args.key is None:
        raise ValidationError("--n and --key are required")
    return StegKey.parse(args.n, args.key, args.x, args.start)


def message_from_args(args):
    """Message bits from --message FILE or --message-bits"""
    if getattr(args, 'message_bits', None) is not None:
        return args.message_bits.strip()
    if getattr(args, 'message', None):
        return read_bits_file(args.message)
    raise ValidationError("--message or --message-bits is required")


class EncodeController:
    """
    Runs one of the embedding strategies and writes its artifacts
    """

    def __init__(self, view, error_controller):
        self.view = view
        self.error_controller = error_controller

    def _cover(self, args, key):
        """Recorded cover trace or a seeded generator"""
        if args.cover:
            return read_stream(args.cover, 'seq')
        if args.generate is None:
            raise ValidationError("give --cover FILE or --generate iid|group")
        if args.count is None or args.count < 1:
            raise ValidationError("--count must be >= 1 with --generate")
        if args.generate == 'iid':
            return IidUniform(key.n, args.count, args.seed, args.interval_ns)
        return GroupUniform(key.n, args.count, args.seed, args.interval_ns)

    def _effective(self, args, key):
        params = {
            'mode': args.mode,
            'key': key.describe(),
            'cover': args.cover,
            'generate': args.generate,
            'count': args.count,
            'seed': args.seed,
            'interval_ns': args.interval_ns,
        }
        if args.mode == 'buffer':
            params['buffer'] = args.buffer_size
        if args.mode == 'full':
            params['node_budget'] = args.node_budget
        return params

    def encode(self, args):
        """
        Run the encode command

        Parameters:
            args: parsed command-line arguments

        Returns:
            tuple: (success, message)
        """
        if args.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}")
        key = key_from_args(args)
        message = message_from_args(args)

        if args.mode == 'perfect':
            return self._encode_perfect(args, key, message)

        source = self._cover(args, key)
        try:
            if args.mode == 'current':
                report = encode_current_object(source, key, message)
            elif args.mode == 'buffer':
                report = encode_buffered(source, key, message,
                                         args.buffer_size)
            else:
                report = encode_full_control(source, key, message,
                                             args.node_budget)
        except EmbeddingError as e:
            if args.report and e.report is not None:
                data = e.report.to_dict()
                data['parameters'].update(self._effective(args, key))
                write_json(data, args.report)
            raise

        if report.suspensions:
            self.error_controller.show_warning(
                "timing", f"{report.suspensions} suspensions shifted object "
                "times; the timing distribution may differ from the cover")
        write_stream(report.stego, args.out)
        if args.report:
            data = report.to_dict()
            data['parameters'].update(self._effective(args, key))
            write_json(data, args.report)
        logger.info("encode %s: %d bits in %d objects (%d suspensions)",
                    args.mode, report.bits_embedded, len(report.stego),
                    report.suspensions)
        return True, f"embedded {report.bits_embedded} bits into {args.out}"

    def _encode_perfect(self, args, key, message):
        enum = ParityEnumeration.from_key(key)
        if not args.pad:
            raise ValidationError("--pad is required in perfect mode")
        source = self._cover(args, key)
        cover = source if isinstance(source, GroupUniform) \
            else GroupTrace.from_stream(source, key.n)

        pad = read_pad(args.pad)
        start = pad.offset
        stego = perfect_encode(cover, enum, message, pad)
        write_stream(stego.to_stream(), args.out)
        save_offset(args.pad, pad.offset)

        if args.report:
            params = self._effective(args, key)
            params.update({'pad': args.pad, 'pad_offset_start': start,
                           'pad_offset_end': pad.offset})
            write_json({
                'strategy': 'perfect',
                'bits_embedded': len(message),
                'message_bits': len(message),
                'blocks': len(message),
                'groups': len(stego.groups),
                'suspensions': 0,
                'stalled': False,
                'objects': len(stego.groups) * key.n,
                'embedding_rate': len(message) / (len(stego.groups) * key.n),
                'parameters': params,
            }, args.report)
        logger.info("encode perfect: %d bits over %d groups, pad offset %d -> %d",
                    len(message), len(stego.groups), start, pad.offset)
        return True, f"embedded {len(message)} bits into {args.out}"
