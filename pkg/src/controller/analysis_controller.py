"""
Handles the analyze command
Undetectability report of a steganogram against its cover
"""

import logging

from model.errors import ValidationError
from model.objects import StegKey
from model.perfect_scheme import ParityEnumeration
from model.steganalysis import (AnalysisOptions, DivergenceOptions,
                                message_independence_check,
                                undetectability_report)
from model.trace_io import read_stream, write_json

logger = logging.getLogger(__name__)


class AnalysisController:
    """
    Runs the steganalysis suite over two trace files
    """

    def __init__(self, view, error_controller):
        self.view = view
        self.error_controller = error_controller

    @staticmethod
    def options_from_args(args):
        return AnalysisOptions(
            group_size=args.group_size,
            bin_ns=args.bin_ns,
            kl_threshold=args.kl_threshold,
            timing_threshold=args.timing_threshold,
            alpha=args.alpha,
            divergence=DivergenceOptions(epsilon=args.epsilon),
        )

    def _condition1(self, args):
        if not args.independence_trials:
            return None
        if args.n is None or args.key is None:
            raise ValidationError(
                "--independence-trials needs --n and --key of the group scheme")
        key = StegKey.parse(args.n, args.key, args.x, args.start)
        enum = ParityEnumeration.from_key(key)
        length = args.independence_bits
        messages = ['0' * length, '1' * length]
        return message_independence_check(enum, messages,
                                          args.independence_trials,
                                          args.master_seed,
                                          args.kl_threshold)

    def analyze(self, args):
        """
        Run the analyze command

        Parameters:
            args: parsed command-line arguments

        Returns:
            tuple: (passed, verdict summary)
        """
        opts = self.options_from_args(args)
        cover = read_stream(args.cover, 'seq')
        stego = read_stream(args.stego, args.order)
        condition1 = self._condition1(args)

        report = undetectability_report(cover, stego, opts, condition1)
        if not report.condition2['dof']:
            self.error_controller.show_warning(
                "analysis", "fewer than two group classes observed; "
                "chi-square test skipped")
        data = report.to_dict()
        data['parameters'].update({'cover': args.cover, 'stego': args.stego,
                                   'order': args.order})
        if condition1 is not None:
            data['parameters']['master_seed'] = args.master_seed
        if args.report:
            write_json(data, args.report)

        summary = (f"condition2 kl={report.condition2['kl_bits']:.6g} bits "
                   f"chi2={report.condition2['chi2']:.4g} "
                   f"dof={report.condition2['dof']}; "
                   f"condition3 kl={report.condition3['kl_bits']:.6g} bits")
        if condition1 is not None:
            summary = (f"condition1 kl={condition1['max_pairwise_kl_bits']:.6g} "
                       f"bits; " + summary)
        self.view.show_result(summary)
        self.view.show_result(f"verdict: {report.verdict}")
        return report.passed, report.verdict
