"""
Main controller coordinating all application logic
Dispatches parsed commands to the sub-controllers and maps outcomes to
exit codes
"""

import logging

from controller.analysis_controller import AnalysisController
from controller.channel_controller import ChannelController
from controller.decode_controller import DecodeController
from controller.demo_controller import DemoController
from controller.encode_controller import EncodeController
from controller.error_controller import (EXIT_OK, EXIT_VERDICT_FAIL,
                                         ErrorController)
from controller.key_controller import KeyController
from model.errors import StegBlocksError
from view.console_view import ConsoleView

logger = logging.getLogger(__name__)


class MainController:
    """
    Main controller that coordinates all application components
    """

    def __init__(self, view=None):
        """
        Initialize main controller

        Parameters:
            view: ConsoleView instance, a stdout/stderr one if None
        """
        self.view = view if view is not None else ConsoleView()

        # Sub-controllers
        self.error_controller = ErrorController(self.view)
        self.key_controller = KeyController(self.view, self.error_controller)
        self.encode_controller = EncodeController(self.view,
                                                  self.error_controller)
        self.decode_controller = DecodeController(self.view,
                                                  self.error_controller)
        self.channel_controller = ChannelController(self.view,
                                                    self.error_controller)
        self.analysis_controller = AnalysisController(self.view,
                                                      self.error_controller)
        self.demo_controller = DemoController(self.view)

        self.handlers = {
            'keygen': self.handle_keygen,
            'encode': self.encode_controller.encode,
            'decode': self.decode_controller.decode,
            'simulate': self.handle_simulate,
            'analyze': self.analysis_controller.analyze,
            'demo-fig1': self.handle_demo,
        }

    def handle_keygen(self, args):
        return self.key_controller.keygen(args.bits, args.out, args.seed,
                                          args.force)

    def handle_simulate(self, args):
        return self.channel_controller.simulate(args.channel, args.config,
                                                args.input, args.out,
                                                args.seed)

    def handle_demo(self, args):
        return self.demo_controller.demo_fig1()

    def dispatch(self, args):
        """
        Run one command

        Parameters:
            args: argparse namespace with a 'command' attribute

        Returns:
            int: exit code (0 ok, 2 validation, 3 embedding, 4 decode,
                5 i/o, 6 analysis verdict fail)
        """
        handler = self.handlers[args.command]
        try:
            success, message = handler(args)
        except (StegBlocksError, OSError) as e:
            return self.error_controller.handle(e)

        logger.info("%s: %s", args.command, message)
        if not success:
            return EXIT_VERDICT_FAIL
        return EXIT_OK
