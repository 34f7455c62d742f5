"""
Controller for error handling
Maps model exceptions to exit codes and reports warnings
"""

import logging

from model.errors import DecodeError, EmbeddingError, ValidationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_EMBEDDING = 3
EXIT_DECODE = 4
EXIT_IO = 5
EXIT_VERDICT_FAIL = 6


class ErrorController:
    """
    Turns failures into user-facing messages and stable exit codes
    """

    def __init__(self, view):
        """
        Initialize error controller

        Parameters:
            view: ConsoleView instance
        """
        self.view = view

    @staticmethod
    def exit_code_for(exc):
        """
        Exit code of an exception

        Parameters:
            exc (Exception): raised error

        Returns:
            int: 2 validation, 3 embedding, 4 decode, 5 I/O; None if unknown
        """
        if isinstance(exc, EmbeddingError):
            return EXIT_EMBEDDING
        if isinstance(exc, DecodeError):
            return EXIT_DECODE
        if isinstance(exc, ValidationError):
            return EXIT_VALIDATION
        if isinstance(exc, OSError):
            return EXIT_IO
        return None

    def handle(self, exc):
        """
        Report an exception and return its exit code

        Parameters:
            exc (Exception): error raised by a command

        Returns:
            int: exit code
        """
        code = self.exit_code_for(exc)
        if code is None:
            raise exc
        error_type = {
            EXIT_VALIDATION: "invalid input",
            EXIT_EMBEDDING: "embedding failed",
            EXIT_DECODE: "decoding failed",
            EXIT_IO: "i/o error",
        }[code]
        self.show_error(error_type, f"{type(exc).__name__}: {exc}")
        return code

    def show_error(self, error_type, message):
        """
        Display an error message

        Parameters:
            error_type (str): Type of error (validation, embedding, etc.)
            message (str): Error message to display
        """
        logger.debug("%s: %s", error_type, message)
        self.view.show_error(error_type, message)

    def show_warning(self, warning_type, message):
        """
        Display a warning; the command carries on

        Parameters:
            warning_type (str): short category, e.g. "pad"
            message (str): warning text
        """
        logger.debug("warning %s: %s", warning_type, message)
        self.view.show_warning(warning_type, message)
