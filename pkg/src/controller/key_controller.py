"""
Handles one-time-pad generation
"""

import logging

from model.errors import ValidationError
from model.pad import Pad
from model.trace_io import write_pad

logger = logging.getLogger(__name__)


class KeyController:
    """
    Creates pad files for the group scheme
    """

    def __init__(self, view, error_controller):
        self.view = view
        self.error_controller = error_controller

    def keygen(self, bits, out_path, seed=None, force=False):
        """
        Write a fresh pad and its offset sidecar

        Parameters:
            bits (int): requested pad length; rounded up to whole bytes
            out_path (str): pad file path
            seed (int): optional seed, OS entropy if None
            force (bool): overwrite an existing pad

        Returns:
            tuple: (success, message)
        """
        if bits is None or bits <= 0:
            raise ValidationError(f"--bits must be > 0, got {bits}")
        length = 8 * ((bits + 7) // 8)
        if length != bits:
            self.error_controller.show_warning(
                "pad", f"--bits {bits} rounded up to {length} (whole bytes)")
        pad = Pad.random(length, seed)
        write_pad(pad, out_path, force)
        logger.info("keygen: %d bits (seed %s) -> %s", length, seed, out_path)
        return True, f"wrote {length // 8}-byte pad to {out_path}"
