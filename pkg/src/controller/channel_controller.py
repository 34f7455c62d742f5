"""
Handles the simulate command
"""

import logging

from model.channels import schedule_send, simulate
from model.config import CHANNELS, load_channel_config, parse_channel_config
from model.errors import InvalidChannelConfig
from model.trace_io import read_stream, write_reception

logger = logging.getLogger(__name__)


class ChannelController:
    """
    Sends a trace through a simulated carrier
    """

    def __init__(self, view, error_controller):
        self.view = view
        self.error_controller = error_controller

    def simulate(self, channel, config_path, in_path, out_path, seed):
        """
        Simulate a channel and write the reception trace

        Parameters:
            channel (str): 'tcp' or 'sctp'
            config_path (str): key=value config file, defaults if None
            in_path (str): sent trace
            out_path (str): reception trace, t_ns = receive times
            seed (int): loss/jitter seed

        Returns:
            tuple: (success, message)
        """
        if channel not in CHANNELS:
            raise InvalidChannelConfig(
                f"channel must be one of {sorted(CHANNELS)}, got '{channel}'")
        config = load_channel_config(config_path, channel) if config_path \
            else parse_channel_config("", channel)
        if channel == 'tcp' and config.jitter_ns and not config.ack_gated:
            self.error_controller.show_warning(
                "channel", "jitter without ack_gated may reorder objects across "
                "connections; arrival order can then mis-decode")

        stream = read_stream(in_path, 'seq')
        events = schedule_send(stream, config)
        trace = simulate(events, config, seed)
        write_reception(trace, out_path)

        retries = sum(a.attempts - 1 for a in trace.arrivals)
        logger.info("simulate %s seed %d: %d objects, %d retransmissions",
                    channel, seed, len(trace), retries)
        return True, f"{len(trace)} objects received into {out_path}"
