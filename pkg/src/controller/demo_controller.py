"""
Handles the demo-fig1 command
The worked four-connection example, end to end
"""

import logging

from model.block_codec import (block_value_histogram, decode_stream,
                               segment_blocks)
from model.encoders import encode_full_control
from model.objects import ObjectStream, StegKey

logger = logging.getLogger(__name__)

# Objects of the worked example: n = 4, key {1, 3}, x = 1
WORKED_EXAMPLE_IDS = (1, 4, 3, 2, 4, 1, 2, 2, 3, 3, 4, 1, 1, 3)
WORKED_EXAMPLE_KEY = StegKey(4, frozenset({1, 3}), 1)
WORKED_EXAMPLE_MESSAGE = '1010'


class DemoController:
    """
    Prints the block table of the worked example and re-encodes its message
    """

    def __init__(self, view):
        self.view = view

    def demo_fig1(self):
        """
        Run the demo

        Returns:
            tuple: (success, decoded bits)
        """
        key = WORKED_EXAMPLE_KEY
        stream = ObjectStream.from_ids(WORKED_EXAMPLE_IDS)
        blocks = segment_blocks(stream, key)

        self.view.show_result(f"key: {key.describe()}")
        self.view.show_result(
            "stream: " + " ".join(str(i) for i in stream.ids()))
        self.view.show_table(
            ['block', 'start', 'end', 'length', 'value'],
            [(i, b.start, b.end, b.length, b.value)
             for i, b in enumerate(blocks)])
        bits = decode_stream(stream, key)
        self.view.show_result(f"decoded: {bits}")
        histogram = block_value_histogram(stream, key)
        self.view.show_table(['value', 'blocks'], sorted(histogram.items()))

        report = encode_full_control(stream, key, WORKED_EXAMPLE_MESSAGE)
        reencoded = " ".join(str(i) for i in report.stego.ids())
        self.view.show_result(f"full-control re-encoding of "
                              f"{WORKED_EXAMPLE_MESSAGE}: {reencoded}")
        self.view.show_result(
            f"re-encoding decodes to: {decode_stream(report.stego, key)}")
        logger.info("demo: %d blocks, decoded %s", len(blocks), bits)
        return bits == WORKED_EXAMPLE_MESSAGE, bits
