"""
Model package for StegBlocks
Contains all business logic and data structures
"""

from .errors import (StegBlocksError, ValidationError, EmbeddingError,
                     DecodeError)
from .objects import ObjectStream, StreamItem, StartPolicy, StegKey, Block
from .block_codec import (block_value, segment_blocks, decode_stream,
                          block_value_histogram)
from .encoders import (TraceReplay, IidUniform, GroupUniform, EncodeReport,
                       encode_current_object, encode_buffered,
                       encode_full_control)
from .pad import Pad, vernam_xor
from .perfect_scheme import (ParityEnumeration, GroupTrace, lex_rank,
                             lex_unrank, parity_rank, parity_unrank,
                             select_group, value_of_group, perfect_encode,
                             perfect_decode, check_balance)
from .channels import (SendEvent, TcpModel, SctpModel, ReceptionTrace,
                       schedule_send, simulate, arrival_order_stream,
                       tsn_order_stream)
from .steganalysis import (EmpiricalDistribution, DivergenceOptions,
                           ZeroPolicy, estimate_distribution, kl_divergence,
                           chi_square_uniformity, timing_distribution,
                           undetectability_report, message_independence_test)

__all__ = [
    'StegBlocksError', 'ValidationError', 'EmbeddingError', 'DecodeError',
    'ObjectStream', 'StreamItem', 'StartPolicy', 'StegKey', 'Block',
    'block_value', 'segment_blocks', 'decode_stream', 'block_value_histogram',
    'TraceReplay', 'IidUniform', 'GroupUniform', 'EncodeReport',
    'encode_current_object', 'encode_buffered', 'encode_full_control',
    'Pad', 'vernam_xor',
    'ParityEnumeration', 'GroupTrace', 'lex_rank', 'lex_unrank',
    'parity_rank', 'parity_unrank', 'select_group', 'value_of_group',
    'perfect_encode', 'perfect_decode', 'check_balance',
    'SendEvent', 'TcpModel', 'SctpModel', 'ReceptionTrace', 'schedule_send',
    'simulate', 'arrival_order_stream', 'tsn_order_stream',
    'EmpiricalDistribution', 'DivergenceOptions', 'ZeroPolicy',
    'estimate_distribution', 'kl_divergence', 'chi_square_uniformity',
    'timing_distribution', 'undetectability_report',
    'message_independence_test'
]
