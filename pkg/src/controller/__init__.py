"""
Controller package for StegBlocks
One controller per command group plus error handling and dispatch
"""

from controller.main_controller import MainController
from controller.error_controller import ErrorController
from controller.key_controller import KeyController
from controller.encode_controller import EncodeController
from controller.decode_controller import DecodeController
from controller.channel_controller import ChannelController
from controller.analysis_controller import AnalysisController
from controller.demo_controller import DemoController

__all__ = [
    'MainController',
    'ErrorController',
    'KeyController',
    'EncodeController',
    'DecodeController',
    'ChannelController',
    'AnalysisController',
    'DemoController'
]
