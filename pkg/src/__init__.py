"""
StegBlocks - block-based network steganography
Main package initialization
"""

__version__ = "1.0.0"
