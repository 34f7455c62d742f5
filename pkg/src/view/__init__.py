"""
View package for StegBlocks
Console output of the command-line tool
"""

from view.console_view import ConsoleView

__all__ = ['ConsoleView']
