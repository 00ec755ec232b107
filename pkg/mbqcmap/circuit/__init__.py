"""
Rule implementations for the :class:`~mbqcmap.ir.Circuit`
"""
from .rules import *     # noqa
