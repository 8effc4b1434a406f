# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.utils` module provides utility functions shared by the
other modules.
"""

from .windows import gaussian, outer
