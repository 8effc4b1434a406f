# -*- coding: utf-8 -*-

"""Runs the :mod:`lmsynth.cli` command line interface."""

import sys

from lmsynth.cli import main

sys.exit(main())
