# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.io` package reads and writes the files of the package:
landmark record files (:mod:`lmsynth.io.records`), checkpoints
(:mod:`lmsynth.io.checkpoint`), SVG and PGM renders (:mod:`lmsynth.io.render`)
and CSV tables (:mod:`lmsynth.io.tables`).

Record files are read and written with :class:`~lmsynth.io.base.Reader` and
:class:`~lmsynth.io.base.Writer` objects, which can be used as context
managers.
"""
