# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth` module synthesizes facial landmark sequences between two
frames of the same person while preserving the identity of that person:

- :func:`~lmsynth.upsample_linear` is the linear interpolation baseline;
- :func:`~lmsynth.synthesize` runs a trained landmark sequence generator
  (:class:`~lmsynth.lsg.LsgModel`), trained with
  :func:`~lmsynth.train_lsg`.

Training data comes from the parametric synthetic face of
:mod:`lmsynth.synth` (:func:`~lmsynth.generate_dataset`), whose identity,
expression and pose factors are known. The identity preservation of the
generated sequences is measured with :mod:`lmsynth.metrics`.

.. note::

    Landmark frames are 98 points in normalized coordinates: the face lies
    roughly within the square ``[-1, 1] x [-1, 1]``.

.. autofunction:: lmsynth.upsample_linear
.. autofunction:: lmsynth.synthesize
.. autofunction:: lmsynth.train_lsg
.. autofunction:: lmsynth.generate_dataset
"""

__version__ = "0.1.0"


from .landmarks import (LandmarkFrame, LandmarkSequence, LandmarkDataset,
                        upsample_linear, fit_similarity, estimate_pose)
from .synth import generate_dataset
from .lsg import LsgConfig, LsgModel, synthesize, train_lsg
from .metrics import csim, ssim, frechet_distance
