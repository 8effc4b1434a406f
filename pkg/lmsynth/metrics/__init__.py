# -*- coding: utf-8 -*-

"""
lmsynth.metrics
~~~~~~~~~~~~~~~

This package provides the evaluation of identity preservation: the landmark
identity embedder, the CSIM, SSIM and Fréchet distance measures, the
rasterization of landmarks, and the comparison of the generator with the
linear interpolation baseline.
"""

from .embedder import (EmbedderConfig, EmbeddingModel, train_id_embedder,
                       aligned_features)
from .similarity import csim, ssim, GaussianStats, frechet_distance
from .raster import rasterize_landmarks, pixel_coordinates
from .histogram import Histogram, csim_histogram
from .evaluation import EvalConfig, eval_identity_preservation
