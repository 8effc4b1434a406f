# -*- coding: utf-8 -*-

"""
lmsynth.landmarks
~~~~~~~~~~~~~~~~~

This package provides the landmark data model, the least-squares similarity
alignment, the head pose estimation and the linear upsampling of frames.
"""

from .topology import LandmarkTopology, WFLW98, N_POINTS
from .frame import (LandmarkFrame, LandmarkSequence, flatten, unflatten,
                    add_noise, mirror_frame, as_coords)
from .geometry import (SimilarityTransform, fit_similarity, apply_transform,
                       inverse_transform, align_frame)
from .pose import PoseAngles, estimate_pose, rotation_matrix
from .interpolate import upsample_linear, interpolation_weights
from .dataset import SequenceRecord, LandmarkDataset
