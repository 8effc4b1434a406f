# -*- coding: utf-8 -*-

"""
lmsynth.synth
~~~~~~~~~~~~~

This package provides a parametric synthetic face, whose identity, expression
and pose factors are known, and the generation of labeled datasets from it.
"""

from .template import (FaceTemplate3D, default_template, canonical_frame,
                       IDENTITY_ATTRIBUTES, EXPRESSION_ATTRIBUTES)
from .face import (IdentityParams, ExpressionParams, synthesize_frame,
                   manipulate_attribute)
from .dataset import DatasetConfig, generate_dataset, identity_table
