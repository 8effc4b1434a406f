# -*- coding: utf-8 -*-

"""
lmsynth.lsg
~~~~~~~~~~~

This package provides the identity-preserving landmark sequence generator
(LSG), its loss terms and its adversarial training.
"""

from .config import LsgConfig
from .model import LsgModel, LsgOutput, lsg_forward, synthesize
from .losses import (adv_losses_d1, adv_losses_d2, loss_support_hidden,
                     loss_support_output, loss_reconstruction, total_lsg_loss,
                     d2_pair_accuracy)
from .training import train_lsg, HISTORY_COLUMNS
