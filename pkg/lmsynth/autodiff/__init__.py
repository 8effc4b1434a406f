# -*- coding: utf-8 -*-

"""
lmsynth.autodiff
~~~~~~~~~~~~~~~~

This package provides dense 64-bit tensors with reverse-mode differentiation,
the layers of the trainable networks (dense, LSTM, bidirectional LSTM), and
the Adam optimizer.
"""

from .tensor import Tensor, Tape, current_tape
from .optim import Parameter, ParamStore, adam_step, lr_schedule
from .layers import Dense, MLP, LSTMCell, BiLSTM, lstm_step, bilstm_forward
from .gradcheck import gradient_check, GradientCheckReport
from . import ops
