# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.autodiff.layers` module provides the layers of the
trainable networks: dense layers, multi-layer perceptrons, LSTM cells and
bidirectional LSTMs.

The parameters of a layer are registered in a
:class:`~lmsynth.autodiff.optim.ParamStore` under names prefixed by the name
of the layer (e.g. ``"d1/0/weight"``).
"""

import numpy as np

from lmsynth.errors import ConfigError, ShapeMismatch
from . import ops
from .tensor import Tensor

INITS = ("glorot", "normal", "zeros")


def init_weight(rng, fan_in, fan_out, init="glorot"):
    """Returns an initial weight matrix of shape ``(fan_in, fan_out)``.

    :param rng: a :class:`numpy.random.Generator`.
    :param init: ``"glorot"`` (uniform in
        ``+-sqrt(6 / (fan_in + fan_out))``), ``"normal"`` (standard deviation
        ``1 / sqrt(fan_in)``) or ``"zeros"``.
    :raises ConfigError: if ``init`` is unknown.
    """
    if init == "glorot":
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        return rng.uniform(-limit, limit, size=(fan_in, fan_out))
    if init == "normal":
        return rng.normal(0.0, 1.0 / np.sqrt(fan_in), size=(fan_in, fan_out))
    if init == "zeros":
        return np.zeros((fan_in, fan_out))
    raise ConfigError('unknown initialization "{}", expected one of '
                     '{}'.format(init, ", ".join(INITS)))


class Dense(object):
    """A fully connected layer ``x . W + b``.

    :param store: the :class:`~lmsynth.autodiff.optim.ParamStore` of the
        parameters.
    :param name: the prefix of the parameter names.
    :param n_in: the input dimension.
    :param n_out: the output dimension.
    :param rng: a :class:`numpy.random.Generator`.
    :param init: the initialization of the weights (see
        :func:`init_weight`); the bias is initialized to zero.
    """
    # pylint: disable=too-many-arguments
    def __init__(self, store, name, n_in, n_out, rng, init="glorot"):
        self.n_in = n_in
        self.n_out = n_out
        self.weight = store.add(name + "/weight",
                                init_weight(rng, n_in, n_out, init))
        self.bias = store.add(name + "/bias", np.zeros(n_out))

    def __call__(self, x):
        x = ops.as_tensor(x)
        if x.shape[-1] != self.n_in:
            raise ShapeMismatch("{}: expected {} input features, got "
                                "{}".format(self.weight.name, self.n_in,
                                            x.shape[-1]))
        return ops.add(ops.matmul(x, self.weight), self.bias)


class MLP(object):
    """A multi-layer perceptron with tanh hidden activations and a linear
    output layer.

    :param store: the :class:`~lmsynth.autodiff.optim.ParamStore` of the
        parameters.
    :param name: the prefix of the parameter names.
    :param sizes: the sizes of the layers, input and output included.
    :type sizes: list of int
    :param rng: a :class:`numpy.random.Generator`.
    :param init: the initialization of the weights.
    """
    # pylint: disable=too-many-arguments
    def __init__(self, store, name, sizes, rng, init="glorot"):
        if len(sizes) < 2:
            raise ConfigError("an MLP needs at least an input and an output "
                             "size")
        self.layers = [Dense(store, "{}/{}".format(name, i), n_in, n_out, rng,
                             init)
                       for i, (n_in, n_out) in enumerate(zip(sizes[:-1],
                                                             sizes[1:]))]

    def features(self, x):
        """Returns the activations of the last hidden layer (the input if
        there is no hidden layer)."""
        for layer in self.layers[:-1]:
            x = ops.tanh(layer(x))
        return ops.as_tensor(x)

    def __call__(self, x):
        return self.layers[-1](self.features(x))


class LSTMCell(object):
    """An LSTM cell.

    The gates are computed as ``x . W + h . U + b``, split into the input,
    forget, cell and output gates.

    :param store: the :class:`~lmsynth.autodiff.optim.ParamStore` of the
        parameters.
    :param name: the prefix of the parameter names.
    :param n_in: the input dimension.
    :param n_hidden: the dimension of the hidden and cell states.
    :param rng: a :class:`numpy.random.Generator`.
    :param forget_bias: the initial bias of the forget gate.
    :param init: the initialization of ``W`` and ``U``.
    """
    # pylint: disable=too-many-arguments
    def __init__(self, store, name, n_in, n_hidden, rng, forget_bias=1.0,
                 init="glorot"):
        self.n_in = n_in
        self.n_hidden = n_hidden
        self.input_weight = store.add(
            name + "/input_weight",
            init_weight(rng, n_in, 4 * n_hidden, init))
        self.hidden_weight = store.add(
            name + "/hidden_weight",
            init_weight(rng, n_hidden, 4 * n_hidden, init))
        bias = np.zeros(4 * n_hidden)
        bias[n_hidden:2 * n_hidden] = forget_bias
        self.bias = store.add(name + "/bias", bias)

    def zero_state(self, batch_size):
        """Returns the initial ``(h, c)`` states."""
        return (Tensor(np.zeros((batch_size, self.n_hidden))),
                Tensor(np.zeros((batch_size, self.n_hidden))))

    def __call__(self, x, h, c):
        return lstm_step(self, x, h, c)


def lstm_step(cell, x, h, c):
    """One step of an LSTM cell.

    :param cell: an :class:`LSTMCell`.
    :param x: the input, of shape ``(B, n_in)``.
    :param h: the hidden state, of shape ``(B, n_hidden)``.
    :param c: the cell state, of shape ``(B, n_hidden)``.
    :returns: the new states ``(h, c)``.
    :raises ShapeMismatch: if the dimensions are inconsistent.
    """
    x, h, c = ops.as_tensor(x), ops.as_tensor(h), ops.as_tensor(c)
    size = cell.n_hidden
    if x.shape[-1] != cell.n_in or h.shape[-1] != size or \
            c.shape != h.shape:
        raise ShapeMismatch(
            "lstm_step: inconsistent shapes x={}, h={}, c={}".format(
                x.shape, h.shape, c.shape))

    gates = ops.add(ops.add(ops.matmul(x, cell.input_weight),
                            ops.matmul(h, cell.hidden_weight)), cell.bias)
    input_gate = ops.sigmoid(ops.slice(gates, np.s_[:, :size]))
    forget_gate = ops.sigmoid(ops.slice(gates, np.s_[:, size:2 * size]))
    cell_gate = ops.tanh(ops.slice(gates, np.s_[:, 2 * size:3 * size]))
    output_gate = ops.sigmoid(ops.slice(gates, np.s_[:, 3 * size:]))

    c = ops.add(ops.mul(forget_gate, c), ops.mul(input_gate, cell_gate))
    h = ops.mul(output_gate, ops.tanh(c))
    return h, c


class BiLSTM(object):
    """A bidirectional LSTM: a forward and a backward :class:`LSTMCell`.

    :param store: the :class:`~lmsynth.autodiff.optim.ParamStore` of the
        parameters.
    :param name: the prefix of the parameter names.
    :param n_in: the input dimension.
    :param n_hidden: the dimension of the states of each direction.
    :param rng: a :class:`numpy.random.Generator`.
    :param forget_bias: the initial bias of the forget gates.
    :param init: the initialization of the weights.
    """
    # pylint: disable=too-many-arguments
    def __init__(self, store, name, n_in, n_hidden, rng, forget_bias=1.0,
                 init="glorot"):
        self.n_hidden = n_hidden
        self.forward_cell = LSTMCell(store, name + "/forward", n_in, n_hidden,
                                     rng, forget_bias, init)
        self.backward_cell = LSTMCell(store, name + "/backward", n_in,
                                      n_hidden, rng, forget_bias, init)

    def __call__(self, steps):
        return bilstm_forward(self, steps)


def bilstm_forward(bilstm, steps):
    """Runs a bidirectional LSTM over a sequence.

    :param bilstm: a :class:`BiLSTM`.
    :param steps: the inputs of each step, a list of tensors of shape
        ``(B, n_in)``.
    :returns: a tuple ``(outputs, final)``, where ``outputs`` is the list of
        the per-step hidden states of both directions concatenated (shape
        ``(B, 2 * n_hidden)``), and ``final`` the concatenation of the last
        hidden state of each direction.
    :raises ShapeMismatch: if the sequence is empty or the shapes are
        inconsistent.
    """
    if not steps:
        raise ShapeMismatch("bilstm_forward: empty sequence")
    steps = [ops.as_tensor(step) for step in steps]
    batch_size = steps[0].shape[0]

    h, c = bilstm.forward_cell.zero_state(batch_size)
    forward = []
    for step in steps:
        h, c = lstm_step(bilstm.forward_cell, step, h, c)
        forward.append(h)

    h, c = bilstm.backward_cell.zero_state(batch_size)
    backward = []
    for step in reversed(steps):
        h, c = lstm_step(bilstm.backward_cell, step, h, c)
        backward.append(h)
    backward.reverse()

    outputs = [ops.concat((f, b), axis=1) for f, b in zip(forward, backward)]
    final = ops.concat((forward[-1], backward[0]), axis=1)
    return outputs, final
