# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.autodiff.optim` module provides the parameter store, the
Adam optimizer and the learning rate schedule.
"""

from collections import OrderedDict

import numpy as np

from lmsynth.errors import ConfigError, NonFinite, ShapeMismatch
from .tensor import Tensor


class Parameter(Tensor):
    """A trainable :class:`~lmsynth.autodiff.tensor.Tensor`, with the first
    and second moment estimates of Adam."""
    __slots__ = ("m", "v")

    def __init__(self, value, name=None):
        super(Parameter, self).__init__(value, requires_grad=True, name=name)
        self.m = np.zeros(self.shape)
        self.v = np.zeros(self.shape)


class ParamStore(object):
    """An ordered collection of named :class:`Parameter`, with the step count
    of the optimizer."""
    def __init__(self):
        self._params = OrderedDict()
        self.step = 0

    def __len__(self):
        return len(self._params)

    def __iter__(self):
        return iter(self._params.values())

    def __contains__(self, name):
        return name in self._params

    def __getitem__(self, name):
        return self._params[name]

    def __repr__(self):
        return "ParamStore(params={}, values={}, step={})".format(
            len(self), self.n_values, self.step)

    @property
    def n_values(self):
        """The total number of scalar parameters."""
        return sum(param.size for param in self._params.values())

    def names(self):
        """Returns the names of the parameters, in insertion order."""
        return list(self._params.keys())

    def items(self):
        """Returns the ``(name, parameter)`` pairs, in insertion order."""
        return list(self._params.items())

    def add(self, name, value):
        """Adds a parameter.

        :param name: the name of the parameter.
        :type name: str
        :param value: its initial value.
        :returns: the new :class:`Parameter`.
        :raises ConfigError: if a parameter with the same name exists.
        """
        if name in self._params:
            raise ConfigError('duplicate parameter "{}"'.format(name))
        param = Parameter(value, name=name)
        self._params[name] = param
        return param

    def zero_grad(self):
        """Resets the gradient accumulators of all the parameters."""
        for param in self._params.values():
            param.zero_grad()

    def snapshot(self):
        """Returns a copy of the values of the parameters, as an ordered
        dict."""
        return OrderedDict((name, np.array(param.value))
                           for name, param in self._params.items())

    def load(self, values):
        """Sets the values of the parameters from a mapping of names to
        arrays, and resets the optimizer state.

        :raises KeyError: if a parameter is missing from ``values``.
        :raises ShapeMismatch: if an array does not have the shape of its
            parameter.
        """
        for name, param in self._params.items():
            value = np.asarray(values[name], dtype=np.float64)
            if value.shape != param.shape:
                raise ShapeMismatch(
                    'parameter "{}" should have shape {}, got {}'.format(
                        name, param.shape, value.shape))
            param.value = value
            param.m = np.zeros(param.shape)
            param.v = np.zeros(param.shape)
            param.zero_grad()
        self.step = 0


def adam_step(store, lr, beta1=0.5, beta2=0.999, eps=1e-8):
    """Updates the parameters of a store with one step of Adam, with bias
    correction. Parameters without gradient are treated as having a zero
    gradient.

    :param store: a :class:`ParamStore`.
    :param lr: the learning rate.
    :type lr: float
    :param beta1: the decay rate of the first moment estimates.
    :param beta2: the decay rate of the second moment estimates.
    :param eps: the term added to the denominator.
    :raises NonFinite: if the update produces NaN or infinite values.
    """
    store.step += 1
    correction1 = 1 - beta1 ** store.step
    correction2 = 1 - beta2 ** store.step

    for param in store:
        grad = param.grad if param.grad is not None else 0.0
        param.m = beta1 * param.m + (1 - beta1) * grad
        param.v = beta2 * param.v + (1 - beta2) * np.square(grad)

        m_hat = param.m / correction1
        v_hat = param.v / correction2
        param.value = param.value - lr * m_hat / (np.sqrt(v_hat) + eps)

        if not np.all(np.isfinite(param.value)):
            raise NonFinite('parameter "{}" became non-finite'.format(
                param.name))


def lr_schedule(epoch, config):
    """Returns the learning rate of an epoch: ``config.lr`` until
    ``config.lr_decay_start``, then decreasing linearly to zero at
    ``config.lr_decay_end``.

    :param epoch: the epoch index.
    :type epoch: int
    :param config: an object with the attributes ``lr``,
        ``lr_decay_start`` and ``lr_decay_end`` (e.g. a
        :class:`~lmsynth.lsg.config.LsgConfig`).
    """
    start = config.lr_decay_start
    end = config.lr_decay_end
    if epoch <= start:
        return config.lr
    if epoch >= end:
        return 0.0
    return config.lr * (end - epoch) / (end - start)
