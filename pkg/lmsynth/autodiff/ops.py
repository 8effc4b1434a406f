# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.autodiff.ops` module provides the differentiable operations.

Each operation computes its value with numpy and, when a tape is active and
one of its inputs requires a gradient, records a vector-Jacobian product
function on the tape. :func:`primitive` is the single entry point used to
define operations, and can be used to define new ones.
"""
# pylint: disable=redefined-builtin

import numpy as np
from scipy import special

from lmsynth.errors import NonFinite, ShapeMismatch, UnknownClass, ZeroVector
from .tensor import Tensor, current_tape


def as_tensor(value):
    """Returns ``value`` if it is a :class:`~lmsynth.autodiff.tensor.Tensor`,
    or a constant tensor containing it."""
    if isinstance(value, Tensor):
        return value
    return Tensor(value)


def primitive(name, value, inputs, vjp):
    """Creates the output tensor of an operation and records the operation on
    the active tape.

    :param name: the name of the operation.
    :type name: str
    :param value: the value of the output.
    :param inputs: the input tensors.
    :type inputs: tuple of :class:`~lmsynth.autodiff.tensor.Tensor`
    :param vjp: a function mapping the gradient with respect to the output to
        the tuple of gradients with respect to the inputs.
    :returns: a :class:`~lmsynth.autodiff.tensor.Tensor`.
    :raises NonFinite: if ``value`` contains NaN or infinite values.
    """
    value = np.asarray(value, dtype=np.float64)
    if not np.all(np.isfinite(value)):
        raise NonFinite("{} produced non-finite values".format(name))

    requires_grad = any(tensor.requires_grad for tensor in inputs)
    output = Tensor(value, requires_grad=requires_grad, name=name)

    tape = current_tape()
    if tape is not None and requires_grad:
        tape.record(output, inputs, vjp, name)
    return output


def _unbroadcast(grad, shape):
    """Sums ``grad`` over the broadcast dimensions of an input of shape
    ``shape``."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _check_broadcast(name, a, b):
    try:
        np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ShapeMismatch("{}: incompatible shapes {} and {}".format(
            name, a.shape, b.shape))


def _check_same_shape(name, a, b):
    if a.shape != b.shape:
        raise ShapeMismatch("{}: the shapes {} and {} should be equal".format(
            name, a.shape, b.shape))


def add(a, b):
    """Element-wise ``a + b``, with broadcasting."""
    a, b = as_tensor(a), as_tensor(b)
    _check_broadcast("add", a, b)
    return primitive("add", a.value + b.value, (a, b), lambda g: (
        _unbroadcast(g, a.shape), _unbroadcast(g, b.shape)))


def sub(a, b):
    """Element-wise ``a - b``, with broadcasting."""
    a, b = as_tensor(a), as_tensor(b)
    _check_broadcast("sub", a, b)
    return primitive("sub", a.value - b.value, (a, b), lambda g: (
        _unbroadcast(g, a.shape), _unbroadcast(-g, b.shape)))


def mul(a, b):
    """Element-wise ``a * b``, with broadcasting."""
    a, b = as_tensor(a), as_tensor(b)
    _check_broadcast("mul", a, b)
    return primitive("mul", a.value * b.value, (a, b), lambda g: (
        _unbroadcast(g * b.value, a.shape),
        _unbroadcast(g * a.value, b.shape)))


def matmul(a, b):
    """Matrix product of two 2D tensors.

    >>> matmul(Tensor([[1, 2], [3, 4]]), Tensor([[1], [1]])).value
    array([[3.],
           [7.]])

    :raises ShapeMismatch: if the inner dimensions differ.
    """
    a, b = as_tensor(a), as_tensor(b)
    if a.value.ndim != 2 or b.value.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeMismatch("matmul: incompatible shapes {} and {}".format(
            a.shape, b.shape))
    return primitive("matmul", np.dot(a.value, b.value), (a, b), lambda g: (
        np.dot(g, b.value.T), np.dot(a.value.T, g)))


def concat(tensors, axis=-1):
    """Concatenates tensors along an axis.

    :raises ShapeMismatch: if the other dimensions differ.
    """
    tensors = tuple(as_tensor(t) for t in tensors)
    try:
        value = np.concatenate([t.value for t in tensors], axis=axis)
    except ValueError:
        raise ShapeMismatch("concat: incompatible shapes {}".format(
            [t.shape for t in tensors]))
    bounds = np.cumsum([t.shape[axis] for t in tensors])[:-1]
    return primitive("concat", value, tensors,
                     lambda g: tuple(np.split(g, bounds, axis=axis)))


def slice(a, key):
    """Returns ``a[key]``, for any numpy index ``key``."""
    a = as_tensor(a)

    def vjp(g):
        grad = np.zeros(a.shape)
        np.add.at(grad, key, g)
        return (grad,)

    return primitive("slice", a.value[key], (a,), vjp)


def tanh(a):
    """Element-wise hyperbolic tangent."""
    a = as_tensor(a)
    value = np.tanh(a.value)
    return primitive("tanh", value, (a,), lambda g: (g * (1 - value ** 2),))


def sigmoid(a):
    """Element-wise logistic function."""
    a = as_tensor(a)
    value = special.expit(a.value)
    return primitive("sigmoid", value, (a,),
                     lambda g: (g * value * (1 - value),))


def relu(a):
    """Element-wise ``max(a, 0)``."""
    a = as_tensor(a)
    return primitive("relu", np.maximum(a.value, 0), (a,),
                     lambda g: (g * (a.value > 0),))


def _reduce_vjp(g, shape, axis, scale):
    if axis is not None:
        g = np.expand_dims(g, axis)
    return (np.broadcast_to(g, shape) * scale,)


def sum(a, axis=None):
    """Sum of the values of a tensor, over all of them or along an axis."""
    a = as_tensor(a)
    return primitive("sum", np.sum(a.value, axis=axis), (a,),
                     lambda g: _reduce_vjp(g, a.shape, axis, 1.0))


def mean(a, axis=None):
    """Mean of the values of a tensor, over all of them or along an axis."""
    a = as_tensor(a)
    count = a.size if axis is None else a.shape[axis]
    return primitive("mean", np.mean(a.value, axis=axis), (a,),
                     lambda g: _reduce_vjp(g, a.shape, axis, 1.0 / count))


def l1_mean(a, b):
    """Mean of ``|a - b|``."""
    a, b = as_tensor(a), as_tensor(b)
    _check_same_shape("l1_mean", a, b)
    diff = a.value - b.value
    sign = np.sign(diff) / diff.size
    return primitive("l1_mean", np.mean(np.abs(diff)), (a, b),
                     lambda g: (g * sign, -g * sign))


def mse(a, b):
    """Mean of ``(a - b)^2``. ``b`` may be broadcast against ``a``."""
    a, b = as_tensor(a), as_tensor(b)
    _check_broadcast("mse", a, b)
    diff = a.value - b.value
    scale = 2.0 / diff.size
    return primitive("mse", np.mean(diff ** 2), (a, b), lambda g: (
        _unbroadcast(g * scale * diff, a.shape),
        _unbroadcast(-g * scale * diff, b.shape)))


def smooth_l1(a, b):
    """Mean smooth L1 distance: each difference ``d`` contributes
    ``0.5 * d^2`` if ``|d| < 1``, and ``|d| - 0.5`` otherwise."""
    a, b = as_tensor(a), as_tensor(b)
    _check_same_shape("smooth_l1", a, b)
    diff = a.value - b.value
    small = np.abs(diff) < 1
    value = np.where(small, 0.5 * diff ** 2, np.abs(diff) - 0.5)
    local = np.where(small, diff, np.sign(diff)) / diff.size
    return primitive("smooth_l1", np.mean(value), (a, b),
                     lambda g: (g * local, -g * local))


def cosine_distance(a, b):
    """Cosine distance ``1 - u.v / (|u| |v|)`` between two vectors, or
    between the rows of two matrices (the output then has one value per
    row).

    :raises ShapeMismatch: if the shapes differ.
    :raises ZeroVector: if a vector has a zero norm.
    """
    a, b = as_tensor(a), as_tensor(b)
    _check_same_shape("cosine_distance", a, b)
    u = np.atleast_2d(a.value)
    v = np.atleast_2d(b.value)
    norm_u = np.linalg.norm(u, axis=-1, keepdims=True)
    norm_v = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(norm_u == 0) or np.any(norm_v == 0):
        raise ZeroVector("the cosine distance is undefined for zero vectors")

    cos = np.sum(u * v, axis=-1, keepdims=True) / (norm_u * norm_v)
    value = (1.0 - cos).reshape(u.shape[0])
    if a.value.ndim == 1:
        value = value[0]

    def vjp(g):
        g = np.reshape(g, (-1, 1))
        grad_u = -g * (v / (norm_u * norm_v) - cos * u / norm_u ** 2)
        grad_v = -g * (u / (norm_u * norm_v) - cos * v / norm_v ** 2)
        return grad_u.reshape(a.shape), grad_v.reshape(b.shape)

    return primitive("cosine_distance", value, (a, b), vjp)


def softmax_cross_entropy(logits, labels):
    """Mean softmax cross-entropy of the rows of ``logits`` against integer
    class labels.

    :param logits: a tensor of shape ``(N, C)``.
    :param labels: an array of ``N`` integers in ``[0, C)``.
    :raises ShapeMismatch: if the number of labels differs from ``N``.
    :raises UnknownClass: if a label is out of ``[0, C)``.
    """
    logits = as_tensor(logits)
    labels = np.asarray(labels, dtype=int).reshape(-1)
    n_rows, n_classes = logits.shape
    if labels.shape[0] != n_rows:
        raise ShapeMismatch("softmax_cross_entropy: {} labels for {} "
                            "rows".format(labels.shape[0], n_rows))
    if np.any(labels < 0) or np.any(labels >= n_classes):
        raise UnknownClass("the labels should be in [0, {}), got {}".format(
            n_classes, labels[(labels < 0) | (labels >= n_classes)][0]))

    log_probs = special.log_softmax(logits.value, axis=1)
    rows = np.arange(n_rows)
    value = -np.mean(log_probs[rows, labels])

    def vjp(g):
        grad = np.exp(log_probs)
        grad[rows, labels] -= 1
        return (g * grad / n_rows,)

    return primitive("softmax_cross_entropy", value, (logits,), vjp)


def bce_with_logits(logits, targets):
    """Mean binary cross-entropy of the sigmoid of ``logits`` against
    ``targets``, computed as ``max(x, 0) - x * t + log(1 + exp(-|x|))``.

    :param logits: a tensor.
    :param targets: an array of targets in ``[0, 1]`` (or a scalar),
        broadcastable to the shape of ``logits``.
    """
    logits = as_tensor(logits)
    x = logits.value
    t = np.broadcast_to(np.asarray(targets, dtype=np.float64), x.shape)
    value = np.mean(np.maximum(x, 0) - x * t + np.log1p(np.exp(-np.abs(x))))
    local = (special.expit(x) - t) / x.size
    return primitive("bce_with_logits", value, (logits,),
                     lambda g: (g * local,))
