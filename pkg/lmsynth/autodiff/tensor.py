# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.autodiff.tensor` module provides the :class:`Tensor` class
and the :class:`Tape` on which the differentiable operations are recorded.

Differentiation is define-by-run: the operations of
:mod:`lmsynth.autodiff.ops` are recorded on the active tape (the innermost
``with Tape():`` block of the current thread) only when one of their inputs
requires a gradient. Outside of a tape, the operations only compute values.
"""

import contextlib
import threading

import numpy as np

from lmsynth.errors import NonScalarLoss, ShapeMismatch

_state = threading.local()


def current_tape():
    """Returns the active :class:`Tape` of the current thread, or ``None``."""
    stack = getattr(_state, "tapes", None)
    if not stack:
        return None
    return stack[-1]


@contextlib.contextmanager
def no_tape():
    """A context in which no operation is recorded, even inside a
    ``with Tape():`` block."""
    if getattr(_state, "tapes", None) is None:
        _state.tapes = []
    _state.tapes.append(None)
    try:
        yield
    finally:
        _state.tapes.pop()


class Tensor(object):
    """A dense array of 64-bit real values.

    :param value: an array-like.
    :param requires_grad: ``True`` if the gradient of a loss with respect to
        this tensor should be computed.
    :type requires_grad: bool
    :param name: an optional name, used in error messages.
    :type name: str
    """
    __slots__ = ("_value", "grad", "requires_grad", "name", "_is_leaf")

    def __init__(self, value, requires_grad=False, name=None):
        self._value = np.array(value, dtype=np.float64)
        self.grad = None
        self.requires_grad = bool(requires_grad)
        self.name = name
        self._is_leaf = True

    def __repr__(self):
        return "Tensor(shape={}, requires_grad={}{})".format(
            self.shape, self.requires_grad,
            ", name={!r}".format(self.name) if self.name else "")

    @property
    def value(self):
        """The values of the tensor, as a :class:`numpy.ndarray`."""
        return self._value

    @value.setter
    def value(self, value):
        self._value = np.array(value, dtype=np.float64)

    @property
    def shape(self):
        """The shape of the tensor."""
        return self._value.shape

    @property
    def size(self):
        """The number of values of the tensor."""
        return self._value.size

    @property
    def is_leaf(self):
        """``True`` if the tensor was not produced by a recorded
        operation."""
        return self._is_leaf

    def item(self):
        """Returns the value of a single-valued tensor as a float.

        :raises ShapeMismatch: if the tensor has more than one value.
        """
        if self.size != 1:
            raise ShapeMismatch(
                "item() needs a single-valued tensor, got shape {}".format(
                    self.shape))
        return float(self._value.reshape(-1)[0])

    def detach(self):
        """Returns a constant copy of the tensor, which is not connected to
        any tape."""
        return Tensor(self._value)

    def zero_grad(self):
        """Resets the gradient accumulator."""
        self.grad = None

    def accumulate(self, grad):
        """Adds ``grad`` to the gradient accumulator."""
        if self.grad is None:
            self.grad = np.array(grad, dtype=np.float64).reshape(self.shape)
        else:
            self.grad = self.grad + grad


class _Node(object):
    """A recorded operation."""
    # pylint: disable=too-few-public-methods
    __slots__ = ("output", "inputs", "vjp", "name")

    def __init__(self, output, inputs, vjp, name):
        self.output = output
        self.inputs = inputs
        self.vjp = vjp
        self.name = name


class Tape(object):
    """An ordered record of the operations applied to tensors that require a
    gradient.

    A tape is used as a context manager; the operations computed inside the
    ``with`` block are recorded, and :meth:`backward` propagates the gradient
    of a scalar loss back to the leaf tensors.

    A tape, and the tensors recorded on it, should only be used by the thread
    that created them.
    """
    def __init__(self):
        self._nodes = []

    def __enter__(self):
        if getattr(_state, "tapes", None) is None:
            _state.tapes = []
        _state.tapes.append(self)
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        _state.tapes.pop()

    def __len__(self):
        return len(self._nodes)

    def record(self, output, inputs, vjp, name=None):
        """Records an operation.

        :param output: the output :class:`Tensor` of the operation.
        :param inputs: the input tensors.
        :type inputs: tuple of :class:`Tensor`
        :param vjp: a function taking the gradient with respect to
            ``output`` and returning the gradients with respect to each input
            (``None`` for inputs that do not require a gradient).
        :param name: the name of the operation.
        """
        # pylint: disable=protected-access
        output._is_leaf = False
        self._nodes.append(_Node(output, tuple(inputs), vjp, name))

    def backward(self, loss):
        """Propagates the gradient of ``loss`` to the leaf tensors requiring
        a gradient, whose ``grad`` accumulators are incremented.

        The nodes are visited once, in the reverse of the recording order,
        which is a topological order of the computation graph.

        :param loss: a single-valued :class:`Tensor`.
        :raises NonScalarLoss: if ``loss`` has more than one value.
        """
        if loss.size != 1:
            raise NonScalarLoss("the loss should be a scalar, got shape "
                                "{}".format(loss.shape))
        if loss.is_leaf:
            if loss.requires_grad:
                loss.accumulate(np.ones(loss.shape))
            return

        grads = {id(loss): np.ones(loss.shape)}
        for node in reversed(self._nodes):
            grad = grads.pop(id(node.output), None)
            if grad is None:
                continue

            input_grads = node.vjp(grad)
            for tensor, input_grad in zip(node.inputs, input_grads):
                if input_grad is None or not tensor.requires_grad:
                    continue
                if tensor.is_leaf:
                    tensor.accumulate(input_grad)
                elif id(tensor) in grads:
                    grads[id(tensor)] = grads[id(tensor)] + input_grad
                else:
                    grads[id(tensor)] = input_grad
