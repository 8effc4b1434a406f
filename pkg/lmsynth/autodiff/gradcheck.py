# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.autodiff.gradcheck` module compares the gradients computed
by the tape with central finite differences.
"""

from collections import namedtuple
import logging

import numpy as np

from .tensor import Tape

logger = logging.getLogger(__name__)

GradientCheckReport = namedtuple(
    "GradientCheckReport",
    ["max_rel_error", "n_checked", "worst", "passed"])
GradientCheckReport.__doc__ = """The result of :func:`gradient_check`.

:param max_rel_error: the largest relative error.
:param n_checked: the number of checked coordinates.
:param worst: the ``(parameter name, index)`` of the largest error.
:param passed: ``True`` if ``max_rel_error <= tolerance``.
"""


def relative_error(analytic, numeric, floor=1e-6):
    """Returns ``|a - n| / max(|a|, |n|, floor)``."""
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), floor)


def gradient_check(loss_fn, store, tolerance=1e-3, samples=None, seed=0,
                   eps=1e-4, floor=1e-6):
    """Checks the gradients of a loss with respect to the parameters of a
    store against central finite differences.

    :param loss_fn: a function without arguments computing the scalar loss
        :class:`~lmsynth.autodiff.tensor.Tensor` from the parameters of
        ``store`` (the network and its input are bound in the closure).
    :param store: a :class:`~lmsynth.autodiff.optim.ParamStore`.
    :param tolerance: the maximum relative error.
    :type tolerance: float
    :param samples: the number of coordinates checked per parameter (all of
        them if ``None``).
    :type samples: int, optional
    :param seed: the seed of the coordinate subsampling.
    :param eps: the finite difference step.
    :param floor: the floor of the denominator of the relative error.
    :returns: a :class:`GradientCheckReport`.
    """
    # pylint: disable=too-many-arguments,too-many-locals
    store.zero_grad()
    with Tape() as tape:
        loss = loss_fn()
    tape.backward(loss)
    analytic = {param.name: (param.grad if param.grad is not None
                             else np.zeros(param.shape))
                for param in store}

    rng = np.random.default_rng(seed)
    max_error = 0.0
    worst = None
    n_checked = 0
    for param in store:
        count = param.size
        if samples is None or samples >= count:
            indices = np.arange(count)
        else:
            indices = rng.choice(count, size=samples, replace=False)

        flat = param.value.reshape(-1)
        for index in indices:
            original = flat[index]
            flat[index] = original + eps
            plus = loss_fn().item()
            flat[index] = original - eps
            minus = loss_fn().item()
            flat[index] = original

            numeric = (plus - minus) / (2 * eps)
            error = relative_error(
                analytic[param.name].reshape(-1)[index], numeric, floor)
            n_checked += 1
            if error > max_error or worst is None:
                max_error = max(max_error, error)
                worst = (param.name, int(index))

    store.zero_grad()
    logger.debug("gradient check: %d coordinates, max relative error %.3g "
                 "at %s", n_checked, max_error, worst)
    return GradientCheckReport(max_error, n_checked, worst,
                               max_error <= tolerance)
