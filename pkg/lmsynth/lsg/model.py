# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.lsg.model` module provides the landmark sequence generator
(LSG): a bidirectional LSTM reads the linear upsampling of two endpoint
frames and predicts, for each of the ``K`` output frames, a shift of every
coordinate which is added to the upsampled frame.

The model also holds the networks used only during training: the frame
realness discriminator ``d1``, the same-identity pair discriminator ``d2``,
and the two identity support classifiers.
"""

from collections import namedtuple
import logging

import numpy as np

from lmsynth.autodiff import BiLSTM, Dense, MLP, ParamStore, Tensor, ops
from lmsynth.autodiff.tensor import no_tape
from lmsynth.errors import FormatError, UnknownClass
from lmsynth.landmarks.frame import FLAT_LENGTH, LandmarkSequence, flatten
from lmsynth.landmarks.interpolate import interpolation_weights, lerp
from .config import LsgConfig

logger = logging.getLogger(__name__)

MANIFEST_FORMAT = "lmsynth-lsg"
MANIFEST_VERSION = 1

LsgOutput = namedtuple("LsgOutput", ["frames", "upsampled", "shifts",
                                     "hidden", "final"])
LsgOutput.__doc__ = """The result of :meth:`LsgModel.forward`.

:param frames: the ``K`` generated frames, tensors of shape ``(B, 196)``.
:param upsampled: the ``K`` linearly upsampled frames, arrays of shape
    ``(B, 196)``.
:param shifts: the ``K`` shifts predicted by the shift head.
:param hidden: the ``K`` per-step hidden states of the Bi-LSTM.
:param final: the final hidden state of the Bi-LSTM, of shape ``(B, 2H)``.
"""


class LsgModel(object):
    """The landmark sequence generator and its training networks.

    :param config: the hyperparameters.
    :type config: :class:`~lmsynth.lsg.config.LsgConfig`
    :param classes: the identity labels of the training set, which define the
        classes of the support classifiers.
    :type classes: list of int
    """
    def __init__(self, config, classes):
        self.config = config
        self.classes = [int(label) for label in classes]
        self._class_index = {label: i for i, label in enumerate(self.classes)}

        rng = np.random.default_rng(config.seed)
        size = config.hidden_size
        n_classes = len(self.classes)

        self.generator = ParamStore()
        self.encoder = BiLSTM(self.generator, "encoder", FLAT_LENGTH, size,
                              rng, config.forget_bias, config.init)
        self.shift_head = Dense(self.generator, "shift_head", 2 * size,
                                FLAT_LENGTH, rng, init="zeros")
        self.support_hidden = MLP(
            self.generator, "support_hidden",
            [2 * size, config.support_hidden, n_classes], rng, config.init)
        self.support_output = MLP(
            self.generator, "support_output",
            [FLAT_LENGTH, config.support_hidden, n_classes], rng, config.init)

        self.discriminator = ParamStore()
        self.d1 = MLP(self.discriminator, "d1",
                      [FLAT_LENGTH, config.disc_hidden, 1], rng, config.init)
        self.d2 = MLP(self.discriminator, "d2",
                      [2 * FLAT_LENGTH, config.disc_hidden, 1], rng,
                      config.init)

    def __repr__(self):
        return "LsgModel(K={}, hidden_size={}, classes={})".format(
            self.config.K, self.config.hidden_size, len(self.classes))

    def class_indices(self, labels):
        """Maps identity labels to the class indices of the support
        classifiers.

        :raises UnknownClass: if a label is not a training identity.
        """
        try:
            return np.array([self._class_index[int(label)]
                             for label in np.atleast_1d(labels)], dtype=int)
        except KeyError as error:
            raise UnknownClass(
                "identity {} is not a class of the model".format(
                    error.args[0]))

    def forward(self, start, end, K=None):
        """Generates a batch of sequences.

        :param start: the first endpoints, an array of shape ``(B, 196)``.
        :param end: the last endpoints, an array of shape ``(B, 196)``.
        :param K: the number of output frames (``config.K`` if ``None``).
        :returns: an :class:`LsgOutput`.
        """
        if K is None:
            K = self.config.K
        start = np.atleast_2d(np.asarray(start, dtype=np.float64))
        end = np.atleast_2d(np.asarray(end, dtype=np.float64))

        upsampled = [lerp(start, end, t) for t in interpolation_weights(K)]
        hidden, final = self.encoder([Tensor(frame) for frame in upsampled])
        shifts = [self.shift_head(state) for state in hidden]
        frames = [ops.add(Tensor(frame), shift)
                  for frame, shift in zip(upsampled, shifts)]
        return LsgOutput(frames, upsampled, shifts, hidden, final)

    def parameters(self):
        """Returns the values of all the parameters, keyed by
        ``"generator/<name>"`` and ``"discriminator/<name>"``."""
        values = {}
        for prefix, store in (("generator", self.generator),
                              ("discriminator", self.discriminator)):
            for name, value in store.snapshot().items():
                values["{}/{}".format(prefix, name)] = value
        return values

    def manifest(self):
        """Returns the JSON manifest of the model."""
        return {"format": MANIFEST_FORMAT, "version": MANIFEST_VERSION,
                "config": self.config.to_dict(), "classes": self.classes}

    def save(self, path):
        """Writes the parameters to ``path`` in the checkpoint format, and the
        manifest to ``path + ".json"``."""
        # pylint: disable=cyclic-import
        from lmsynth.io.checkpoint import write_checkpoint
        write_checkpoint(path, self.parameters(), self.manifest())
        logger.info("saved %r to %s", self, path)

    @classmethod
    def load(cls, path):
        """Reads a model written by :meth:`save`.

        :raises FormatError: if the files are not a valid LSG checkpoint.
        """
        # pylint: disable=cyclic-import
        from lmsynth.io.checkpoint import read_checkpoint
        values, manifest = read_checkpoint(path)
        if manifest.get("format") != MANIFEST_FORMAT or \
                manifest.get("version") != MANIFEST_VERSION:
            raise FormatError("{} is not an LSG checkpoint (format {!r}, "
                              "version {!r})".format(path,
                                                     manifest.get("format"),
                                                     manifest.get("version")))

        model = cls(LsgConfig(**manifest["config"]), manifest["classes"])
        for prefix, store in (("generator", model.generator),
                              ("discriminator", model.discriminator)):
            try:
                store.load({name: values["{}/{}".format(prefix, name)]
                            for name in store.names()})
            except KeyError as error:
                raise FormatError("{}: missing tensor {}".format(
                    path, error.args[0]))
        return model


def lsg_forward(p_s1, p_sk, model, K=None):
    """Generates a sequence of ``K`` frames from two endpoint frames: the
    output is the linear upsampling of the endpoints plus the shifts
    predicted by the generator. The endpoints themselves are refined, not
    copied.

    :param p_s1: the first endpoint.
    :type p_s1: :class:`~lmsynth.landmarks.frame.LandmarkFrame`
    :param p_sk: the last endpoint.
    :type p_sk: :class:`~lmsynth.landmarks.frame.LandmarkFrame`
    :param model: an :class:`LsgModel`.
    :param K: the number of frames (``model.config.K`` if ``None``).
    :returns: a :class:`~lmsynth.landmarks.frame.LandmarkSequence`.
    """
    output = model.forward(flatten(p_s1)[np.newaxis],
                           flatten(p_sk)[np.newaxis], K)
    return LandmarkSequence([frame.value[0].reshape(-1, 2)
                             for frame in output.frames])


def synthesize(p_a, p_b, model, K=None):
    """Inference entry point of the generator: :func:`lsg_forward` computed
    without recording anything on the active tape.

    :returns: a :class:`~lmsynth.landmarks.frame.LandmarkSequence`.
    """
    with no_tape():
        return lsg_forward(p_a, p_b, model, K)
