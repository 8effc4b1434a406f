# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.metrics.embedder` module provides the landmark identity
embedder used to measure identity preservation: a multi-layer perceptron
trained to classify the identity of aligned frames, whose normalized last
hidden layer is the identity embedding of a frame.
"""

from dataclasses import asdict, dataclass
import logging

import numpy as np

from lmsynth.autodiff import MLP, ParamStore, Tape, adam_step, ops
from lmsynth.autodiff.layers import INITS
from lmsynth.autodiff.tensor import no_tape
from lmsynth.errors import (ConfigError, DatasetTooSmall, FormatError,
                            UnknownClass, ZeroEmbedding)
from lmsynth.landmarks.frame import FLAT_LENGTH, as_coords
from lmsynth.landmarks.geometry import align_frame
from lmsynth.synth.template import canonical_frame

logger = logging.getLogger(__name__)

MANIFEST_FORMAT = "lmsynth-embedder"
MANIFEST_VERSION = 1


@dataclass
class EmbedderConfig(object):
    """The hyperparameters of an :class:`EmbeddingModel` and of its training.

    :param hidden_sizes: the sizes of the hidden layers; the embedding is the
        last one.
    :param epochs: the number of training epochs.
    :param batch_size: the number of frames per batch.
    :param lr: the learning rate of Adam.
    :param seed: the seed of the initialization and of the shuffling.
    :param holdout_seqs: the number of sequences per identity held out to
        measure the accuracy (0 to measure it on the training frames).
    :param init: the initialization of the weights.
    :raises ConfigError: if a parameter is out of range.
    """
    hidden_sizes: tuple = (128, 64)
    epochs: int = 30
    batch_size: int = 64
    lr: float = 1e-3
    seed: int = 0
    holdout_seqs: int = 2
    init: str = "glorot"

    def __post_init__(self):
        self.hidden_sizes = tuple(int(size) for size in self.hidden_sizes)
        if not self.hidden_sizes or min(self.hidden_sizes) < 1:
            raise ConfigError("embedder.hidden_sizes should be a non-empty "
                              "list of positive sizes, got {}".format(
                                  list(self.hidden_sizes)))
        if self.epochs < 0 or self.batch_size < 1 or self.lr < 0 or \
                self.holdout_seqs < 0:
            raise ConfigError("invalid embedder training parameters: "
                              "epochs={}, batch_size={}, lr={}, "
                              "holdout_seqs={}".format(
                                  self.epochs, self.batch_size, self.lr,
                                  self.holdout_seqs))
        if self.init not in INITS or self.init == "zeros":
            raise ConfigError('embedder.init should be "glorot" or "normal", '
                              'got "{}"'.format(self.init))

    def to_dict(self):
        """Returns the configuration as a dict."""
        values = asdict(self)
        values["hidden_sizes"] = list(self.hidden_sizes)
        return values


def aligned_features(frames, reference=None):
    """Aligns frames onto a reference frame and flattens them.

    :param frames: a :class:`~lmsynth.landmarks.frame.LandmarkFrame`, an
        array of shape ``(98, 2)`` or an array of shape ``(N, 98, 2)``.
    :param reference: the reference frame (the canonical frame of the
        default template if ``None``).
    :returns: an array of shape ``(N, 196)``.
    :raises DegenerateFrame: if a frame is degenerate.
    """
    if reference is None:
        reference = canonical_frame()
    if hasattr(frames, "coords"):
        frames = frames.coords
    frames = np.asarray(frames, dtype=np.float64)
    if frames.ndim == 2:
        frames = frames[np.newaxis]
    return np.array([as_coords(align_frame(frame, reference)).reshape(-1)
                     for frame in frames]).reshape(-1, FLAT_LENGTH)


class EmbeddingModel(object):
    """An identity classifier over aligned frames, and its embedding.

    :param config: the hyperparameters.
    :type config: :class:`EmbedderConfig`
    :param classes: the identity labels of the training set.
    :type classes: list of int
    """
    def __init__(self, config, classes):
        self.config = config
        self.classes = [int(label) for label in classes]
        self._class_index = {label: i for i, label in enumerate(self.classes)}
        self.heldout_accuracy = None

        rng = np.random.default_rng(config.seed)
        self.store = ParamStore()
        self.network = MLP(self.store, "embedder",
                           [FLAT_LENGTH] + list(config.hidden_sizes) +
                           [len(self.classes)], rng, config.init)

    def __repr__(self):
        return "EmbeddingModel(hidden_sizes={}, classes={})".format(
            list(self.config.hidden_sizes), len(self.classes))

    @property
    def dimension(self):
        """The dimension of the embeddings."""
        return self.config.hidden_sizes[-1]

    def class_indices(self, labels):
        """Maps identity labels to class indices.

        :raises UnknownClass: if a label is not a training identity.
        """
        try:
            return np.array([self._class_index[int(label)]
                             for label in np.atleast_1d(labels)], dtype=int)
        except KeyError as error:
            raise UnknownClass("identity {} is not a class of the "
                               "embedder".format(error.args[0]))

    def embed(self, frames):
        """Returns the unit-norm identity embeddings of frames.

        :param frames: a :class:`~lmsynth.landmarks.frame.LandmarkFrame`, an
            array of shape ``(98, 2)`` or an array of shape ``(N, 98, 2)``.
        :returns: an array of shape ``(d,)`` for a single frame, ``(N, d)``
            otherwise.
        :raises ZeroEmbedding: if the embedding of a frame is zero.
        """
        single = hasattr(frames, "coords") or np.ndim(frames) == 2
        with no_tape():
            features = self.network.features(aligned_features(frames)).value
        norms = np.linalg.norm(features, axis=1, keepdims=True)
        if np.any(norms == 0):
            raise ZeroEmbedding("a frame has a zero embedding")
        embeddings = features / norms
        return embeddings[0] if single else embeddings

    def predict(self, frames):
        """Returns the predicted identity labels of frames of shape
        ``(N, 98, 2)``."""
        with no_tape():
            logits = self.network(aligned_features(frames)).value
        return np.array(self.classes)[np.argmax(logits, axis=1)]

    def accuracy(self, dataset):
        """Returns the classification accuracy over the frames of a
        dataset."""
        frames, labels = dataset.all_frames()
        if len(labels) == 0:
            raise DatasetTooSmall("cannot measure the accuracy on an empty "
                                  "dataset")
        return float(np.mean(self.predict(frames) == labels))

    def manifest(self):
        """Returns the JSON manifest of the model."""
        return {"format": MANIFEST_FORMAT, "version": MANIFEST_VERSION,
                "config": self.config.to_dict(), "classes": self.classes,
                "heldout_accuracy": self.heldout_accuracy}

    def save(self, path):
        """Writes the parameters to ``path`` and the manifest to
        ``path + ".json"``."""
        # pylint: disable=cyclic-import
        from lmsynth.io.checkpoint import write_checkpoint
        write_checkpoint(path, self.store.snapshot(), self.manifest())
        logger.info("saved %r to %s", self, path)

    @classmethod
    def load(cls, path):
        """Reads a model written by :meth:`save`.

        :raises FormatError: if the files are not a valid embedder
            checkpoint.
        """
        # pylint: disable=cyclic-import
        from lmsynth.io.checkpoint import read_checkpoint
        values, manifest = read_checkpoint(path)
        if manifest.get("format") != MANIFEST_FORMAT or \
                manifest.get("version") != MANIFEST_VERSION:
            raise FormatError("{} is not an embedder checkpoint".format(path))

        model = cls(EmbedderConfig(**manifest["config"]), manifest["classes"])
        try:
            model.store.load(values)
        except KeyError as error:
            raise FormatError("{}: missing tensor {}".format(path,
                                                             error.args[0]))
        model.heldout_accuracy = manifest.get("heldout_accuracy")
        return model


def train_id_embedder(dataset, config=None):
    """Trains an identity embedder with the softmax cross-entropy of its
    identity predictions.

    The last ``config.holdout_seqs`` sequences of every identity are held
    out, and the accuracy on them is stored in the ``heldout_accuracy``
    attribute of the returned model.

    :param dataset: a :class:`~lmsynth.landmarks.dataset.LandmarkDataset`.
    :param config: an :class:`EmbedderConfig` (the default one if ``None``).
    :returns: an :class:`EmbeddingModel`.
    :raises DatasetTooSmall: if the dataset has fewer than 2 identities, or
        not enough sequences to hold some out.
    """
    if config is None:
        config = EmbedderConfig()
    if len(dataset.identities) < 2:
        raise DatasetTooSmall("the embedder needs at least 2 identities, got "
                              "{}".format(len(dataset.identities)))

    if config.holdout_seqs > 0:
        train, heldout = dataset.split(config.holdout_seqs)
    else:
        train = heldout = dataset

    model = EmbeddingModel(config, dataset.identities)
    frames, labels = train.all_frames()
    features = aligned_features(frames)
    targets = model.class_indices(labels)
    rng = np.random.default_rng(
        np.random.SeedSequence(config.seed).spawn(2)[1])

    logger.info("training %r on %d frames", model, len(targets))
    for epoch in range(config.epochs):
        order = rng.permutation(len(targets))
        total = 0.0
        for begin in range(0, len(order), config.batch_size):
            batch = order[begin:begin + config.batch_size]
            model.store.zero_grad()
            with Tape() as tape:
                loss = ops.softmax_cross_entropy(
                    model.network(features[batch]), targets[batch])
                tape.backward(loss)
            adam_step(model.store, config.lr, beta1=0.9, beta2=0.999)
            total += loss.item() * len(batch)
        logger.debug("embedder epoch %d/%d: loss %.4f", epoch + 1,
                     config.epochs, total / len(targets))

    model.heldout_accuracy = model.accuracy(heldout)
    logger.info("embedder held-out accuracy: %.4f", model.heldout_accuracy)
    return model
