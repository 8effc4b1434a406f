# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.reenact` module provides the training objective of a
landmark-guided face reenactment network: the multi-scale adversarial loss,
the identity loss, the foreground mask loss and the boundary loss.

The image generator itself is out of the scope of this package: the losses
are functions of images, given as arrays (or
:class:`~lmsynth.autodiff.tensor.Tensor` objects) of shape ``(H, W, C)``
with values in ``[0, 1]``, and of injected callables:

- a discriminator maps an image to an array of scores;
- an embedding function maps an image to a ``d``-dimensional vector;
- a landmark function maps an image to a
  :class:`~lmsynth.landmarks.frame.LandmarkFrame` (or a ``(98, 2)`` array).

These callables should be deterministic, and thread-safe if the losses are
computed concurrently. The losses are computed with the operations of
:mod:`lmsynth.autodiff.ops`, so that they are differentiated when a tape is
active.
"""

from collections import OrderedDict
from dataclasses import asdict, dataclass

import numpy as np

from lmsynth.autodiff import Tensor, ops
from lmsynth.errors import (ConfigError, OddDimension, ShapeMismatch,
                            ZeroEmbedding)
from lmsynth.landmarks.frame import as_coords
from lmsynth.landmarks.topology import WFLW98

CONTOUR = WFLW98.indices("contour")
"""The indices of the face contour landmarks, the default subset of
:func:`boundary_loss`."""

REENACT_TERMS = ("adversarial", "identity", "mask", "boundary")


def _image(image):
    image = ops.as_tensor(image)
    if image.value.ndim == 2:
        shape = image.shape
        image = ops.primitive("expand_channels",
                              image.value[:, :, np.newaxis], (image,),
                              lambda g: (g.reshape(shape),))
    if image.value.ndim != 3:
        raise ShapeMismatch("an image should have the shape (H, W, C), got "
                            "{}".format(image.shape))
    return image


def _check_pair(name, a, b):
    if a.shape != b.shape:
        raise ShapeMismatch("{}: the images should have the same shape, got "
                            "{} and {}".format(name, a.shape, b.shape))


def downsample_half(image):
    """Halves the resolution of an image by averaging its 2x2 blocks.

    :param image: an array or a tensor of shape ``(H, W, C)`` (or
        ``(H, W)``).
    :returns: a tensor of shape ``(H / 2, W / 2, C)``.
    :raises OddDimension: if ``H`` or ``W`` is odd.
    """
    image = _image(image)
    height, width, channels = image.shape
    if height % 2 or width % 2:
        raise OddDimension("cannot downsample an image of size {}x{}".format(
            height, width))

    value = image.value.reshape(height // 2, 2, width // 2, 2, channels)
    return ops.primitive(
        "downsample_half", value.mean(axis=(1, 3)), (image,),
        lambda g: (np.repeat(np.repeat(g, 2, axis=0), 2, axis=1) / 4,))


def adv_multiscale_loss(fake, real, discriminators):
    """The least-squares adversarial loss summed over several scales. The
    discriminator ``i`` (starting at 0) scores the images downsampled ``i``
    times by :func:`downsample_half`.

    At each scale, the discriminator term is ``0.5 * [(D(real) - 1)^2 +
    D(fake)^2]`` and the generator term is ``0.5 * (D(fake) - 1)^2``, both
    averaged over the outputs of the discriminator. Detaching ``fake`` for
    the discriminator step is left to the caller.

    :param fake: the generated image.
    :param real: the real image.
    :param discriminators: the list of discriminators, finest scale first.
    :returns: a tuple ``(d_loss, g_loss)`` of scalar tensors.
    :raises ShapeMismatch: if the images do not have the same shape.
    :raises ConfigError: if ``discriminators`` is empty.
    """
    fake = _image(fake)
    real = _image(real)
    _check_pair("adv_multiscale_loss", fake, real)
    if not discriminators:
        raise ConfigError("at least one discriminator is needed")

    d_loss = Tensor(0.0)
    g_loss = Tensor(0.0)
    for i, discriminator in enumerate(discriminators):
        if i > 0:
            fake = downsample_half(fake)
            real = downsample_half(real)
        real_scores = ops.as_tensor(discriminator(real))
        fake_scores = ops.as_tensor(discriminator(fake))

        d_term = ops.add(ops.mse(real_scores, 1.0), ops.mse(fake_scores, 0.0))
        d_loss = ops.add(d_loss, ops.mul(d_term, 0.5))
        g_loss = ops.add(g_loss, ops.mul(ops.mse(fake_scores, 1.0), 0.5))
    return d_loss, g_loss


def _embedding(embed_fn, image):
    embedding = ops.as_tensor(embed_fn(image))
    if embedding.value.ndim != 1:
        raise ShapeMismatch("an embedding should be a vector, got shape "
                            "{}".format(embedding.shape))
    if np.linalg.norm(embedding.value) == 0:
        raise ZeroEmbedding("the embedding function returned a zero vector")
    return embedding


def identity_loss(generated, source, embed_fn):
    """The cosine distance between the embeddings of the generated image and
    of the source image, in ``[0, 2]``.

    :param generated: the generated image.
    :param source: the source image, whose identity should be preserved.
    :param embed_fn: the embedding function.
    :returns: a scalar tensor.
    :raises ZeroEmbedding: if an embedding is a zero vector.
    """
    return ops.cosine_distance(_embedding(embed_fn, generated),
                               _embedding(embed_fn, source))


def mask_loss(generated, real, mask):
    """The mean absolute difference of the masked images, over all the pixels
    and channels.

    :param generated: the generated image, of shape ``(H, W, C)``.
    :param real: the real image, of shape ``(H, W, C)``.
    :param mask: the foreground mask, of shape ``(H, W)``, with values in
        ``[0, 1]``.
    :returns: a scalar tensor.
    :raises ShapeMismatch: if the shapes do not match.
    """
    generated = _image(generated)
    real = _image(real)
    _check_pair("mask_loss", generated, real)
    mask = np.asarray(mask, dtype=np.float64)
    if mask.shape != generated.shape[:2]:
        raise ShapeMismatch("mask_loss: a mask of shape {} cannot be applied "
                            "to images of shape {}".format(mask.shape,
                                                           generated.shape))

    mask = mask[:, :, np.newaxis]
    return ops.l1_mean(ops.mul(generated, mask), ops.mul(real, mask))


def _landmarks(landmark_fn, image, subset):
    landmarks = landmark_fn(image)
    if isinstance(landmarks, Tensor):
        return ops.slice(landmarks, subset)
    return Tensor(as_coords(landmarks)[subset])


def boundary_loss(generated, real, landmark_fn, subset=CONTOUR):
    """The mean smooth L1 distance between the coordinates of the landmarks
    detected on the generated image and on the real image.

    :param generated: the generated image.
    :param real: the real image.
    :param landmark_fn: the landmark function.
    :param subset: the indices of the compared landmarks (the face contour
        by default); ``None`` compares all of them.
    :returns: a scalar tensor.
    """
    if subset is None:
        subset = np.arange(WFLW98.n_points)
    subset = np.asarray(subset, dtype=int)
    return ops.smooth_l1(_landmarks(landmark_fn, generated, subset),
                         _landmarks(landmark_fn, real, subset))


@dataclass
class ReenactLossWeights(object):
    """The weights of the terms of the reenactment objective.

    :raises ConfigError: if a weight is negative.
    """
    adversarial: float = 1.0
    identity: float = 1.0
    mask: float = 1.0
    boundary: float = 1.0

    def __post_init__(self):
        for name, weight in self.to_dict().items():
            if weight < 0:
                raise ConfigError("the weight of the {} loss should be "
                                  "non-negative, got {}".format(name, weight))

    def to_dict(self):
        """Returns the weights as a dict."""
        return asdict(self)


LOSS_SETTINGS = OrderedDict([
    ("vanilla", ReenactLossWeights(1.0, 0.0, 0.0, 0.0)),
    ("+identity", ReenactLossWeights(1.0, 1.0, 0.0, 0.0)),
    ("+mask", ReenactLossWeights(1.0, 1.0, 1.0, 0.0)),
    ("+boundary", ReenactLossWeights(1.0, 1.0, 1.0, 1.0)),
])
"""The loss settings compared when ablating the objective, each one adding
a term to the previous one."""


def total_reenact_loss(terms, weights=None):
    """The weighted sum of the reenactment loss terms.

    :param terms: a mapping from term names (``"adversarial"``,
        ``"identity"``, ``"mask"``, ``"boundary"``) to scalar tensors or
        floats. Missing terms are skipped.
    :param weights: a :class:`ReenactLossWeights`, or the name of one of the
        :data:`LOSS_SETTINGS` (all the weights are 1 if ``None``).
    :returns: a scalar tensor.
    :raises ConfigError: if a term or a setting is unknown.
    """
    if weights is None:
        weights = ReenactLossWeights()
    elif isinstance(weights, str):
        try:
            weights = LOSS_SETTINGS[weights]
        except KeyError:
            raise ConfigError('unknown loss setting "{}"'.format(weights))

    unknown = set(terms) - set(REENACT_TERMS)
    if unknown:
        raise ConfigError("unknown loss terms: {}".format(
            ", ".join(sorted(unknown))))

    total = Tensor(0.0)
    for name in REENACT_TERMS:
        if name in terms:
            total = ops.add(total, ops.mul(terms[name], getattr(weights,
                                                                name)))
    return total
