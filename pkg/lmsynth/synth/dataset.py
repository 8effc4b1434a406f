# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.synth.dataset` module generates labeled synthetic landmark
datasets.

Each identity has fixed :class:`~lmsynth.synth.face.IdentityParams` and a
maximum pose amplitude. Each sequence follows smooth random expression and
pose trajectories, obtained by cubic interpolation between a few random
keyframes.
"""

from collections import OrderedDict
from dataclasses import asdict, dataclass
import logging

import numpy as np
from scipy.interpolate import CubicSpline

from lmsynth.errors import ConfigError
from lmsynth.landmarks.dataset import LandmarkDataset, SequenceRecord
from lmsynth.landmarks.pose import MAX_ANGLE, PoseAngles
from .face import ExpressionParams, IdentityParams, synthesize_frame
from .template import default_template

logger = logging.getLogger(__name__)


@dataclass
class DatasetConfig(object):
    """The parameters of a synthetic dataset.

    :param n_ids: the number of identities.
    :param seqs_per_id: the number of sequences per identity.
    :param frames_per_seq: the number of frames per sequence.
    :param seed: the seed of the random generator.
    :param min_pose_amplitude: the lower bound of the per-identity maximum
        yaw, in degrees.
    :param max_pose_amplitude: the upper bound of the per-identity maximum
        yaw, in degrees. The maximum pitch of an identity is half its maximum
        yaw.
    :param roll_amplitude: the maximum roll, in degrees.
    :param keyframes: the number of keyframes of the trajectories of a
        sequence.
    :raises ConfigError: if a parameter is out of range.
    """
    # pylint: disable=too-many-instance-attributes
    n_ids: int = 50
    seqs_per_id: int = 20
    frames_per_seq: int = 8
    seed: int = 0
    min_pose_amplitude: float = 5.0
    max_pose_amplitude: float = 45.0
    roll_amplitude: float = 5.0
    keyframes: int = 3

    def __post_init__(self):
        for name in ("n_ids", "seqs_per_id", "frames_per_seq"):
            if getattr(self, name) < 1:
                raise ConfigError("dataset.{} should be at least 1, got "
                                  "{}".format(name, getattr(self, name)))
        if self.keyframes < 2:
            raise ConfigError("dataset.keyframes should be at least 2, got "
                              "{}".format(self.keyframes))
        if not (0 <= self.min_pose_amplitude <= self.max_pose_amplitude <=
                MAX_ANGLE):
            raise ConfigError(
                "the pose amplitudes should satisfy 0 <= min <= max <= {}, "
                "got [{}, {}]".format(MAX_ANGLE, self.min_pose_amplitude,
                                      self.max_pose_amplitude))
        if not 0 <= self.roll_amplitude <= MAX_ANGLE:
            raise ConfigError("dataset.roll_amplitude should be in [0, {}], "
                              "got {}".format(MAX_ANGLE, self.roll_amplitude))

    def to_dict(self):
        """Returns the configuration as a dict."""
        return asdict(self)

    def generate(self, template=None):
        """Generates the dataset described by this configuration (see
        :func:`generate_dataset`)."""
        return generate_dataset(
            self.n_ids, self.seqs_per_id, self.frames_per_seq, self.seed,
            pose_amplitude=(self.min_pose_amplitude, self.max_pose_amplitude),
            roll_amplitude=self.roll_amplitude, keyframes=self.keyframes,
            template=template)


def _trajectory(rng, n_frames, n_keyframes, low, high):
    """A smooth random trajectory of shape ``(n_frames, len(low))`` whose
    values stay in ``[low, high]``."""
    low = np.asarray(low, dtype=np.float64)
    high = np.asarray(high, dtype=np.float64)
    keys = rng.uniform(low, high, size=(n_keyframes, len(low)))
    if n_frames == 1:
        return keys[:1]

    knots = np.linspace(0, n_frames - 1, n_keyframes)
    spline = CubicSpline(knots, keys, axis=0)
    return np.clip(spline(np.arange(n_frames)), low, high)


def _sequence(rng, identity, amplitude, n_frames, roll_amplitude, n_keyframes,
              template):
    # pylint: disable=too-many-arguments,too-many-locals
    poses = _trajectory(rng, n_frames, n_keyframes,
                        (-amplitude, -amplitude / 2, -roll_amplitude),
                        (amplitude, amplitude / 2, roll_amplitude))

    names = ExpressionParams.names()
    ranges = [ExpressionParams.range_of(name) for name in names]
    expressions = _trajectory(rng, n_frames, n_keyframes,
                              [r[0] for r in ranges], [r[1] for r in ranges])

    frames = []
    for pose, values in zip(poses, expressions):
        frame = synthesize_frame(identity, ExpressionParams.from_array(values),
                                 PoseAngles(*pose), template)
        frames.append(frame.coords)

    attrs = {"expression": [OrderedDict(zip(names, values.tolist()))
                            for values in expressions]}
    return np.stack(frames), poses, attrs


def generate_dataset(n_ids, seqs_per_id, frames_per_seq, seed,
                     pose_amplitude=(5.0, 45.0), roll_amplitude=5.0,
                     keyframes=3, template=None):
    """Generates a synthetic landmark dataset.

    Every identity gets a random :class:`~lmsynth.synth.face.IdentityParams`
    (each coefficient uniform in ``[-1, 1]``) and a maximum yaw uniform in
    ``pose_amplitude`` (the maximum pitch is half of it). The random stream
    of each identity is derived from ``seed`` and the identity index, so the
    output does not depend on the order of generation.

    Each record carries the pose of its frames and, in its ``attrs``, the
    identity coefficients (``"identity"``), the maximum yaw of the identity
    (``"max_yaw"``) and the expression coefficients of each frame
    (``"expression"``).

    :param n_ids: the number of identities.
    :type n_ids: int
    :param seqs_per_id: the number of sequences per identity.
    :type seqs_per_id: int
    :param frames_per_seq: the number of frames per sequence.
    :type frames_per_seq: int
    :param seed: the seed of the random generator.
    :type seed: int
    :param pose_amplitude: the range ``(min, max)`` of the maximum yaw of an
        identity, in degrees.
    :param roll_amplitude: the maximum roll, in degrees.
    :param keyframes: the number of keyframes of each trajectory.
    :param template: a :class:`~lmsynth.synth.template.FaceTemplate3D` (the
        default template if ``None``).
    :returns: a :class:`~lmsynth.landmarks.dataset.LandmarkDataset`.
    :raises ConfigError: if a count is smaller than 1.
    """
    # pylint: disable=too-many-arguments,too-many-locals
    config = DatasetConfig(n_ids, seqs_per_id, frames_per_seq, seed,
                           pose_amplitude[0], pose_amplitude[1],
                           roll_amplitude, keyframes)
    if template is None:
        template = default_template()

    records = []
    children = np.random.SeedSequence(config.seed).spawn(config.n_ids)
    for identity_label, child in enumerate(children):
        rng = np.random.default_rng(child)
        identity = IdentityParams.from_array(
            rng.uniform(-1, 1, len(IdentityParams.names())))
        amplitude = rng.uniform(config.min_pose_amplitude,
                                config.max_pose_amplitude)

        for seq in range(config.seqs_per_id):
            frames, poses, attrs = _sequence(
                rng, identity, amplitude, config.frames_per_seq,
                config.roll_amplitude, config.keyframes, template)
            attrs["identity"] = identity.to_dict()
            attrs["max_yaw"] = amplitude
            records.append(SequenceRecord(identity_label, seq, frames, poses,
                                          attrs))

        logger.debug("identity %d: max yaw %.2f, %r", identity_label,
                     amplitude, identity)

    dataset = LandmarkDataset(records)
    logger.info("generated %d identities, %d sequences, %d frames",
                config.n_ids, len(records), dataset.n_frames)
    return dataset


def identity_table(dataset):
    """Returns the mapping from identity labels to
    :class:`~lmsynth.synth.face.IdentityParams` of a synthetic dataset, read
    from the ``"identity"`` attribute of its records.

    :param dataset: a :class:`~lmsynth.landmarks.dataset.LandmarkDataset`.
    :returns: an :class:`collections.OrderedDict`, sorted by label. Identities
        whose records carry no identity attribute are omitted.
    """
    table = OrderedDict()
    for identity in dataset.identities:
        for record in dataset.records_of(identity):
            if "identity" in record.attrs:
                table[identity] = IdentityParams(record.attrs["identity"])
                break
    return table
