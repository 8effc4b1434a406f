# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.curriculum` module implements the pose-aware data
augmentation: per-identity head pose statistics, an epoch-indexed threshold,
and the sampling of training pairs among the identities whose pose range
passes the threshold.

Two modes are provided. In the ``"at-most"`` mode (the default), an identity
is eligible when its pose range is at most the threshold, so that the
training starts with the identities whose head moves little and admits the
others as the threshold grows. In the ``"at-least"`` mode, an identity is
eligible when its pose range is at least the threshold.
"""

from collections import namedtuple
from dataclasses import asdict, dataclass
import logging

import numpy as np

from lmsynth.errors import (ConfigError, EmptyIdentity, NoEligibleIdentity,
                            OutOfRange)
from lmsynth.landmarks.frame import LandmarkFrame
from lmsynth.landmarks.pose import estimate_pose

logger = logging.getLogger(__name__)

MODES = ("at-most", "at-least")


class IdentityPoseStats(namedtuple("IdentityPoseStats",
                                   ["identity", "yaw_range", "pitch_range"])):
    """The pose variation of an identity: the difference between the largest
    and the smallest yaw (and pitch) over its frames, in degrees.

    :raises OutOfRange: if a range is negative.
    """
    __slots__ = ()

    def __new__(cls, identity, yaw_range, pitch_range):
        if yaw_range < 0 or pitch_range < 0:
            raise OutOfRange("the pose ranges should be non-negative, got "
                             "({}, {})".format(yaw_range, pitch_range))
        return super(IdentityPoseStats, cls).__new__(
            cls, int(identity), float(yaw_range), float(pitch_range))

    @property
    def max_range(self):
        """The largest of the yaw and pitch ranges."""
        return max(self.yaw_range, self.pitch_range)


FramePair = namedtuple("FramePair", ["source", "target", "identity"])
FramePair.__doc__ = """A source and a target frame of the same sequence.

:param source: a :class:`~lmsynth.landmarks.frame.LandmarkFrame`.
:param target: a :class:`~lmsynth.landmarks.frame.LandmarkFrame`.
:param identity: the identity label of both frames.
"""


@dataclass
class CurriculumSchedule(object):
    """The threshold schedule of the pose-aware sampling.

    :param initial_threshold: the threshold of the first epoch, in degrees.
    :param increment: the increase of the threshold at each step, in degrees.
    :param epochs_per_step: the number of epochs between two increases.
    :param mode: ``"at-most"`` or ``"at-least"``.
    :raises ConfigError: if a parameter is out of range.
    """
    initial_threshold: float = 10.0
    increment: float = 5.0
    epochs_per_step: int = 10
    mode: str = "at-most"

    def __post_init__(self):
        if self.epochs_per_step < 1:
            raise ConfigError("curriculum.epochs_per_step should be at least "
                              "1, got {}".format(self.epochs_per_step))
        if self.increment < 0:
            raise ConfigError("curriculum.increment should be non-negative, "
                              "got {}".format(self.increment))
        if self.mode not in MODES:
            raise ConfigError('curriculum.mode should be one of {}, got '
                              '"{}"'.format(", ".join(MODES), self.mode))

    def to_dict(self):
        """Returns the schedule as a dict."""
        return asdict(self)


def compute_pose_stats(dataset, template=None, use_labels=True):
    """Computes the pose range of every identity of a dataset.

    :param dataset: a :class:`~lmsynth.landmarks.dataset.LandmarkDataset`.
    :param template: the template used by
        :func:`~lmsynth.landmarks.pose.estimate_pose` for the frames without
        a pose label.
    :param use_labels: ``False`` to estimate the pose of every frame, even
        when the records carry poses.
    :returns: a list of :class:`IdentityPoseStats`, sorted by identity.
    :raises EmptyIdentity: if an identity has no frame.
    :raises DegenerateFrame: if the pose of a degenerate frame has to be
        estimated.
    """
    stats = []
    for identity in dataset.identities:
        poses = []
        for record in dataset.records_of(identity):
            if use_labels and record.poses is not None:
                poses.append(record.poses[:, :2])
            else:
                poses.append(np.array([
                    estimate_pose(LandmarkFrame(frame), template)[:2]
                    for frame in record.frames]).reshape(-1, 2))
        poses = np.concatenate(poses) if poses else np.zeros((0, 2))
        if poses.shape[0] == 0:
            raise EmptyIdentity("identity {} has no frame".format(identity))

        ranges = poses.max(axis=0) - poses.min(axis=0)
        stats.append(IdentityPoseStats(identity, ranges[0], ranges[1]))
    return stats


def threshold_at(epoch, schedule):
    """Returns the threshold of an epoch: ``initial_threshold + increment *
    floor(epoch / epochs_per_step)``.

    :param epoch: the epoch index, starting at 0.
    :type epoch: int
    :param schedule: a :class:`CurriculumSchedule`.
    :raises OutOfRange: if ``epoch`` is negative.
    """
    if epoch < 0:
        raise OutOfRange("the epoch should be non-negative, got {}".format(
            epoch))
    return (schedule.initial_threshold +
            schedule.increment * (epoch // schedule.epochs_per_step))


def eligible(stats, threshold, mode="at-most"):
    """Returns ``True`` if an identity passes a threshold.

    :param stats: an :class:`IdentityPoseStats`.
    :param threshold: the threshold, in degrees.
    :param mode: ``"at-most"`` (the largest of the yaw and pitch ranges is at
        most the threshold) or ``"at-least"`` (it is at least the threshold).
    :raises ConfigError: if the mode is unknown.
    """
    if mode == "at-most":
        return stats.max_range <= threshold
    if mode == "at-least":
        return stats.max_range >= threshold
    raise ConfigError('unknown mode "{}"'.format(mode))


def eligible_identities(stats, epoch, schedule):
    """Returns the sorted labels of the identities eligible at an epoch.

    :param stats: a list of :class:`IdentityPoseStats`.
    :param epoch: the epoch index.
    :param schedule: a :class:`CurriculumSchedule`.
    """
    threshold = threshold_at(epoch, schedule)
    return sorted(s.identity for s in stats
                  if eligible(s, threshold, schedule.mode))


def sample_pairs(dataset, epoch, schedule, seed, stats=None,
                 pairs_per_identity=10):
    """Samples source/target frame pairs among the identities eligible at an
    epoch. The two frames of a pair come from the same sequence.

    :param dataset: a :class:`~lmsynth.landmarks.dataset.LandmarkDataset`.
    :param epoch: the epoch index.
    :param schedule: a :class:`CurriculumSchedule`.
    :param seed: the seed of the random generator; the pairs depend only on
        ``seed`` and ``epoch``.
    :param stats: the pose statistics of the dataset (computed with
        :func:`compute_pose_stats` if ``None``).
    :param pairs_per_identity: the number of pairs per eligible identity.
    :returns: a list of :class:`FramePair`, grouped by identity.
    :raises NoEligibleIdentity: if no identity is eligible.
    """
    # pylint: disable=too-many-arguments
    if stats is None:
        stats = compute_pose_stats(dataset)
    identities = eligible_identities(stats, epoch, schedule)
    if not identities:
        raise NoEligibleIdentity(
            "no identity is eligible at epoch {} (threshold {}, mode "
            "{})".format(epoch, threshold_at(epoch, schedule), schedule.mode))

    rng = np.random.default_rng(np.random.SeedSequence([seed, epoch]))
    pairs = []
    for identity in identities:
        records = dataset.records_of(identity)
        for _ in range(pairs_per_identity):
            record = records[rng.integers(len(records))]
            if len(record) > 1:
                source, target = rng.choice(len(record), size=2,
                                            replace=False)
            else:
                source = target = 0
            pairs.append(FramePair(LandmarkFrame(record.frames[source]),
                                   LandmarkFrame(record.frames[target]),
                                   identity))

    logger.debug("epoch %d: %d eligible identities, %d pairs", epoch,
                 len(identities), len(pairs))
    return pairs


def eligibility_table(stats, schedule, epochs):
    """Returns the eligible identities of each epoch.

    :param stats: a list of :class:`IdentityPoseStats`.
    :param schedule: a :class:`CurriculumSchedule`.
    :param epochs: the number of epochs.
    :returns: a list of dicts with the keys ``epoch``, ``threshold``,
        ``eligible`` (the number of eligible identities) and ``identities``
        (their labels, separated by spaces).
    """
    rows = []
    for epoch in range(epochs):
        identities = eligible_identities(stats, epoch, schedule)
        rows.append({"epoch": epoch,
                     "threshold": threshold_at(epoch, schedule),
                     "eligible": len(identities),
                     "identities": " ".join(str(i) for i in identities)})
    return rows
