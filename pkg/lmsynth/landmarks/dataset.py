# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.landmarks.dataset` module provides the in-memory form of a
landmark record file: a :class:`LandmarkDataset` is a list of
:class:`SequenceRecord`, each holding the frames of one sequence of one
identity.
"""

from collections import OrderedDict

import numpy as np

from lmsynth.errors import DatasetTooSmall, WrongLength
from .frame import LandmarkSequence
from .topology import N_POINTS


class SequenceRecord(object):
    """A sequence of frames of one identity.

    :param identity: the identity label.
    :type identity: int
    :param seq: the index of the sequence for that identity.
    :type seq: int
    :param frames: an array of shape ``(F, 98, 2)``.
    :param poses: an optional array of shape ``(F, 3)`` containing the yaw,
        pitch and roll of each frame, in degrees.
    :param attrs: optional free-form attributes.
    :type attrs: dict
    :raises WrongLength: if the arrays do not have the expected shapes.
    """
    # pylint: disable=too-many-arguments
    def __init__(self, identity, seq, frames, poses=None, attrs=None):
        frames = np.array(frames, dtype=np.float64)
        if frames.ndim != 3 or frames.shape[1:] != (N_POINTS, 2) or \
                frames.shape[0] < 1:
            raise WrongLength("the frames of a record should have shape "
                              "(F, {}, 2), got {}".format(N_POINTS,
                                                          frames.shape))
        frames.setflags(write=False)

        if poses is not None:
            poses = np.array(poses, dtype=np.float64)
            if poses.shape != (frames.shape[0], 3):
                raise WrongLength("the poses of a record should have shape "
                                  "({}, 3), got {}".format(frames.shape[0],
                                                           poses.shape))
            poses.setflags(write=False)

        self.identity = int(identity)
        self.seq = int(seq)
        self.frames = frames
        self.poses = poses
        self.attrs = dict(attrs) if attrs else {}

    def __len__(self):
        return self.frames.shape[0]

    def __repr__(self):
        return "SequenceRecord(id={}, seq={}, frames={})".format(
            self.identity, self.seq, len(self))

    def to_sequence(self):
        """Returns the frames as a
        :class:`~lmsynth.landmarks.frame.LandmarkSequence`."""
        return LandmarkSequence(self.frames, identity_label=self.identity)


class LandmarkDataset(object):
    """A collection of :class:`SequenceRecord`.

    :param records: an iterable of :class:`SequenceRecord`.
    """
    def __init__(self, records):
        self._records = list(records)
        self._by_identity = OrderedDict()
        for record in sorted(self._records,
                             key=lambda r: (r.identity, r.seq)):
            self._by_identity.setdefault(record.identity, []).append(record)

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        return iter(self._records)

    def __repr__(self):
        return "LandmarkDataset(identities={}, records={}, frames={})".format(
            len(self._by_identity), len(self._records), self.n_frames)

    @property
    def records(self):
        """The list of records, in file order."""
        return list(self._records)

    @property
    def identities(self):
        """The sorted list of identity labels."""
        return list(self._by_identity.keys())

    @property
    def n_frames(self):
        """The total number of frames."""
        return sum(len(record) for record in self._records)

    def records_of(self, identity):
        """Returns the records of an identity, sorted by sequence index."""
        return list(self._by_identity.get(identity, []))

    def frames_of(self, identity):
        """Returns all the frames of an identity as an array of shape
        ``(N, 98, 2)``."""
        records = self._by_identity.get(identity, [])
        if not records:
            return np.zeros((0, N_POINTS, 2))
        return np.concatenate([record.frames for record in records])

    def all_frames(self):
        """Returns all the frames and their identity labels, as a tuple
        ``(frames, labels)`` of arrays of shapes ``(N, 98, 2)`` and
        ``(N,)``."""
        if not self._records:
            return np.zeros((0, N_POINTS, 2)), np.zeros(0, dtype=int)
        frames = np.concatenate([record.frames for record in self._records])
        labels = np.concatenate([np.full(len(record), record.identity)
                                 for record in self._records])
        return frames, labels

    def without_poses(self):
        """Returns a copy of the dataset whose records carry no poses."""
        return LandmarkDataset(
            SequenceRecord(r.identity, r.seq, r.frames, None, r.attrs)
            for r in self._records)

    def split(self, holdout_seqs):
        """Splits the dataset into a training and a held-out part. The last
        ``holdout_seqs`` sequences of every identity are held out.

        :param holdout_seqs: the number of held-out sequences per identity.
        :type holdout_seqs: int
        :returns: a tuple ``(train, heldout)`` of :class:`LandmarkDataset`.
        :raises DatasetTooSmall: if an identity does not have more than
            ``holdout_seqs`` sequences.
        """
        train = []
        heldout = []
        for identity, records in self._by_identity.items():
            if len(records) <= holdout_seqs:
                raise DatasetTooSmall(
                    "identity {} has {} sequences, cannot hold out {}".format(
                        identity, len(records), holdout_seqs))
            cut = len(records) - holdout_seqs
            train.extend(records[:cut])
            heldout.extend(records[cut:])
        return LandmarkDataset(train), LandmarkDataset(heldout)
