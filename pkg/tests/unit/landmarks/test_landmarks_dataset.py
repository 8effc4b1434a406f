# -*- coding: utf-8 -*-

"""
Tests for the lmsynth.landmarks.dataset module.
"""

import pytest
import numpy as np
from numpy.testing import assert_array_equal

from lmsynth.errors import DatasetTooSmall, WrongLength
from lmsynth.landmarks.dataset import LandmarkDataset, SequenceRecord


def make_dataset(n_ids=3, seqs_per_id=4, n_frames=5):
    """Returns a dataset of random frames, whose coordinates encode the
    identity, sequence and frame indices."""
    records = []
    for identity in range(n_ids):
        for seq in range(seqs_per_id):
            frames = np.zeros((n_frames, 98, 2))
            frames[:, :, 0] = identity
            frames[:, :, 1] = seq
            poses = np.zeros((n_frames, 3))
            records.append(SequenceRecord(identity, seq, frames, poses))
    return LandmarkDataset(records)


def test_record_shapes():
    """Run tests for the shape checks of SequenceRecord."""
    with pytest.raises(WrongLength):
        SequenceRecord(0, 0, np.zeros((3, 97, 2)))
    with pytest.raises(WrongLength):
        SequenceRecord(0, 0, np.zeros((0, 98, 2)))
    with pytest.raises(WrongLength):
        SequenceRecord(0, 0, np.zeros((3, 98, 2)), poses=np.zeros((2, 3)))


def test_dataset():
    """Run tests for the accessors of LandmarkDataset."""
    dataset = make_dataset()
    assert len(dataset) == 12
    assert dataset.identities == [0, 1, 2]
    assert dataset.n_frames == 60
    assert [r.seq for r in dataset.records_of(1)] == [0, 1, 2, 3]
    assert dataset.records_of(5) == []
    assert dataset.frames_of(2).shape == (20, 98, 2)
    assert dataset.frames_of(5).shape == (0, 98, 2)

    frames, labels = dataset.all_frames()
    assert frames.shape == (60, 98, 2)
    assert_array_equal(frames[:, 0, 0], labels)

    sequence = dataset.records_of(1)[2].to_sequence()
    assert len(sequence) == 5
    assert sequence.identity_label == 1


def test_without_poses():
    """Run tests for LandmarkDataset.without_poses."""
    dataset = make_dataset().without_poses()
    assert all(record.poses is None for record in dataset)


@pytest.mark.parametrize("holdout", [0, 1, 3])
def test_split(holdout):
    """The last sequences of every identity are held out."""
    train, heldout = make_dataset().split(holdout)
    assert len(train) == 3 * (4 - holdout)
    assert len(heldout) == 3 * holdout
    assert all(record.seq >= 4 - holdout for record in heldout)
    assert all(record.seq < 4 - holdout for record in train)


def test_split_too_small():
    """An identity needs at least one training sequence."""
    with pytest.raises(DatasetTooSmall):
        make_dataset().split(4)
