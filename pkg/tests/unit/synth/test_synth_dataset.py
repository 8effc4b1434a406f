# -*- coding: utf-8 -*-

"""
Tests for the lmsynth.synth.dataset module.
"""

import pytest
import numpy as np
from numpy.testing import assert_array_equal

from lmsynth.errors import ConfigError
from lmsynth.synth.dataset import (DatasetConfig, generate_dataset,
                                   identity_table)
from lmsynth.synth.face import IdentityParams


def test_generate_dataset():
    """Run tests for the structure of a generated dataset."""
    dataset = generate_dataset(4, 3, 6, seed=1)
    assert dataset.identities == [0, 1, 2, 3]
    assert len(dataset) == 12
    for record in dataset:
        assert record.frames.shape == (6, 98, 2)
        assert record.poses.shape == (6, 3)
        assert len(record.attrs["expression"]) == 6
        assert set(record.attrs["identity"]) == set(IdentityParams.names())


def test_generate_dataset_deterministic():
    """The same seed gives the same dataset, and an identity does not depend
    on the number of identities."""
    dataset1 = generate_dataset(3, 2, 4, seed=5)
    dataset2 = generate_dataset(3, 2, 4, seed=5)
    dataset3 = generate_dataset(5, 2, 4, seed=5)
    for identity in range(3):
        assert_array_equal(dataset1.frames_of(identity),
                           dataset2.frames_of(identity))
        assert_array_equal(dataset1.frames_of(identity),
                           dataset3.frames_of(identity))

    other = generate_dataset(3, 2, 4, seed=6)
    assert not np.array_equal(dataset1.frames_of(0), other.frames_of(0))


def test_pose_amplitude():
    """The poses of an identity stay within its amplitude."""
    dataset = generate_dataset(6, 3, 8, seed=2, pose_amplitude=(10, 30),
                               roll_amplitude=4)
    for record in dataset:
        amplitude = record.attrs["max_yaw"]
        assert 10 <= amplitude <= 30
        assert np.all(np.abs(record.poses[:, 0]) <= amplitude + 1e-9)
        assert np.all(np.abs(record.poses[:, 1]) <= amplitude / 2 + 1e-9)
        assert np.all(np.abs(record.poses[:, 2]) <= 4 + 1e-9)


def test_identity_table():
    """Run tests for identity_table."""
    dataset = generate_dataset(3, 2, 2, seed=0)
    table = identity_table(dataset)
    assert list(table) == [0, 1, 2]
    assert table[0] != table[1]

    assert identity_table(dataset.without_poses()) == table


@pytest.mark.parametrize("kwargs", [
    {"n_ids": 0},
    {"seqs_per_id": 0},
    {"frames_per_seq": 0},
    {"keyframes": 1},
    {"min_pose_amplitude": 50, "max_pose_amplitude": 40},
    {"max_pose_amplitude": 100},
    {"roll_amplitude": -1},
])
def test_dataset_config_invalid(kwargs):
    """Run tests for the checks of DatasetConfig."""
    with pytest.raises(ConfigError):
        DatasetConfig(**kwargs)


def test_dataset_config_generate():
    """DatasetConfig.generate uses all the parameters."""
    config = DatasetConfig(n_ids=2, seqs_per_id=2, frames_per_seq=3, seed=4)
    dataset = config.generate()
    assert dataset.identities == [0, 1]
    assert dataset.n_frames == 12
    assert config.to_dict()["seed"] == 4
