# -*- coding: utf-8 -*-

"""
Tests for the lmsynth.metrics.embedder module.
"""

import pytest
import numpy as np
from numpy.testing import assert_almost_equal, assert_array_equal

from lmsynth.errors import ConfigError, DatasetTooSmall, FormatError
from lmsynth.landmarks.geometry import SimilarityTransform, apply_transform
from lmsynth.lsg.config import LsgConfig
from lmsynth.lsg.model import LsgModel
from lmsynth.metrics.embedder import (EmbedderConfig, EmbeddingModel,
                                      aligned_features, train_id_embedder)
from lmsynth.synth.dataset import generate_dataset
from lmsynth.synth.template import canonical_frame


@pytest.fixture(scope="module")
def dataset():
    """A small dataset of nearly frontal faces."""
    return generate_dataset(3, 3, 8, seed=0, pose_amplitude=(0, 3),
                            roll_amplitude=0)


@pytest.mark.parametrize("kwargs", [
    {"hidden_sizes": ()},
    {"hidden_sizes": (8, 0)},
    {"epochs": -1},
    {"batch_size": 0},
    {"holdout_seqs": -1},
    {"init": "zeros"},
])
def test_config_invalid(kwargs):
    """Run tests for the checks of EmbedderConfig."""
    with pytest.raises(ConfigError):
        EmbedderConfig(**kwargs)


def test_config_to_dict():
    """The hidden sizes are written as a list."""
    assert EmbedderConfig(hidden_sizes=[4, 2]).to_dict()["hidden_sizes"] == \
        [4, 2]


def test_aligned_features():
    """Aligned features do not depend on the position, scale and rotation of
    a frame."""
    frame = canonical_frame()
    moved = apply_transform(frame, SimilarityTransform(1.5, 0.3, (0.2, 0)))
    assert aligned_features(frame).shape == (1, 196)
    assert_almost_equal(aligned_features(moved), aligned_features(frame))
    assert aligned_features(np.stack([frame.coords] * 3)).shape == (3, 196)


def test_embed():
    """Embeddings are unit vectors, invariant to similarity transforms."""
    model = EmbeddingModel(EmbedderConfig(hidden_sizes=(16, 8)), [0, 1])
    frame = canonical_frame()
    moved = apply_transform(frame, SimilarityTransform(0.7, -0.2, (0, 0.1)))

    embedding = model.embed(frame)
    assert embedding.shape == (8,)
    assert np.linalg.norm(embedding) == pytest.approx(1.0)
    assert_almost_equal(model.embed(moved), embedding)

    batch = model.embed(np.stack([frame.coords, moved.coords]))
    assert batch.shape == (2, 8)
    assert model.dimension == 8


def test_train_id_embedder(dataset):
    """The embedder learns to separate the identities of its training
    set."""
    config = EmbedderConfig(hidden_sizes=(32, 16), epochs=150, batch_size=32,
                            lr=1e-2, holdout_seqs=0)
    model = train_id_embedder(dataset, config)
    assert model.classes == [0, 1, 2]
    assert model.heldout_accuracy == pytest.approx(model.accuracy(dataset))
    assert model.heldout_accuracy > 0.6


def test_train_id_embedder_holdout(dataset):
    """The accuracy is measured on the held-out sequences."""
    model = train_id_embedder(dataset, EmbedderConfig(
        hidden_sizes=(8,), epochs=1, holdout_seqs=1))
    heldout = dataset.split(1)[1]
    assert model.heldout_accuracy == pytest.approx(model.accuracy(heldout))


def test_train_id_embedder_too_small():
    """The embedder needs two identities."""
    with pytest.raises(DatasetTooSmall):
        train_id_embedder(generate_dataset(1, 3, 2, seed=0))
    with pytest.raises(DatasetTooSmall):
        train_id_embedder(generate_dataset(2, 2, 2, seed=0),
                          EmbedderConfig(holdout_seqs=2))


def test_save_load(tmpdir):
    """A saved embedder is loaded with the same embeddings."""
    model = EmbeddingModel(EmbedderConfig(hidden_sizes=(8, 4)), [3, 5])
    model.heldout_accuracy = 0.75
    path = str(tmpdir.join("embedder.ckpt"))
    model.save(path)

    loaded = EmbeddingModel.load(path)
    assert loaded.classes == [3, 5]
    assert loaded.heldout_accuracy == 0.75
    assert_array_equal(loaded.embed(canonical_frame()),
                       model.embed(canonical_frame()))


def test_load_other_checkpoint(tmpdir):
    """A generator checkpoint is not an embedder checkpoint."""
    path = str(tmpdir.join("lsg.ckpt"))
    LsgModel(LsgConfig(hidden_size=4, disc_hidden=4, support_hidden=4),
             [0, 1]).save(path)
    with pytest.raises(FormatError):
        EmbeddingModel.load(path)
