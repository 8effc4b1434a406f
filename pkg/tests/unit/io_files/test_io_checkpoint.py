# -*- coding: utf-8 -*-

"""
Tests for the lmsynth.io.checkpoint package.
"""

import os
import struct

import pytest
import numpy as np
from numpy.testing import assert_array_equal

from lmsynth.errors import FormatError
from lmsynth.io.checkpoint import (MAGIC, manifest_path, read_checkpoint,
                                   write_checkpoint)


@pytest.fixture
def checkpoint(tmpdir):
    """The path of a checkpoint holding a matrix and a scalar."""
    path = str(tmpdir.join("model.ckpt"))
    write_checkpoint(path, {"layer/weight": np.arange(6.0).reshape(2, 3),
                            "scale": np.array(1.5)}, {"format": "test"})
    return path


def test_read(checkpoint):
    """The arrays are read in order, with their shapes."""
    values, manifest = read_checkpoint(checkpoint)
    assert list(values) == ["layer/weight", "scale"]
    assert_array_equal(values["layer/weight"], [[0, 1, 2], [3, 4, 5]])
    assert values["scale"].shape == ()
    assert values["scale"] == 1.5
    assert manifest == {"format": "test"}
    assert os.path.exists(manifest_path(checkpoint))


def test_header(checkpoint):
    """The file starts with the magic bytes, the version and the number of
    arrays."""
    with open(checkpoint, "rb") as binary:
        assert struct.unpack("<4sII", binary.read(12)) == (MAGIC, 1, 2)


def rewrite(path, transform):
    """Replaces the content of a file by a function of it."""
    with open(path, "rb") as binary:
        data = binary.read()
    with open(path, "wb") as binary:
        binary.write(transform(data))


@pytest.mark.parametrize("transform", [
    lambda data: b"XXXX" + data[4:],
    lambda data: data[:4] + struct.pack("<I", 9) + data[8:],
    lambda data: data[:-1],
    lambda data: data + b"\x00",
    lambda data: data[:6],
    lambda data: data[:14] + b"\xff" + data[15:],
])
def test_corrupted(checkpoint, transform):
    """Run tests for the errors of read_checkpoint on corrupted files."""
    rewrite(checkpoint, transform)
    with pytest.raises(FormatError):
        read_checkpoint(checkpoint)


def test_missing_files(checkpoint):
    """A checkpoint needs its manifest."""
    os.remove(manifest_path(checkpoint))
    with pytest.raises(FormatError):
        read_checkpoint(checkpoint)
    with pytest.raises(FormatError):
        read_checkpoint(checkpoint + ".missing")


@pytest.mark.parametrize("content", ["{", "[1, 2]"])
def test_invalid_manifest(checkpoint, content):
    """The manifest should be a JSON object."""
    with open(manifest_path(checkpoint), "w") as manifest:
        manifest.write(content)
    with pytest.raises(FormatError):
        read_checkpoint(checkpoint)
