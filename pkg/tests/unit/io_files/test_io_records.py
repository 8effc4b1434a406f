# -*- coding: utf-8 -*-

"""
Tests for the lmsynth.io.records package.
"""

import json

import pytest
import numpy as np
from numpy.testing import assert_almost_equal, assert_array_equal

from lmsynth.errors import FormatError
from lmsynth.io import records as record_io
from lmsynth.io.records import (RECORDS_FORMAT, RecordReader, RecordWriter,
                                read_dataset, read_frame, read_header,
                                read_identities, write_dataset, write_frame,
                                write_identities, write_sequence)
from lmsynth.landmarks.dataset import LandmarkDataset, SequenceRecord
from lmsynth.landmarks.frame import LandmarkSequence
from lmsynth.landmarks.geometry import SimilarityTransform, apply_transform
from lmsynth.synth.dataset import generate_dataset, identity_table
from lmsynth.synth.template import canonical_frame


def write_lines(path, documents):
    """Writes JSON documents (or raw strings) as the lines of a file."""
    with open(path, "w") as output:
        for document in documents:
            if not isinstance(document, str):
                document = json.dumps(document)
            output.write(document + "\n")


def test_write_read_dataset(tmpdir):
    """A written dataset is read with its records, poses and attributes."""
    dataset = generate_dataset(2, 2, 3, seed=1)
    path = str(tmpdir.join("train.jsonl"))
    write_dataset(path, dataset, config={"seed": 1})

    assert read_header(path) == {"format": RECORDS_FORMAT, "version": 1,
                                 "config": {"seed": 1}}
    loaded = read_dataset(path)
    assert loaded.identities == [0, 1]
    for record, original in zip(loaded, dataset):
        assert (record.identity, record.seq) == \
            (original.identity, original.seq)
        assert_array_equal(record.frames, original.frames)
        assert_array_equal(record.poses, original.poses)
        assert record.attrs["max_yaw"] == original.attrs["max_yaw"]


def test_negative_zero(tmpdir):
    """Negative zeros are written as zeros."""
    frames = np.zeros((1, 98, 2))
    frames[0, 0, 0] = -0.0
    path = str(tmpdir.join("zeros.jsonl"))
    with RecordWriter(path) as writer:
        writer.write(SequenceRecord(0, 0, frames, [[-0.0, 0, 0]]))
        assert writer.count == 1
    assert "-0.0" not in tmpdir.join("zeros.jsonl").read()


def test_read_without_header(tmpdir):
    """Files of other tools have no header and optional fields."""
    path = str(tmpdir.join("other.jsonl"))
    frames = np.ones((2, 98, 2)).tolist()
    write_lines(path, [{"id": 4, "seq": 1, "frames": frames}, "",
                       {"id": 2, "seq": 0, "frames": frames}])

    with RecordReader(path) as reader:
        assert reader.header == {}
        records = list(reader)
        assert reader.empty
    assert [r.identity for r in records] == [4, 2]
    assert records[0].poses is None
    assert records[0].attrs == {}


@pytest.mark.parametrize("lines", [
    ['{"format": "other", "version": 1}'],
    ['{"format": "lmsynth-records", "version": 2}'],
    ['{"id": 0, "seq": 0'],
    ['{"id": 0, "seq": 0}'],
    ['{"id": 0, "seq": 0, "frames": [[[0, 0]]]}'],
    ['{"id": 0, "seq": 0, "frames": [], "pose": []}'],
])
def test_read_invalid(tmpdir, lines):
    """Run tests for the errors of RecordReader."""
    path = str(tmpdir.join("invalid.jsonl"))
    write_lines(path, lines)
    with pytest.raises(FormatError):
        read_dataset(path)


def test_invalid_header_closes_file(tmpdir, monkeypatch):
    """The file is closed when its header is rejected."""
    path = str(tmpdir.join("invalid.jsonl"))
    write_lines(path, [{"format": "other", "version": 1}])
    opened = []

    def recording_open(*args, **kwargs):
        opened.append(open(*args, **kwargs))
        return opened[-1]

    monkeypatch.setattr(record_io, "open", recording_open, raising=False)
    with pytest.raises(FormatError):
        RecordReader(path)
    assert len(opened) == 1
    assert opened[0].closed


def test_read_not_utf8(tmpdir):
    """A file that is not UTF-8 text raises FormatError."""
    path = tmpdir.join("binary.jsonl")
    path.write_binary(b"\xff\xfe\x00\x01\n")
    with pytest.raises(FormatError):
        read_dataset(str(path))


def test_read_aligned(tmpdir):
    """Frames are aligned onto a reference frame when reading."""
    reference = canonical_frame()
    moved = apply_transform(reference, SimilarityTransform(2, 0.5, (1, -1)))
    path = str(tmpdir.join("moved.jsonl"))
    write_dataset(path, LandmarkDataset([SequenceRecord(
        0, 0, [moved.coords, reference.coords])]))

    record = read_dataset(path, align_to=reference).records[0]
    assert_almost_equal(record.frames[0], reference.coords)
    assert_almost_equal(record.frames[1], reference.coords)


def test_write_sequence(tmpdir):
    """A sequence is written as a single record of its identity."""
    frame = canonical_frame()
    path = str(tmpdir.join("sequence.jsonl"))
    write_sequence(path, LandmarkSequence([frame.coords] * 3,
                                          identity_label=7))
    records = read_dataset(path).records
    assert len(records) == 1
    assert records[0].identity == 7
    assert len(records[0]) == 3


@pytest.mark.parametrize("document", [
    None,
    "frame",
])
def test_frame_files(tmpdir, document):
    """Run tests for read_frame and write_frame."""
    path = str(tmpdir.join("frame.json"))
    coords = canonical_frame().coords
    if document is None:
        write_lines(path, [coords.tolist()])
    else:
        write_frame(path, coords)
    assert_almost_equal(read_frame(path).coords, coords)


@pytest.mark.parametrize("content", [
    "{",
    '{"points": []}',
    "[[0, 0]]",
])
def test_read_frame_invalid(tmpdir, content):
    """Run tests for the errors of read_frame."""
    path = str(tmpdir.join("frame.json"))
    write_lines(path, [content])
    with pytest.raises(FormatError):
        read_frame(path)


def test_identities(tmpdir):
    """The identity sidecar file maps labels to identity parameters."""
    identities = identity_table(generate_dataset(3, 1, 1, seed=2))
    path = str(tmpdir.join("identities.json"))
    write_identities(path, identities, config={"seed": 2})

    loaded = read_identities(path)
    assert list(loaded) == [0, 1, 2]
    for label, params in identities.items():
        assert_almost_equal(loaded[label].to_array(), params.to_array())


def test_identities_invalid(tmpdir):
    """A record file is not an identity sidecar file."""
    path = str(tmpdir.join("records.jsonl"))
    write_dataset(path, generate_dataset(1, 1, 1, seed=0))
    with pytest.raises(FormatError):
        read_identities(path)
