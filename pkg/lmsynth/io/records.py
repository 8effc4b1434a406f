# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.io.records` module reads and writes landmark record files.

A record file is a line-delimited JSON file. Its first line is a header::

    {"format": "lmsynth-records", "version": 1, "config": {...}}

and each following line is a sequence of one identity::

    {"id": 3, "seq": 0, "frames": [[[x, y], ...], ...],
     "pose": [{"yaw": ..., "pitch": ..., "roll": ...}, ...], "attrs": {...}}

The ``pose`` and ``attrs`` fields are optional, and so is the header, so that
records produced by other tools can be read. Coordinates are normalized face
coordinates.

The module also reads and writes the identity sidecar file of a synthetic
dataset, which maps identity labels to their
:class:`~lmsynth.synth.face.IdentityParams`, and single-frame files.
"""

from collections import OrderedDict
import json
import logging

import numpy as np

from lmsynth.errors import DataError, FormatError
from lmsynth.landmarks.dataset import LandmarkDataset, SequenceRecord
from lmsynth.landmarks.frame import LandmarkFrame, as_coords
from lmsynth.landmarks.geometry import align_frame
from . import base

logger = logging.getLogger(__name__)

RECORDS_FORMAT = "lmsynth-records"
RECORDS_VERSION = 1
IDENTITIES_FORMAT = "lmsynth-identities"
IDENTITIES_VERSION = 1
POSE_FIELDS = ("yaw", "pitch", "roll")


def _dumps(document):
    return json.dumps(document, separators=(",", ":"))


def _plain(array):
    """Converts an array to nested lists, with -0.0 written as 0.0."""
    return (np.asarray(array, dtype=np.float64) + 0.0).tolist()


def check_header(header, expected_format, expected_version, name):
    """Checks the ``format`` and ``version`` fields of a header.

    :raises FormatError: if they do not have the expected values.
    """
    if not isinstance(header, dict) or \
            header.get("format") != expected_format:
        raise FormatError('{} is not a "{}" file'.format(name,
                                                         expected_format))
    if header.get("version") != expected_version:
        raise FormatError("{}: unsupported {} version {!r}".format(
            name, expected_format, header.get("version")))


def record_to_json(record):
    """Returns the JSON document of a record, as an ordered dict."""
    document = OrderedDict()
    document["id"] = record.identity
    document["seq"] = record.seq
    document["frames"] = _plain(record.frames)
    if record.poses is not None:
        document["pose"] = [OrderedDict(zip(POSE_FIELDS, pose))
                            for pose in _plain(record.poses)]
    if record.attrs:
        document["attrs"] = record.attrs
    return document


def record_from_json(document):
    """Builds a :class:`~lmsynth.landmarks.dataset.SequenceRecord` from its
    JSON document.

    :raises FormatError: if a field is missing or malformed.
    """
    try:
        poses = None
        if document.get("pose") is not None:
            poses = [[pose[field] for field in POSE_FIELDS]
                     for pose in document["pose"]]
        return SequenceRecord(document["id"], document["seq"],
                              document["frames"], poses,
                              document.get("attrs"))
    except (KeyError, TypeError, ValueError, DataError) as error:
        raise FormatError("malformed record: {}".format(error))


class RecordReader(base.Reader):
    """A :class:`~lmsynth.io.base.Reader` reading a record file.

    You should close the :class:`RecordReader` after using it with the
    :func:`~RecordReader.close` method, or use it in a ``with`` statement as
    follow::

        with RecordReader(filename) as reader:
            for record in reader:
                # use record...

    :param filename: the name of an existing record file.
    :type filename: str
    :raises FormatError: if the header is not a valid record file header.
    """
    def __init__(self, filename):
        self._filename = filename
        self._file = open(filename, "r", encoding="utf-8")
        self._line = 0
        self._header = {}
        self._pending = None

        try:
            document = self._next_document()
            if document is not None and "format" in document:
                check_header(document, RECORDS_FORMAT, RECORDS_VERSION,
                             filename)
                self._header = document
            else:
                self._pending = document
        except FormatError:
            self._file.close()
            raise

    def _next_document(self):
        for line in self._lines():
            self._line += 1
            if not line.strip():
                continue
            try:
                return json.loads(line, object_pairs_hook=OrderedDict)
            except ValueError as error:
                raise FormatError("{}, line {}: invalid JSON ({})".format(
                    self._filename, self._line, error))
        return None

    def _lines(self):
        try:
            for line in self._file:
                yield line
        except UnicodeDecodeError as error:
            raise FormatError("{}, line {}: {}".format(
                self._filename, self._line + 1, error))

    @property
    def header(self):
        return self._header

    @property
    def empty(self):
        if self._pending is None:
            self._pending = self._next_document()
        return self._pending is None

    def read(self):
        if self.empty:
            return None
        document, self._pending = self._pending, None
        try:
            return record_from_json(document)
        except FormatError as error:
            raise FormatError("{}, line {}: {}".format(self._filename,
                                                      self._line, error))

    def close(self):
        """Close the record file."""
        self._file.close()


class RecordWriter(base.Writer):
    """A :class:`~lmsynth.io.base.Writer` writing a record file.

    You should close the :class:`RecordWriter` after using it with the
    :func:`~RecordWriter.close` method, or use it in a ``with`` statement as
    follow::

        with RecordWriter(filename, config) as writer:
            writer.write(record)

    :param filename: the name of the record file (it will be overwritten if
        it already exists).
    :type filename: str
    :param config: the configuration echoed in the header.
    :type config: dict
    """
    def __init__(self, filename, config=None):
        self._file = open(filename, "w", encoding="utf-8")
        header = OrderedDict([("format", RECORDS_FORMAT),
                              ("version", RECORDS_VERSION),
                              ("config", config if config is not None
                               else {})])
        self._file.write(_dumps(header) + "\n")
        self.count = 0

    def write(self, record):
        self._file.write(_dumps(record_to_json(record)) + "\n")
        self.count += 1

    def close(self):
        """Close the record file."""
        self._file.close()


def read_dataset(filename, align_to=None):
    """Reads a record file into a dataset.

    :param filename: the name of the record file.
    :param align_to: an optional reference frame; when given, every frame is
        aligned onto it with the least-squares similarity transform.
    :returns: a :class:`~lmsynth.landmarks.dataset.LandmarkDataset`.
    :raises FormatError: if the file is malformed.
    :raises DegenerateFrame: if a frame to align is degenerate.
    """
    with RecordReader(filename) as reader:
        records = list(reader)

    if align_to is not None:
        records = [
            SequenceRecord(record.identity, record.seq,
                           [as_coords(align_frame(frame, align_to))
                            for frame in record.frames],
                           record.poses, record.attrs)
            for record in records]

    dataset = LandmarkDataset(records)
    logger.info("read %r from %s", dataset, filename)
    return dataset


def read_header(filename):
    """Returns the header of a record file (an empty dict if it has
    none)."""
    with RecordReader(filename) as reader:
        return reader.header


def write_dataset(filename, dataset, config=None):
    """Writes a dataset to a record file.

    :param filename: the name of the record file.
    :param dataset: a :class:`~lmsynth.landmarks.dataset.LandmarkDataset`.
    :param config: the configuration echoed in the header.
    """
    with RecordWriter(filename, config) as writer:
        for record in dataset:
            writer.write(record)
    logger.info("wrote %r to %s", dataset, filename)


def write_sequence(filename, sequence, config=None, identity=None):
    """Writes a :class:`~lmsynth.landmarks.frame.LandmarkSequence` as a
    record file holding a single record.

    :param identity: the identity of the record (the identity label of the
        sequence, or 0, if ``None``).
    """
    if identity is None:
        identity = sequence.identity_label \
            if sequence.identity_label is not None else 0
    with RecordWriter(filename, config) as writer:
        writer.write(SequenceRecord(identity, 0, sequence.to_array()))


def read_frame(filename):
    """Reads a frame file: a JSON document holding either the array of the
    98 ``[x, y]`` points, or an object with such an array in a ``"frame"``
    field.

    :returns: a :class:`~lmsynth.landmarks.frame.LandmarkFrame`.
    :raises FormatError: if the file is not a valid frame file.
    """
    try:
        with open(filename, "r", encoding="utf-8") as frame_file:
            document = json.load(frame_file)
        if isinstance(document, dict):
            document = document["frame"]
        return LandmarkFrame(document)
    except (KeyError, TypeError, ValueError) as error:
        raise FormatError("{} is not a valid frame file: {}".format(
            filename, error))


def write_frame(filename, frame):
    """Writes a frame file readable by :func:`read_frame`."""
    with open(filename, "w", encoding="utf-8") as frame_file:
        frame_file.write(_dumps({"frame": _plain(as_coords(frame))}) + "\n")


def write_identities(filename, identities, config=None):
    """Writes the identity sidecar file of a synthetic dataset.

    :param filename: the name of the sidecar file.
    :param identities: a mapping from identity labels to
        :class:`~lmsynth.synth.face.IdentityParams`.
    :param config: the configuration echoed in the file.
    """
    document = OrderedDict([
        ("format", IDENTITIES_FORMAT), ("version", IDENTITIES_VERSION),
        ("config", config if config is not None else {}),
        ("identities", OrderedDict((str(label), params.to_dict())
                                   for label, params in identities.items()))])
    with open(filename, "w", encoding="utf-8") as sidecar:
        json.dump(document, sidecar, indent=2)
        sidecar.write("\n")


def read_identities(filename):
    """Reads an identity sidecar file.

    :returns: an ordered dict mapping identity labels to
        :class:`~lmsynth.synth.face.IdentityParams`.
    :raises FormatError: if the file is malformed.
    """
    # pylint: disable=cyclic-import
    from lmsynth.synth.face import IdentityParams
    try:
        with open(filename, "r", encoding="utf-8") as sidecar:
            document = json.load(sidecar, object_pairs_hook=OrderedDict)
    except ValueError as error:
        raise FormatError("{}: invalid JSON ({})".format(filename, error))
    check_header(document, IDENTITIES_FORMAT, IDENTITIES_VERSION, filename)

    try:
        return OrderedDict((int(label), IdentityParams(values))
                           for label, values in
                           document["identities"].items())
    except (KeyError, TypeError, ValueError) as error:
        raise FormatError("{}: malformed identity: {}".format(filename,
                                                              error))
