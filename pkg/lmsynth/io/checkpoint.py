# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.io.checkpoint` module reads and writes checkpoints: named
arrays of 64-bit reals in a binary file, and a JSON manifest of the
hyperparameters in a second file, whose name is the name of the checkpoint
followed by ``.json``.

The binary file starts with a header (the magic bytes ``LMSK``, the format
version and the number of arrays, as little-endian 32-bit unsigned
integers), followed by one entry per array: the length of its name (16-bit),
its UTF-8 name, its number of dimensions (8-bit), its dimensions (32-bit
each) and its values (little-endian 64-bit floats, in C order).
"""

from collections import OrderedDict
import json
import struct

import numpy as np

from lmsynth.errors import FormatError

MAGIC = b"LMSK"
VERSION = 1

_HEADER = struct.Struct("<4sII")
_NAME_LENGTH = struct.Struct("<H")
_NDIM = struct.Struct("<B")


def manifest_path(path):
    """Returns the name of the manifest of a checkpoint."""
    return path + ".json"


def write_checkpoint(path, values, manifest):
    """Writes a checkpoint.

    :param path: the name of the binary file.
    :type path: str
    :param values: a mapping from names to arrays.
    :param manifest: a JSON-serializable dict.
    """
    with open(path, "wb") as output:
        output.write(_HEADER.pack(MAGIC, VERSION, len(values)))
        for name, value in values.items():
            value = np.ascontiguousarray(value, dtype="<f8")
            encoded = name.encode("utf-8")
            output.write(_NAME_LENGTH.pack(len(encoded)))
            output.write(encoded)
            output.write(_NDIM.pack(value.ndim))
            output.write(struct.pack("<{}I".format(value.ndim),
                                     *value.shape))
            output.write(value.tobytes())

    with open(manifest_path(path), "w", encoding="utf-8") as output:
        json.dump(manifest, output, indent=2, sort_keys=True)
        output.write("\n")


class _Buffer(object):
    """Reads consecutive structures from a bytes object."""
    # pylint: disable=too-few-public-methods
    def __init__(self, data, path):
        self._data = data
        self._offset = 0
        self._path = path

    def take(self, size):
        """Returns the next ``size`` bytes.

        :raises FormatError: if the data is too short.
        """
        if self._offset + size > len(self._data):
            raise FormatError("{} is truncated".format(self._path))
        chunk = self._data[self._offset:self._offset + size]
        self._offset += size
        return chunk

    def unpack(self, structure):
        """Unpacks the next structure."""
        return structure.unpack(self.take(structure.size))

    @property
    def remaining(self):
        """The number of unread bytes."""
        return len(self._data) - self._offset


def read_checkpoint(path):
    """Reads a checkpoint written by :func:`write_checkpoint`.

    :param path: the name of the binary file.
    :returns: a tuple ``(values, manifest)``, where ``values`` is an ordered
        dict mapping names to arrays.
    :raises FormatError: if a file is missing or malformed, or if the version
        is not supported.
    """
    try:
        with open(path, "rb") as checkpoint:
            data = checkpoint.read()
        with open(manifest_path(path), "r", encoding="utf-8") as manifest:
            manifest = json.load(manifest)
    except (OSError, ValueError) as error:
        raise FormatError("cannot read the checkpoint {}: {}".format(path,
                                                                    error))
    if not isinstance(manifest, dict):
        raise FormatError("the manifest of {} is not a JSON object".format(
            path))

    buffer = _Buffer(data, path)
    magic, version, count = buffer.unpack(_HEADER)
    if magic != MAGIC:
        raise FormatError("{} is not a checkpoint".format(path))
    if version != VERSION:
        raise FormatError("{}: unsupported checkpoint version {}".format(
            path, version))

    values = OrderedDict()
    for _ in range(count):
        (length,) = buffer.unpack(_NAME_LENGTH)
        try:
            name = buffer.take(length).decode("utf-8")
        except UnicodeDecodeError as error:
            raise FormatError("{}: invalid parameter name ({})".format(
                path, error))
        (ndim,) = buffer.unpack(_NDIM)
        shape = struct.unpack("<{}I".format(ndim), buffer.take(4 * ndim))
        size = int(np.prod(shape))
        values[name] = np.frombuffer(buffer.take(8 * size),
                                     dtype="<f8").reshape(shape).copy()
    if buffer.remaining:
        raise FormatError("{}: {} unexpected trailing bytes".format(
            path, buffer.remaining))
    return values, manifest
