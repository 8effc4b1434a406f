# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.io.base` module provides base classes for the readers and
writers of landmark record files.
"""


class Reader(object):
    """An abstract class for the input of
    :class:`~lmsynth.landmarks.dataset.SequenceRecord` objects.

    A :class:`Reader` is an iterator over its records, and a context manager
    closing it on exit.
    """

    @property
    def header(self):
        """The header of the input, as a dict."""
        raise NotImplementedError()

    @property
    def empty(self):
        """True if there is no more record to read."""
        raise NotImplementedError()

    def read(self):
        """Reads the next record.

        :returns: a :class:`~lmsynth.landmarks.dataset.SequenceRecord`, or
            ``None`` if there is no more record to read.
        :raises FormatError: if the record is malformed.
        """
        raise NotImplementedError()

    def close(self):
        """Releases the resources of the reader."""

    def __iter__(self):
        while True:
            record = self.read()
            if record is None:
                return
            yield record

    def __enter__(self):
        return self

    def __exit__(self, _1, _2, _3):
        self.close()


class Writer(object):
    """An abstract class for the output of
    :class:`~lmsynth.landmarks.dataset.SequenceRecord` objects, usable as a
    context manager."""

    def write(self, record):
        """Writes a record.

        :param record: a :class:`~lmsynth.landmarks.dataset.SequenceRecord`.
        """
        raise NotImplementedError()

    def close(self):
        """Flushes and releases the resources of the writer."""

    def __enter__(self):
        return self

    def __exit__(self, _1, _2, _3):
        self.close()
