# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.errors` module defines the exceptions raised by the
:mod:`lmsynth` package.

Every exception derives from :class:`LmsynthError`, which carries the exit code
used by the command-line interface. The exceptions are grouped in three
families:

- :class:`ConfigError` (exit code 2), for invalid parameters and configuration
  files;
- :class:`DataError` (exit code 3), for invalid or inconsistent data;
- :class:`NumericError` (exit code 4), when a computation produces NaN or
  infinite values.

:class:`ConfigError` and :class:`DataError` are also subclasses of
:class:`ValueError`.
"""


class LmsynthError(Exception):
    """Base class of the exceptions raised by :mod:`lmsynth`."""
    exit_code = 1

    @property
    def name(self):
        """The name of the error, as printed by the command-line interface."""
        return type(self).__name__


class ConfigError(LmsynthError, ValueError):
    """An invalid parameter or configuration value."""
    exit_code = 2


class DataError(LmsynthError, ValueError):
    """Invalid or inconsistent input data."""
    exit_code = 3


class NumericError(LmsynthError, ArithmeticError):
    """A numeric failure."""
    exit_code = 4


class InvalidK(ConfigError):
    """The number of frames of a sequence is smaller than 2."""


class UnknownAttribute(ConfigError):
    """The name of an attribute is not part of the face template."""


class UnknownConfigKey(ConfigError):
    """A configuration document contains an unknown key."""


class OutOfRange(ConfigError):
    """A parameter is outside of its valid range."""


class DegenerateFrame(DataError):
    """All the points of a frame are coincident."""


class WrongLength(DataError):
    """A vector or a frame does not have the expected number of values."""


class ShapeMismatch(DataError):
    """The shapes of two arrays are incompatible."""


class DimensionMismatch(DataError):
    """The dimensions of two statistics are different."""


class OddDimension(DataError):
    """An image cannot be downsampled because one of its sides is odd."""


class DatasetTooSmall(DataError):
    """A dataset does not contain enough identities, sequences or frames."""


class EmptyIdentity(DataError):
    """An identity has no frames."""


class NoEligibleIdentity(DataError):
    """No identity passes the curriculum threshold."""


class IdentityCollision(DataError):
    """A negative sample shares the identity of the positive sample."""


class UnknownClass(DataError):
    """An identity label is out of the range of a classifier."""


class ZeroVector(DataError):
    """A vector with a zero norm cannot be normalized."""


class ZeroEmbedding(ZeroVector):
    """An embedding function returned a zero vector."""


class NonScalarLoss(DataError):
    """The backward pass was started from a tensor that is not a scalar."""


class FormatError(DataError):
    """A file does not follow the expected format."""


class NonFinite(NumericError):
    """A computation produced NaN or infinite values."""
