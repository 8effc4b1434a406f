# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.lsg.config` module provides the hyperparameters of the
landmark sequence generator.
"""

from dataclasses import asdict, dataclass

from lmsynth.autodiff.layers import INITS
from lmsynth.errors import ConfigError, InvalidK

LOSS_WEIGHTS = ("lambda_d1", "lambda_d2", "lambda_s_hidden",
                "lambda_s_output", "lambda_rec")


@dataclass
class LsgConfig(object):
    """The hyperparameters of an :class:`~lmsynth.lsg.model.LsgModel` and of
    its training.

    :param K: the number of output frames, the two refined endpoints
        included.
    :param hidden_size: the size of the states of each direction of the
        Bi-LSTM.
    :param disc_hidden: the hidden size of the discriminators.
    :param support_hidden: the hidden size of the identity support
        classifiers.
    :param lambda_d1: the weight of the frame realness adversarial term.
    :param lambda_d2: the weight of the same-identity adversarial term.
    :param lambda_s_hidden: the weight of the support task on the Bi-LSTM
        hidden states.
    :param lambda_s_output: the weight of the support task on the generated
        frames.
    :param lambda_rec: the weight of the optional reconstruction term
        (disabled by default).
    :param epochs: the number of training epochs.
    :param batch_size: the number of windows per batch.
    :param seed: the seed of the initialization and of the sampling.
    :param input_noise_sigma: the standard deviation of the noise added to
        the input endpoints during training.
    :param lr: the initial learning rate.
    :param beta1: the first Adam decay rate.
    :param beta2: the second Adam decay rate.
    :param lr_decay_start: the last epoch with the initial learning rate.
    :param lr_decay_end: the epoch where the learning rate reaches zero.
    :param pairs_per_identity: the number of training windows drawn per
        identity and per epoch.
    :param init: the initialization of the weights (``"glorot"`` or
        ``"normal"``); the shift head is always initialized to zero.
    :param forget_bias: the initial bias of the LSTM forget gates.
    :param pose_aware: ``True`` to draw the training windows only from the
        identities eligible under the curriculum schedule.
    :raises InvalidK: if ``K < 2``.
    :raises ConfigError: if another parameter is out of range.
    """
    # pylint: disable=too-many-instance-attributes,invalid-name
    K: int = 8
    hidden_size: int = 64
    disc_hidden: int = 64
    support_hidden: int = 64
    lambda_d1: float = 1.0
    lambda_d2: float = 1.0
    lambda_s_hidden: float = 1.0
    lambda_s_output: float = 1.0
    lambda_rec: float = 0.0
    epochs: int = 45
    batch_size: int = 32
    seed: int = 0
    input_noise_sigma: float = 0.02
    lr: float = 2e-4
    beta1: float = 0.5
    beta2: float = 0.999
    lr_decay_start: int = 30
    lr_decay_end: int = 45
    pairs_per_identity: int = 10
    init: str = "glorot"
    forget_bias: float = 1.0
    pose_aware: bool = False

    def __post_init__(self):
        if self.K < 2:
            raise InvalidK("lsg.K should be at least 2, got {}".format(self.K))
        for name in LOSS_WEIGHTS:
            if getattr(self, name) < 0:
                raise ConfigError("lsg.{} should be non-negative, got "
                                  "{}".format(name, getattr(self, name)))
        for name in ("hidden_size", "disc_hidden", "support_hidden",
                     "batch_size", "pairs_per_identity"):
            if getattr(self, name) < 1:
                raise ConfigError("lsg.{} should be at least 1, got "
                                  "{}".format(name, getattr(self, name)))
        if self.epochs < 0:
            raise ConfigError("lsg.epochs should be non-negative, got "
                              "{}".format(self.epochs))
        if self.input_noise_sigma < 0 or self.lr < 0:
            raise ConfigError("lsg.input_noise_sigma and lsg.lr should be "
                              "non-negative")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise ConfigError("the Adam decay rates should be in [0, 1)")
        if not 0 <= self.lr_decay_start < self.lr_decay_end:
            raise ConfigError(
                "lsg.lr_decay_start should be smaller than lsg.lr_decay_end, "
                "got {} and {}".format(self.lr_decay_start,
                                       self.lr_decay_end))
        if self.init not in INITS or self.init == "zeros":
            raise ConfigError('lsg.init should be "glorot" or "normal", got '
                              '"{}"'.format(self.init))

    def to_dict(self):
        """Returns the configuration as a dict."""
        return asdict(self)

    def weights(self):
        """Returns the loss weights, keyed by the names of the loss terms
        (see :func:`~lmsynth.lsg.losses.total_lsg_loss`)."""
        return {"L_D1": self.lambda_d1, "L_D2": self.lambda_d2,
                "L_S1": self.lambda_s_hidden, "L_S2": self.lambda_s_output,
                "L_rec": self.lambda_rec}
