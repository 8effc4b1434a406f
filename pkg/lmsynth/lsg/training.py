# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.lsg.training` module trains the landmark sequence
generator.

Each iteration alternates a discriminator step, on generated frames detached
from the generator, and a generator step on the weighted sum of the
adversarial, support and (optional) reconstruction terms.
"""

from collections import OrderedDict
import logging

import numpy as np

from lmsynth.autodiff import Tape, adam_step, lr_schedule, ops
from lmsynth.autodiff.tensor import no_tape
from lmsynth.errors import DatasetTooSmall, NoEligibleIdentity
from lmsynth.landmarks.frame import FLAT_LENGTH
from .losses import (adv_losses_d1, adv_losses_d2, loss_reconstruction,
                     loss_support_hidden, loss_support_output, total_lsg_loss)
from .model import LsgModel

logger = logging.getLogger(__name__)

HISTORY_COLUMNS = ("epoch", "L_D1", "L_D2", "L_S1", "L_S2", "total", "L_rec",
                   "D1_loss", "D2_loss", "lr", "n_identities")


class _WindowSampler(object):
    """Draws ``K``-frame windows and negative frames from a dataset."""
    def __init__(self, dataset, K):
        self.K = K
        self.records = OrderedDict()
        self.frames = OrderedDict()
        for identity in dataset.identities:
            records = [record for record in dataset.records_of(identity)
                       if len(record) >= K]
            if records:
                self.records[identity] = records
            self.frames[identity] = dataset.frames_of(identity).reshape(
                -1, FLAT_LENGTH)

        if len(self.records) < 2:
            raise DatasetTooSmall(
                "training needs at least 2 identities with sequences of at "
                "least {} frames, got {}".format(K, len(self.records)))

    @property
    def identities(self):
        """The identities with at least one usable sequence."""
        return list(self.records.keys())

    def windows(self, rng, identities, per_identity):
        """Returns ``per_identity`` random windows of each identity, as a
        tuple ``(frames, labels)`` of arrays of shapes ``(N, K, 196)`` and
        ``(N,)``."""
        windows = []
        labels = []
        for identity in identities:
            records = self.records[identity]
            for _ in range(per_identity):
                record = records[rng.integers(len(records))]
                offset = rng.integers(len(record) - self.K + 1)
                window = record.frames[offset:offset + self.K]
                windows.append(window.reshape(self.K, FLAT_LENGTH))
                labels.append(identity)
        return np.stack(windows), np.array(labels)

    def negatives(self, rng, labels, count):
        """Returns ``count`` frames of other identities for each label, as a
        tuple ``(frames, labels)`` of arrays of shapes
        ``(count * N, 196)`` and ``(count * N,)``, ordered like the frames of
        :meth:`~lmsynth.lsg.model.LsgModel.forward` (frame-major)."""
        identities = list(self.frames.keys())
        frames = np.empty((count, len(labels), FLAT_LENGTH))
        negative_ids = np.empty((count, len(labels)), dtype=int)
        for i, label in enumerate(labels):
            others = [identity for identity in identities
                      if identity != label]
            for k in range(count):
                other = others[rng.integers(len(others))]
                pool = self.frames[other]
                frames[k, i] = pool[rng.integers(len(pool))]
                negative_ids[k, i] = other
        return frames.reshape(-1, FLAT_LENGTH), negative_ids.reshape(-1)


def _frame_major(windows):
    """Reshapes windows of shape ``(B, K, 196)`` into ``(K * B, 196)``, frame
    index first."""
    return np.concatenate([windows[:, k] for k in range(windows.shape[1])])


def _step(model, sampler, rng, clean, labels, lr):
    """One discriminator step and one generator step on a batch of windows.
    Returns the values of the loss terms."""
    # pylint: disable=too-many-arguments,too-many-locals
    config = model.config
    K = config.K
    batch_size = clean.shape[0]

    noise = rng.normal(0.0, config.input_noise_sigma,
                       size=(2, batch_size, FLAT_LENGTH)) \
        if config.input_noise_sigma > 0 else np.zeros((2, batch_size,
                                                       FLAT_LENGTH))
    start = clean[:, 0] + noise[0]
    end = clean[:, -1] + noise[1]

    real = _frame_major(clean[:, 1:-1] if K > 2 else clean)
    inputs = np.tile(start, (K, 1))
    positives = _frame_major(clean)
    negatives, negative_ids = sampler.negatives(rng, labels, K)
    input_ids = np.tile(labels, K)

    # Discriminator step
    with no_tape():
        fakes = model.forward(start, end, K)
    fake = np.concatenate([frame.value for frame in fakes.frames])

    model.discriminator.zero_grad()
    with Tape() as tape:
        d1_loss, _ = adv_losses_d1(model, real, fake)
        d2_loss, _ = adv_losses_d2(model, inputs, fake, negatives, input_ids,
                                   negative_ids, positives)
        d_loss = ops.add(d1_loss, d2_loss)
        tape.backward(d_loss)
    adam_step(model.discriminator, lr, config.beta1, config.beta2)

    # Generator step
    model.generator.zero_grad()
    with Tape() as tape:
        output = model.forward(start, end, K)
        _, g1 = adv_losses_d1(model, real, output.frames)
        _, g2 = adv_losses_d2(model, inputs, output.frames, negatives,
                              input_ids, negative_ids)
        terms = {
            "L_D1": g1,
            "L_D2": g2,
            "L_S1": loss_support_hidden(model, output.final, labels),
            "L_S2": loss_support_output(model, output.frames, labels),
            "L_rec": loss_reconstruction(output.frames, clean),
        }
        total = total_lsg_loss(terms, config)
        tape.backward(total)
    adam_step(model.generator, lr, config.beta1, config.beta2)

    values = {name: term.item() for name, term in terms.items()}
    values["total"] = total.item()
    values["D1_loss"] = d1_loss.item()
    values["D2_loss"] = d2_loss.item()
    logger.debug("batch of %d: D %.4f, total %.4f", batch_size,
                 d_loss.item(), values["total"])
    return values


def train_lsg(dataset, config, schedule=None, callback=None):
    """Trains a landmark sequence generator.

    Every epoch draws ``config.pairs_per_identity`` random ``K``-frame windows
    of each identity (of each identity eligible under ``schedule`` when
    ``config.pose_aware`` is set), shuffles them and splits them into batches.
    The first and last frames of a window, perturbed by Gaussian noise of
    standard deviation ``config.input_noise_sigma``, are the input of the
    generator; its interior frames are the real samples of ``d1``.

    Training is deterministic for a given ``config.seed``.

    :param dataset: a :class:`~lmsynth.landmarks.dataset.LandmarkDataset`.
    :param config: an :class:`~lmsynth.lsg.config.LsgConfig`.
    :param schedule: the :class:`~lmsynth.curriculum.CurriculumSchedule` used
        when ``config.pose_aware`` is set (the default schedule if ``None``).
    :param callback: an optional function called with the model and the
        history row at the end of every epoch.
    :returns: a tuple ``(model, history)``, where ``history`` is a list of
        dicts with the keys :data:`HISTORY_COLUMNS`, one per epoch
        (``n_identities`` is the number of identities the windows of the
        epoch were drawn from).
    :raises DatasetTooSmall: if fewer than two identities have sequences of
        at least ``K`` frames.
    :raises NoEligibleIdentity: if no identity is eligible at some epoch in
        pose-aware mode.
    """
    # pylint: disable=too-many-locals
    sampler = _WindowSampler(dataset, config.K)
    model = LsgModel(config, dataset.identities)
    rng = np.random.default_rng(
        np.random.SeedSequence(config.seed).spawn(2)[1])

    stats = None
    if config.pose_aware:
        # pylint: disable=cyclic-import
        from lmsynth.curriculum import (CurriculumSchedule, compute_pose_stats,
                                        eligible_identities)
        schedule = schedule if schedule is not None else CurriculumSchedule()
        stats = compute_pose_stats(dataset)

    logger.info("training %r on %d identities, %d generator and %d "
                "discriminator parameters", model, len(sampler.identities),
                model.generator.n_values, model.discriminator.n_values)

    history = []
    for epoch in range(config.epochs):
        lr = lr_schedule(epoch, config)
        identities = sampler.identities
        if stats is not None:
            allowed = set(eligible_identities(stats, epoch, schedule))
            identities = [identity for identity in identities
                          if identity in allowed]
            if not identities:
                raise NoEligibleIdentity(
                    "no identity is eligible at epoch {}".format(epoch))

        windows, labels = sampler.windows(rng, identities,
                                          config.pairs_per_identity)
        order = rng.permutation(len(labels))
        windows = windows[order]
        labels = labels[order]

        totals = OrderedDict()
        n_batches = 0
        for begin in range(0, len(labels), config.batch_size):
            batch = slice(begin, begin + config.batch_size)
            values = _step(model, sampler, rng, windows[batch],
                           labels[batch], lr)
            for name, value in values.items():
                totals[name] = totals.get(name, 0.0) + value
            n_batches += 1

        row = OrderedDict((name, totals[name] / n_batches)
                          for name in HISTORY_COLUMNS
                          if name in totals)
        row["epoch"] = epoch
        row["lr"] = lr
        row["n_identities"] = len(identities)
        row = OrderedDict((name, row[name]) for name in HISTORY_COLUMNS)
        history.append(row)

        logger.info("epoch %d/%d (%d identities, lr %.3g): L_D1 %.4f, L_D2 "
                    "%.4f, L_S1 %.4f, L_S2 %.4f, total %.4f", epoch + 1,
                    config.epochs, len(identities), lr, row["L_D1"],
                    row["L_D2"], row["L_S1"], row["L_S2"], row["total"])
        if callback is not None:
            callback(model, row)

    return model, history
