# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.metrics.evaluation` module compares the identity
preservation of the landmark sequence generator (LSG) with the linear
interpolation (LI) of the same endpoints.

Pairs of endpoint frames are drawn from the sequences of a held-out dataset
and perturbed by Gaussian noise. Both methods generate a sequence from the
noisy endpoints, and every generated frame is compared with the clean
reference of its identity: the mean embedding of the real frames of that
identity. The CSIM scores are computed with a landmark identity embedder
(see :mod:`lmsynth.metrics.embedder`), which stands in for a face
recognition network.
"""

from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
import logging

import numpy as np

from lmsynth.errors import ConfigError, DatasetTooSmall, InvalidK
from lmsynth.landmarks.frame import LandmarkFrame
from lmsynth.landmarks.interpolate import upsample_linear
from lmsynth.lsg.model import synthesize
from .histogram import csim_histogram
from .raster import rasterize_landmarks
from .similarity import GaussianStats, csim, frechet_distance, ssim

logger = logging.getLogger(__name__)

REPORT_FORMAT = "lmsynth-eval-report"
REPORT_VERSION = 1
METHODS = ("li", "lsg")
REPORT_NOTE = ("CSIM is measured with a landmark identity embedder, not with "
               "a face recognition network on reenacted images; the Frechet "
               "distance is computed over the same landmark embeddings.")


@dataclass
class EvalConfig(object):
    """The parameters of :func:`eval_identity_preservation`.

    :param noise_sigma: the standard deviation of the noise added to the
        endpoints.
    :param n_pairs: the number of endpoint pairs.
    :param seed: the seed of the pair sampling and of the noise.
    :param K: the number of generated frames (the ``K`` of the model if
        ``None``).
    :param bins: the number of bins of the CSIM histograms.
    :param raster_size: the side of the rasters compared with SSIM (0 to
        skip SSIM).
    :raises ConfigError: if a parameter is out of range.
    """
    # pylint: disable=invalid-name
    noise_sigma: float = 0.02
    n_pairs: int = 200
    seed: int = 0
    K: int = None
    bins: int = 20
    raster_size: int = 64

    def __post_init__(self):
        if self.noise_sigma < 0:
            raise ConfigError("eval.noise_sigma should be non-negative, got "
                              "{}".format(self.noise_sigma))
        if self.n_pairs < 1 or self.bins < 1:
            raise ConfigError("eval.n_pairs and eval.bins should be at least "
                              "1")
        if self.K is not None and self.K < 2:
            raise InvalidK("eval.K should be at least 2, got {}".format(
                self.K))
        if self.raster_size != 0 and self.raster_size < 16:
            raise ConfigError("eval.raster_size should be 0 or at least 16, "
                              "got {}".format(self.raster_size))

    def to_dict(self):
        """Returns the configuration as a dict."""
        return asdict(self)


class _Pair(object):
    """An endpoint pair: the clean window, its identity and the noisy
    endpoints."""
    # pylint: disable=too-few-public-methods
    def __init__(self, identity, window, start, end):
        self.identity = identity
        self.window = window
        self.start = start
        self.end = end


def _draw_pairs(dataset, K, config):
    records = [record for record in dataset if len(record) >= K]
    if not records:
        raise DatasetTooSmall("no held-out sequence has {} frames".format(K))

    by_identity = OrderedDict()
    for record in sorted(records, key=lambda r: (r.identity, r.seq)):
        by_identity.setdefault(record.identity, []).append(record)
    identities = list(by_identity.keys())

    rng = np.random.default_rng(config.seed)
    pairs = []
    for _ in range(config.n_pairs):
        identity = identities[rng.integers(len(identities))]
        candidates = by_identity[identity]
        record = candidates[rng.integers(len(candidates))]
        offset = rng.integers(len(record) - K + 1)
        window = record.frames[offset:offset + K]
        noise = rng.normal(0.0, config.noise_sigma, size=(2,) +
                           window.shape[1:]) \
            if config.noise_sigma > 0 else np.zeros((2,) + window.shape[1:])
        pairs.append(_Pair(identity, window, window[0] + noise[0],
                           window[-1] + noise[1]))
    return pairs


def _references(dataset, embedder, identities):
    return {identity: embedder.embed(dataset.frames_of(identity)).mean(axis=0)
            for identity in sorted(set(identities))}


def _endpoint_error(frames, window):
    """Root mean square coordinate error of the two endpoints."""
    diff = np.stack([frames[0] - window[0], frames[-1] - window[-1]])
    return float(np.sqrt(np.mean(diff ** 2)))


def _smoothness(frames):
    """Mean displacement of the points between consecutive frames."""
    return float(np.mean(np.linalg.norm(np.diff(frames, axis=0), axis=2)))


def _interior(frames):
    return frames[1:-1] if len(frames) > 2 else frames


class _PairEvaluator(object):
    """Evaluates both methods on a pair. Shared read-only by the workers."""
    # pylint: disable=too-few-public-methods
    def __init__(self, model, embedder, references, K, raster_size):
        # pylint: disable=too-many-arguments
        self.model = model
        self.embedder = embedder
        self.references = references
        self.K = K
        self.raster_size = raster_size

    def _raster(self, frame):
        return rasterize_landmarks(frame, self.raster_size, self.raster_size)

    def __call__(self, pair):
        start = LandmarkFrame(pair.start)
        end = LandmarkFrame(pair.end)
        sequences = {
            "li": upsample_linear(start, end, self.K).to_array(),
            "lsg": synthesize(start, end, self.model, self.K).to_array(),
        }
        reference = self.references[pair.identity]
        real_rasters = None
        if self.raster_size:
            real_rasters = [self._raster(frame)
                            for frame in _interior(pair.window)]

        result = {"real_embeddings": self.embedder.embed(pair.window)}
        for method, frames in sequences.items():
            embeddings = self.embedder.embed(frames)
            values = {
                "csim": [csim(embedding, reference)
                         for embedding in embeddings],
                "embeddings": embeddings,
                "endpoint_error": _endpoint_error(frames, pair.window),
                "smoothness": _smoothness(frames),
            }
            if real_rasters is not None:
                values["ssim"] = float(np.mean([
                    ssim(self._raster(frame), real)
                    for frame, real in zip(_interior(frames), real_rasters)]))
            result[method] = values
        return result


def _method_summary(results, method, real_stats, bins):
    csims = np.array([r[method]["csim"] for r in results])
    summary = OrderedDict()
    summary["csim_mean"] = float(np.mean(csims))
    summary["csim_median"] = float(np.median(csims))
    summary["per_frame_csim_median"] = [float(v) for v in
                                        np.median(csims, axis=0)]
    summary["endpoint_error"] = float(np.median(
        [r[method]["endpoint_error"] for r in results]))
    summary["smoothness"] = float(np.mean(
        [r[method]["smoothness"] for r in results]))
    if "ssim" in results[0][method]:
        summary["ssim_mean"] = float(np.mean([r[method]["ssim"]
                                              for r in results]))
    if real_stats is not None:
        summary["frechet"] = frechet_distance(real_stats, GaussianStats.
                                              from_features(np.concatenate(
                                                  [r[method]["embeddings"]
                                                   for r in results])))
    histogram = csim_histogram(csims.ravel(), bins)
    summary["histogram"] = OrderedDict([
        ("edges", [float(v) for v in histogram.edges]),
        ("counts", [int(v) for v in histogram.counts])])
    return summary


def eval_identity_preservation(dataset_heldout, lsg_model, embedder,
                               noise_sigma=None, seed=None, config=None,
                               workers=1):
    """Compares the identity preservation of the generator with the linear
    interpolation baseline.

    The report holds, for each method (``"li"`` and ``"lsg"``): the mean and
    median CSIM of the generated frames, the median CSIM of each frame
    index, the CSIM histogram, the median endpoint error (root mean square
    coordinate difference between the generated endpoints and the clean
    ones), the mean displacement between consecutive frames, the mean SSIM
    of the rasters of the generated and real interior frames, and the
    Fréchet distance between the statistics of the embeddings of the real
    and generated frames.

    The result does not depend on the number of workers.

    :param dataset_heldout: a
        :class:`~lmsynth.landmarks.dataset.LandmarkDataset`.
    :param lsg_model: an :class:`~lmsynth.lsg.model.LsgModel`.
    :param embedder: an :class:`~lmsynth.metrics.embedder.EmbeddingModel`.
    :param noise_sigma: overrides ``config.noise_sigma``.
    :param seed: overrides ``config.seed``.
    :param config: an :class:`EvalConfig` (the default one if ``None``).
    :param workers: the number of threads evaluating the pairs.
    :returns: the report, as an ordered dict.
    :raises DatasetTooSmall: if no held-out sequence is long enough.
    """
    # pylint: disable=too-many-arguments,too-many-locals
    config = config if config is not None else EvalConfig()
    if noise_sigma is not None:
        config = replace(config, noise_sigma=noise_sigma)
    if seed is not None:
        config = replace(config, seed=seed)
    if workers < 1:
        raise ConfigError("the number of workers should be at least 1, got "
                          "{}".format(workers))
    K = config.K if config.K is not None else lsg_model.config.K

    pairs = _draw_pairs(dataset_heldout, K, config)
    references = _references(dataset_heldout, embedder,
                             [pair.identity for pair in pairs])
    evaluator = _PairEvaluator(lsg_model, embedder, references, K,
                               config.raster_size)

    logger.info("evaluating %d pairs (K=%d, sigma=%g) with %d workers",
                len(pairs), K, config.noise_sigma, workers)
    if workers == 1:
        results = [evaluator(pair) for pair in pairs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(evaluator, pairs))

    real_embeddings = np.concatenate([r["real_embeddings"] for r in results])
    real_stats = GaussianStats.from_features(real_embeddings) \
        if len(real_embeddings) >= 2 else None

    report = OrderedDict()
    report["format"] = REPORT_FORMAT
    report["version"] = REPORT_VERSION
    report["note"] = REPORT_NOTE
    report["config"] = dict(config.to_dict(), K=K)
    report["n_pairs"] = len(pairs)
    report["n_identities"] = len(references)
    report["methods"] = OrderedDict(
        (method, _method_summary(results, method, real_stats, config.bins))
        for method in METHODS)
    report["csim_gain"] = (report["methods"]["lsg"]["csim_mean"] -
                           report["methods"]["li"]["csim_mean"])

    logger.info("mean CSIM: LI %.4f, LSG %.4f", report["methods"]["li"][
        "csim_mean"], report["methods"]["lsg"]["csim_mean"])
    return report
