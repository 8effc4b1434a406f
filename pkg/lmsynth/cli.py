# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.cli` module provides the ``lmsynth`` command, which runs
the steps of the pipeline:

- ``gen-data``: generate a synthetic dataset;
- ``train-embedder``: train the landmark identity embedder;
- ``train-lsg``: train the landmark sequence generator;
- ``synth``: generate a sequence between two frames;
- ``manipulate``: sweep an attribute of a synthetic face;
- ``eval``: compare the identity preservation of the generator and of the
  linear interpolation;
- ``render``: render the frames of a record file;
- ``curriculum-stats``: print the identities eligible at each epoch of the
  pose-aware curriculum.

Errors are reported on a single line of the standard error, ``error <code>
<name>: <message>``, and the exit code is 2 for configuration errors, 3 for
data errors and 4 for numeric failures.
"""

import argparse
from collections import OrderedDict
from dataclasses import replace
import json
import logging
import os
import sys

from lmsynth import __version__
from lmsynth.config import load_config, load_schedule
from lmsynth.curriculum import compute_pose_stats, eligibility_table
from lmsynth.errors import ConfigError, DataError, LmsynthError
from lmsynth.io import records, render, tables
from lmsynth.landmarks.interpolate import upsample_linear
from lmsynth.landmarks.pose import PoseAngles
from lmsynth.lsg.model import LsgModel, synthesize
from lmsynth.lsg.training import HISTORY_COLUMNS, train_lsg
from lmsynth.metrics.embedder import EmbeddingModel, train_id_embedder
from lmsynth.metrics.evaluation import eval_identity_preservation
from lmsynth.synth.dataset import identity_table
from lmsynth.synth.face import (ExpressionParams, IdentityParams,
                                manipulate_attribute)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"
HISTORY_FORMAT = "lmsynth-history"
STATS_FORMAT = "lmsynth-curriculum"
HISTOGRAM_FORMAT = "lmsynth-histogram"
EMBEDDER_REPORT_FORMAT = "lmsynth-embedder-report"
TABLE_VERSION = 1


def _header(table_format, config):
    return OrderedDict([("format", table_format), ("version", TABLE_VERSION),
                        ("config", config)])


def _write_json(filename, document):
    with open(filename, "w", encoding="utf-8") as output:
        json.dump(document, output, indent=2)
        output.write("\n")


def _stem(filename):
    return os.path.splitext(filename)[0]


def _heldout(dataset, holdout_seqs):
    """Returns the training and held-out parts of a dataset."""
    if holdout_seqs <= 0:
        return dataset, dataset
    return dataset.split(holdout_seqs)


def gen_data(args):
    """Generates a synthetic dataset and its identity sidecar."""
    config = load_config(args.config)
    dataset_config = config.dataset
    if args.seed is not None:
        dataset_config = replace(dataset_config, seed=args.seed)

    dataset = dataset_config.generate()
    echo = {"dataset": dataset_config.to_dict()}
    records.write_dataset(args.out, dataset, echo)

    identities = args.identities or _stem(args.out) + ".identities.json"
    records.write_identities(identities, identity_table(dataset), echo)
    print("wrote {} sequences of {} identities to {}".format(
        len(dataset), len(dataset.identities), args.out))


def train_embedder(args):
    """Trains the identity embedder and writes its accuracy report."""
    config = load_config(args.config)
    if args.holdout_seqs is not None:
        config.embedder = replace(config.embedder,
                                  holdout_seqs=args.holdout_seqs)

    dataset = records.read_dataset(args.data)
    model = train_id_embedder(dataset, config.embedder)
    model.save(args.out)

    report = args.report or _stem(args.out) + ".report.json"
    document = _header(EMBEDDER_REPORT_FORMAT, config.embedder.to_dict())
    document["data"] = args.data
    document["classes"] = len(model.classes)
    document["heldout_accuracy"] = model.heldout_accuracy
    _write_json(report, document)
    print("held-out accuracy: {:.4f}".format(model.heldout_accuracy))


def train(args):
    """Trains the landmark sequence generator and writes its history."""
    config = load_config(args.config)
    if args.pose_aware:
        config.lsg = replace(config.lsg, pose_aware=True)
    if args.epochs is not None:
        config.lsg = replace(config.lsg, epochs=args.epochs)

    dataset = records.read_dataset(args.data)
    train_set, _ = _heldout(dataset, args.holdout_seqs)
    model, history = train_lsg(train_set, config.lsg, config.curriculum)
    model.save(args.out)

    history_file = args.history or _stem(args.out) + ".history.csv"
    echo = {"lsg": config.lsg.to_dict(),
            "curriculum": config.curriculum.to_dict(),
            "holdout_seqs": args.holdout_seqs}
    tables.write_csv(history_file, history, HISTORY_COLUMNS,
                     _header(HISTORY_FORMAT, echo))
    if history:
        print("final total loss: {:.4f}".format(history[-1]["total"]))


def synth(args):
    """Generates a sequence between two frames."""
    start = records.read_frame(args.a)
    end = records.read_frame(args.b)
    model = LsgModel.load(args.model) if args.model else None
    K = args.k
    if K is None:
        if model is None:
            raise ConfigError("--k is needed when no model is given")
        K = model.config.K

    if args.baseline == "li":
        sequence = upsample_linear(start, end, K)
    else:
        if model is None:
            raise ConfigError("--model is needed without --baseline li")
        sequence = synthesize(start, end, model, K)
    logger.info("generated %d frames with %s", K,
                "linear interpolation" if args.baseline else "the generator")

    records.write_sequence(args.out, sequence,
                           {"K": K, "a": args.a, "b": args.b})
    directory = args.render or _stem(args.out) + "_frames"
    render.render_sequence(sequence, directory)
    print("wrote {} frames to {}".format(K, args.out))


def manipulate(args):
    """Sweeps an attribute of a synthetic face."""
    identity = IdentityParams()
    if args.identities is not None:
        table = records.read_identities(args.identities)
        if args.id not in table:
            raise DataError("identity {} is not in {}".format(
                args.id, args.identities))
        identity = table[args.id]
    pose = PoseAngles(args.yaw, args.pitch, args.roll)

    sequence = manipulate_attribute(identity, ExpressionParams(), pose,
                                    args.attr, args.steps)
    echo = {"attr": args.attr, "steps": args.steps, "pose": pose.to_dict(),
            "identity": identity.to_dict()}
    records.write_sequence(args.out, sequence, echo, identity=args.id)
    if args.render:
        render.render_sequence(sequence, args.render)
    print("wrote {} frames to {}".format(args.steps, args.out))


def evaluate(args):
    """Compares the generator with the linear interpolation."""
    config = load_config(args.config)
    eval_config = config.eval
    if args.pairs is not None:
        eval_config = replace(eval_config, n_pairs=args.pairs)
    if args.noise_sigma is not None:
        eval_config = replace(eval_config, noise_sigma=args.noise_sigma)

    dataset = records.read_dataset(args.data)
    _, heldout = _heldout(dataset, args.holdout_seqs)
    model = LsgModel.load(args.model)
    embedder = EmbeddingModel.load(args.embedder)

    report = eval_identity_preservation(heldout, model, embedder,
                                        config=eval_config,
                                        workers=args.workers)
    report["paths"] = {"data": args.data, "model": args.model,
                       "embedder": args.embedder}
    report["holdout_seqs"] = args.holdout_seqs
    _write_json(args.out, report)

    histograms = OrderedDict((method, summary["histogram"])
                             for method, summary in report["methods"].items())
    tables.write_csv(_stem(args.out) + ".histogram.csv",
                     tables.histogram_rows(histograms),
                     ["bin_start", "bin_end"] + list(histograms),
                     _header(HISTOGRAM_FORMAT, report["config"]))
    tables.write_histogram_svg(_stem(args.out) + ".histogram.svg",
                               histograms, title="CSIM")

    for method, summary in report["methods"].items():
        print("{}: mean CSIM {:.4f}, endpoint error {:.4f}".format(
            method, summary["csim_mean"], summary["endpoint_error"]))


def _raster_size(text):
    try:
        height, width = (int(value) for value in text.lower().split("x"))
    except ValueError:
        raise ConfigError('--raster should be HxW, got "{}"'.format(text))
    return height, width


def render_records(args):
    """Renders the frames of a record file."""
    raster = _raster_size(args.raster) if args.raster else None
    with records.RecordReader(args.seq) as reader:
        items = list(reader)
    if not items:
        raise DataError("{} holds no record".format(args.seq))

    for record in items:
        directory = args.out
        if len(items) > 1:
            directory = os.path.join(args.out, "id{:03d}_seq{:03d}".format(
                record.identity, record.seq))
        render.render_sequence(record.to_sequence(), directory,
                               raster=raster)


def curriculum_stats(args):
    """Prints the eligible identities of each epoch."""
    config = load_config(args.config)
    schedule = load_schedule(args.schedule) if args.schedule \
        else config.curriculum
    epochs = args.epochs if args.epochs is not None else config.lsg.epochs

    dataset = records.read_dataset(args.data)
    stats = compute_pose_stats(dataset, use_labels=not args.estimate)
    rows = eligibility_table(stats, schedule, epochs)
    header = _header(STATS_FORMAT, {"curriculum": schedule.to_dict(),
                                    "epochs": epochs})

    if args.stats_out:
        tables.write_csv(args.stats_out, tables.stats_rows(stats),
                         ["id", "yaw_range", "pitch_range"], header)
    columns = ["epoch", "threshold", "eligible", "identities"]
    if args.out:
        tables.write_csv(args.out, rows, columns, header)
    else:
        sys.stdout.write(",".join(columns) + "\n")
        for row in rows:
            sys.stdout.write(",".join(str(row[c]) for c in columns) + "\n")


def build_parser():
    """Returns the :class:`argparse.ArgumentParser` of the command."""
    # pylint: disable=too-many-statements
    parser = argparse.ArgumentParser(
        prog="lmsynth",
        description="Identity-preserving facial landmark sequence "
                    "synthesis.")
    parser.add_argument("--version", action="version",
                        version="%(prog)s {}".format(__version__))
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log INFO messages (-vv for DEBUG messages)")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    command = subparsers.add_parser("gen-data",
                                    help="generate a synthetic dataset")
    command.add_argument("--config", help="the run configuration (JSON)")
    command.add_argument("--out", required=True, help="the record file")
    command.add_argument("--seed", type=int,
                         help="override the seed of the configuration")
    command.add_argument("--identities",
                         help="the identity sidecar file (default: "
                              "<out>.identities.json)")
    command.set_defaults(func=gen_data)

    command = subparsers.add_parser("train-embedder",
                                    help="train the identity embedder")
    command.add_argument("--data", required=True, help="the record file")
    command.add_argument("--out", required=True, help="the checkpoint")
    command.add_argument("--config", help="the run configuration (JSON)")
    command.add_argument("--holdout-seqs", type=int,
                         help="held-out sequences per identity")
    command.add_argument("--report", help="the accuracy report (default: "
                                          "<out>.report.json)")
    command.set_defaults(func=train_embedder)

    command = subparsers.add_parser("train-lsg",
                                    help="train the sequence generator")
    command.add_argument("--data", required=True, help="the record file")
    command.add_argument("--out", required=True, help="the checkpoint")
    command.add_argument("--config", help="the run configuration (JSON)")
    command.add_argument("--epochs", type=int,
                         help="override the number of epochs")
    command.add_argument("--pose-aware", action="store_true",
                         help="use the pose-aware curriculum")
    command.add_argument("--holdout-seqs", type=int, default=2,
                         help="sequences per identity left out of training "
                              "(default: 2)")
    command.add_argument("--history", help="the loss history (default: "
                                           "<out>.history.csv)")
    command.set_defaults(func=train)

    command = subparsers.add_parser("synth",
                                    help="generate a sequence between two "
                                         "frames")
    command.add_argument("--model", help="the generator checkpoint")
    command.add_argument("--a", required=True, help="the first frame (JSON)")
    command.add_argument("--b", required=True, help="the last frame (JSON)")
    command.add_argument("--k", type=int, help="the number of frames")
    command.add_argument("--out", required=True, help="the record file")
    command.add_argument("--baseline", choices=["li"],
                         help="use the linear interpolation baseline")
    command.add_argument("--render", help="the directory of the SVG frames "
                                          "(default: <out>_frames)")
    command.set_defaults(func=synth)

    command = subparsers.add_parser("manipulate",
                                    help="sweep an attribute of a face")
    command.add_argument("--attr", required=True,
                         help="the attribute, e.g. nose_width")
    command.add_argument("--steps", type=int, required=True,
                         help="the number of frames")
    command.add_argument("--out", required=True, help="the record file")
    command.add_argument("--identities", help="an identity sidecar file")
    command.add_argument("--id", type=int, default=0,
                         help="the identity of the sidecar (default: 0)")
    command.add_argument("--yaw", type=float, default=0.0)
    command.add_argument("--pitch", type=float, default=0.0)
    command.add_argument("--roll", type=float, default=0.0)
    command.add_argument("--render", help="a directory for SVG frames")
    command.set_defaults(func=manipulate)

    command = subparsers.add_parser("eval",
                                    help="compare the generator with linear "
                                         "interpolation")
    command.add_argument("--data", required=True, help="the record file")
    command.add_argument("--model", required=True,
                         help="the generator checkpoint")
    command.add_argument("--embedder", required=True,
                         help="the embedder checkpoint")
    command.add_argument("--out", required=True, help="the JSON report")
    command.add_argument("--config", help="the run configuration (JSON)")
    command.add_argument("--holdout-seqs", type=int, default=2,
                         help="evaluate on the last sequences of each "
                              "identity (default: 2, 0 for all)")
    command.add_argument("--pairs", type=int, help="the number of pairs")
    command.add_argument("--noise-sigma", type=float,
                         help="the endpoint noise")
    command.add_argument("--workers", type=int, default=1,
                         help="the number of threads (default: 1)")
    command.set_defaults(func=evaluate)

    command = subparsers.add_parser("render", help="render a record file")
    command.add_argument("--seq", required=True, help="the record file")
    command.add_argument("--out", required=True, help="the directory")
    command.add_argument("--raster", help="also write HxW PGM rasters")
    command.set_defaults(func=render_records)

    command = subparsers.add_parser("curriculum-stats",
                                    help="print the eligible identities of "
                                         "each epoch")
    command.add_argument("--data", required=True, help="the record file")
    command.add_argument("--schedule",
                         help="the schedule, or a run configuration (JSON)")
    command.add_argument("--config", help="the run configuration (JSON)")
    command.add_argument("--epochs", type=int, help="the number of epochs")
    command.add_argument("--estimate", action="store_true",
                         help="estimate the poses instead of reading them")
    command.add_argument("--out", help="the CSV file (default: stdout)")
    command.add_argument("--stats-out", help="a CSV file for the pose "
                                             "ranges of the identities")
    command.set_defaults(func=curriculum_stats)

    return parser


def main(argv=None):
    """Runs the ``lmsynth`` command and returns its exit code."""
    args = build_parser().parse_args(argv)

    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT)

    try:
        args.func(args)
    except LmsynthError as error:
        sys.stderr.write("error {} {}: {}\n".format(error.exit_code,
                                                     error.name, error))
        return error.exit_code
    except OSError as error:
        sys.stderr.write("error {} {}: {}\n".format(
            DataError.exit_code, type(error).__name__, error))
        return DataError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
