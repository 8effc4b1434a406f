# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.config` module reads run configuration files.

A configuration file is a JSON document whose sections configure the steps
of the pipeline::

    {
        "dataset": {"n_ids": 50, "seqs_per_id": 20, "frames_per_seq": 8},
        "lsg": {"K": 8, "epochs": 45},
        "curriculum": {"initial_threshold": 10, "increment": 5},
        "embedder": {"epochs": 30},
        "eval": {"noise_sigma": 0.02, "n_pairs": 200},
        "paths": {"data": "data.jsonl"}
    }

Every section and every key is optional, and missing values take their
default. Unknown sections and keys are rejected.
"""

from dataclasses import asdict, dataclass, field, fields
import json
import logging

from lmsynth.curriculum import CurriculumSchedule
from lmsynth.errors import ConfigError, UnknownConfigKey
from lmsynth.lsg.config import LsgConfig
from lmsynth.metrics.embedder import EmbedderConfig
from lmsynth.metrics.evaluation import EvalConfig
from lmsynth.synth.dataset import DatasetConfig

logger = logging.getLogger(__name__)


@dataclass
class PathsConfig(object):
    """Default file names of the pipeline artifacts."""
    data: str = None
    model: str = None
    embedder: str = None
    out: str = None

    def to_dict(self):
        """Returns the paths as a dict."""
        return asdict(self)


SECTIONS = (
    ("dataset", DatasetConfig),
    ("lsg", LsgConfig),
    ("curriculum", CurriculumSchedule),
    ("embedder", EmbedderConfig),
    ("eval", EvalConfig),
    ("paths", PathsConfig),
)


@dataclass
class RunConfig(object):
    """The configuration of a run: one configuration object per section."""
    # pylint: disable=too-many-instance-attributes
    dataset: DatasetConfig = field(default_factory=DatasetConfig)
    lsg: LsgConfig = field(default_factory=LsgConfig)
    curriculum: CurriculumSchedule = field(default_factory=CurriculumSchedule)
    embedder: EmbedderConfig = field(default_factory=EmbedderConfig)
    eval: EvalConfig = field(default_factory=EvalConfig)
    paths: PathsConfig = field(default_factory=PathsConfig)

    def to_dict(self):
        """Returns the complete configuration, defaults included, as a dict
        (the configuration echo of the artifacts)."""
        return {name: getattr(self, name).to_dict() for name, _ in SECTIONS}

    @classmethod
    def from_dict(cls, document):
        """Builds a configuration from a dict.

        :raises UnknownConfigKey: if a section or a key is unknown.
        :raises ConfigError: if a value is invalid.
        """
        if not isinstance(document, dict):
            raise ConfigError("a configuration should be a JSON object")
        sections = dict(SECTIONS)
        unknown = sorted(set(document) - set(sections))
        if unknown:
            raise UnknownConfigKey('unknown configuration section "{}"'.format(
                unknown[0]))

        values = {}
        for name, section_class in SECTIONS:
            section = document.get(name, {})
            if not isinstance(section, dict):
                raise ConfigError('the "{}" section should be a JSON '
                                  'object'.format(name))
            known = {f.name for f in fields(section_class)}
            unknown = sorted(set(section) - known)
            if unknown:
                raise UnknownConfigKey('unknown configuration key "{}.{}"'.
                                       format(name, unknown[0]))
            try:
                values[name] = section_class(**section)
            except TypeError as error:
                raise ConfigError('invalid "{}" section: {}'.format(name,
                                                                  error))
        return cls(**values)


def _read_json(path):
    try:
        with open(path, "r", encoding="utf-8") as config_file:
            return json.load(config_file)
    except (OSError, ValueError) as error:
        raise ConfigError("cannot read the configuration {}: {}".format(
            path, error))


def load_schedule(path):
    """Reads a curriculum schedule: either the ``curriculum`` section of a
    run configuration file, or a JSON object holding only the fields of a
    :class:`~lmsynth.curriculum.CurriculumSchedule`.

    :raises ConfigError: if the file cannot be read or is invalid.
    :raises UnknownConfigKey: if it contains an unknown key.
    """
    document = _read_json(path)
    if isinstance(document, dict) and \
            set(document) & {name for name, _ in SECTIONS}:
        return RunConfig.from_dict(document).curriculum
    return RunConfig.from_dict({"curriculum": document}).curriculum


def load_config(path=None):
    """Reads a configuration file.

    :param path: the name of the JSON file, or ``None`` for the default
        configuration.
    :returns: a :class:`RunConfig`.
    :raises ConfigError: if the file cannot be read or is invalid.
    :raises UnknownConfigKey: if it contains an unknown section or key.
    """
    if path is None:
        return RunConfig()

    config = RunConfig.from_dict(_read_json(path))
    logger.info("loaded the configuration %s", path)
    return config
