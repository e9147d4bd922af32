"""
Run configuration of a simulation experiment.

A run is configured by a JSON document::

    {
        "seed": 20240101,
        "dgp": {"p_c": 0.5, "r_c": 3.0},
        "scenarios": [1, 2, 3, 4],
        "dropout_rates": [0.0, 0.05, 0.1, 0.15, 0.2],
        "cohort_size": 100000,
        "replicates": 10000,
        "workers": null,
        "out": "output"
    }

Only ``seed`` is mandatory, every other key falls back to ``DEFAULTS`` and every
omitted ``dgp`` key to the ``DgpParams`` defaults. Unknown keys are rejected.
"""

from dataclasses import dataclass, fields
import json
import logging
import os
from numbers import Integral, Real
from typing import Optional

from perr_lab.dgp import DgpParams
from perr_lab.errors import InvalidParams, ParseError, ValidationError
from perr_lab.harness import (
    DEFAULT_COHORT_SIZE,
    DEFAULT_DROPOUT_TARGETS,
    DEFAULT_REPLICATES,
    ExperimentGrid,
)
from perr_lab.io import read_text, write_json

logger = logging.getLogger(__name__)

DEFAULTS = {
    "scenarios": [1, 2, 3, 4],
    "dropout_rates": list(DEFAULT_DROPOUT_TARGETS),
    "cohort_size": DEFAULT_COHORT_SIZE,
    "replicates": DEFAULT_REPLICATES,
    "workers": None,
    "out": "output",
}
_MANDATORY_PARAMETERS = ["seed"]
_CONFIG_KEYS = set(_MANDATORY_PARAMETERS) | set(DEFAULTS) | {"dgp"}
_DGP_KEYS = [f.name for f in fields(DgpParams)]

# ExperimentGrid field -> config key
_GRID_TO_CONFIG = {
    "master_seed": "seed",
    "scenarios": "scenarios",
    "dropout_targets": "dropout_rates",
    "cohort_size": "cohort_size",
    "n_replicates": "replicates",
}


@dataclass(frozen=True)
class RunConfig:
    """Experiment grid plus output directory and worker count."""

    grid: ExperimentGrid
    out_dir: str = DEFAULTS["out"]
    workers: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.grid, ExperimentGrid):
            raise ValidationError("grid", "must be an ExperimentGrid")
        if not isinstance(self.out_dir, str) or not self.out_dir:
            raise ValidationError("out", "must be a non-empty string")
        if self.workers is not None and (
            isinstance(self.workers, bool)
            or not isinstance(self.workers, Integral)
            or self.workers < 1
        ):
            raise ValidationError(
                "workers", f"must be null or >= 1, not {self.workers}"
            )


def _check_type(key, value, types, description):
    if isinstance(value, bool) or not isinstance(value, types):
        raise ValidationError(key, f"must be {description}, not {value!r}")


def _check_list(key, value, types, description):
    if not isinstance(value, list):
        raise ValidationError(key, f"must be a list, not {value!r}")
    for i, item in enumerate(value):
        _check_type(f"{key}[{i}]", item, types, description)


def _config_field(grid_field):
    name, _, index = grid_field.partition("[")
    if name in _GRID_TO_CONFIG:
        return _GRID_TO_CONFIG[name] + (f"[{index}" if index else "")
    return f"dgp.{grid_field}"


def config_from_dict(raw: dict) -> RunConfig:
    """
    Validate a parsed configuration and fill in defaults.

    Raises
    ------
    ValidationError naming the offending key.
    """
    if not isinstance(raw, dict):
        raise ValidationError("config", "must be a JSON object")
    for key in sorted(raw):
        if key not in _CONFIG_KEYS:
            raise ValidationError(key, "unknown configuration key")
    for key in _MANDATORY_PARAMETERS:
        if key not in raw:
            raise ValidationError(key, "is required")
    conf = dict(DEFAULTS, **{k: v for k, v in raw.items() if k != "dgp"})
    dgp = raw.get("dgp", {})
    if not isinstance(dgp, dict):
        raise ValidationError("dgp", "must be a JSON object")
    for key, value in sorted(dgp.items()):
        if key not in _DGP_KEYS:
            raise ValidationError(f"dgp.{key}", "unknown generator parameter")
        _check_type(f"dgp.{key}", value, Real, "a number")
    _check_type("seed", conf["seed"], Integral, "an integer")
    _check_type("cohort_size", conf["cohort_size"], Integral, "an integer")
    _check_type("replicates", conf["replicates"], Integral, "an integer")
    _check_list("scenarios", conf["scenarios"], Integral, "an integer")
    _check_list("dropout_rates", conf["dropout_rates"], Real, "a number")
    if conf["workers"] is not None:
        _check_type("workers", conf["workers"], Integral, "null or an integer")
    try:
        grid = ExperimentGrid(
            master_seed=conf["seed"],
            dgp_params=DgpParams(**dgp),
            scenarios=tuple(conf["scenarios"]),
            dropout_targets=tuple(conf["dropout_rates"]),
            cohort_size=conf["cohort_size"],
            n_replicates=conf["replicates"],
        )
    except InvalidParams as e:
        raise ValidationError(_config_field(e.field), e.msg)
    return RunConfig(grid=grid, out_dir=conf["out"], workers=conf["workers"])


def parse_config(text) -> RunConfig:
    """
    Parse and validate a JSON run configuration.

    Parameters
    ----------
    text : str or bytes
        UTF-8 encoded JSON document.

    Returns
    -------
    RunConfig

    Raises
    ------
    ParseError if text is not valid JSON.
    ValidationError naming the offending key if a value is invalid, e.g.
    ``dgp.p2`` if ``p2 * r_c * rr_x`` exceeds 1.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"configuration is not UTF-8 encoded: {e}")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(
            f"configuration is not valid JSON: {e.msg} "
            f"(line {e.lineno}, column {e.colno})"
        )
    return config_from_dict(raw)


def config_to_dict(config: RunConfig) -> dict:
    grid = config.grid
    return {
        "seed": grid.master_seed,
        "dgp": grid.dgp_params.to_dict(),
        "scenarios": list(grid.scenarios),
        "dropout_rates": list(grid.dropout_targets),
        "cohort_size": grid.cohort_size,
        "replicates": grid.n_replicates,
        "workers": config.workers,
        "out": config.out_dir,
    }


def serialize_config(config: RunConfig) -> str:
    """Return configuration as JSON text with sorted keys; parse_config reverses it."""
    return json.dumps(config_to_dict(config), sort_keys=True, indent=4)


def read_config(path, **kwargs) -> RunConfig:
    """Read and parse a configuration file from a local or remote path."""
    logger.debug(f"read configuration from {path}")
    return parse_config(read_text(path, **kwargs))


def write_config(config: RunConfig, path, **kwargs):
    """Write configuration to a local or remote path."""
    write_json(path, config_to_dict(config), **kwargs)


def effective_workers(config: RunConfig = None, workers: int = None) -> int:
    """
    Return the worker count to use.

    An explicit ``workers`` argument (command line option or PERR_LAB_WORKERS) wins
    over the configuration, which wins over the CPU count.
    """
    if workers is not None:
        return workers
    if config is not None and config.workers is not None:
        return config.workers
    return os.cpu_count() or 1


def load_config(config) -> RunConfig:
    """Return RunConfig from a file path, a parsed JSON object or a RunConfig."""
    if isinstance(config, RunConfig):
        return config
    elif isinstance(config, dict):
        return config_from_dict(config)
    return read_config(config)
