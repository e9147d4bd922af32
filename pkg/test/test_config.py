import json
import os

import pytest

from perr_lab import DgpParams
from perr_lab.config import (
    DEFAULTS,
    RunConfig,
    config_to_dict,
    effective_workers,
    load_config,
    parse_config,
    read_config,
    serialize_config,
    write_config,
)
from perr_lab.errors import ParseError, ValidationError


def test_minimal_config():
    config = parse_config('{"seed": 20240101}')
    assert isinstance(config, RunConfig)
    assert config.grid.master_seed == 20240101
    assert config.grid.dgp_params == DgpParams()
    assert list(config.grid.scenarios) == DEFAULTS["scenarios"]
    assert list(config.grid.dropout_targets) == DEFAULTS["dropout_rates"]
    assert config.grid.cohort_size == 100_000
    assert config.grid.n_replicates == 10_000
    assert config.workers is None
    assert config.out_dir == "output"


def test_partial_dgp():
    config = parse_config('{"seed": 1, "dgp": {"r_c": 2, "gamma_y1": 0.5}}')
    assert config.grid.dgp_params == DgpParams(r_c=2.0, gamma_y1=0.5)


def test_risk_bound_violation():
    with pytest.raises(ValidationError) as exc:
        parse_config('{"seed": 1, "dgp": {"p2": 0.3, "r_c": 2, "rr_x": 2}}')
    assert exc.value.field == "dgp.p2"
    assert "1.2 exceeds 1" in str(exc.value)


@pytest.mark.parametrize(
    "raw, field",
    [
        ({}, "seed"),
        ({"seed": 1, "replicate": 5}, "replicate"),
        ({"seed": 1, "dgp": {"beta": 1}}, "dgp.beta"),
        ({"seed": 1, "dgp": []}, "dgp"),
        ({"seed": 1, "dgp": {"p_c": "0.5"}}, "dgp.p_c"),
        ({"seed": 1, "dgp": {"p_c": 2}}, "dgp.p_c"),
        ({"seed": True}, "seed"),
        ({"seed": 2 ** 64}, "seed"),
        ({"seed": 1.5}, "seed"),
        ({"seed": 1, "scenarios": 1}, "scenarios"),
        ({"seed": 1, "scenarios": [1, 7]}, "scenarios[1]"),
        ({"seed": 1, "dropout_rates": [0.2, 0.1]}, "dropout_rates"),
        ({"seed": 1, "dropout_rates": [0.1, 0.9]}, "dropout_rates[1]"),
        ({"seed": 1, "cohort_size": 0}, "cohort_size"),
        ({"seed": 1, "replicates": False}, "replicates"),
        ({"seed": 1, "workers": 0}, "workers"),
        ({"seed": 1, "out": ""}, "out"),
    ],
)
def test_invalid_config(raw, field):
    with pytest.raises(ValidationError) as exc:
        parse_config(json.dumps(raw))
    assert exc.value.field == field


def test_malformed_config():
    for text in ['{"seed": 1', "seed: 1", b"\xff\xfe"]:
        with pytest.raises(ParseError):
            parse_config(text)
    with pytest.raises(ValidationError):
        parse_config("[1, 2]")


def test_round_trip():
    text = json.dumps(
        {
            "seed": 3,
            "dgp": {"p_c": 0.3, "alpha0": -0.5, "gamma_x": 1.25},
            "scenarios": [2, 1],
            "dropout_rates": [0.0, 0.025, 0.3],
            "cohort_size": 5000,
            "replicates": 50,
            "workers": 2,
            "out": "somewhere/else",
        }
    )
    config = parse_config(text)
    assert parse_config(serialize_config(config)) == config
    assert parse_config(serialize_config(config).encode("utf-8")) == config
    serialized = json.loads(serialize_config(config))
    assert list(serialized) == sorted(serialized)
    assert serialized == config_to_dict(config)


def test_read_write_config(perr_tmpdir, minimal_config):
    config = read_config(minimal_config)
    path = os.path.join(perr_tmpdir, "nested", "config.json")
    write_config(config, path)
    assert read_config(path) == config
    assert load_config(path) == config
    assert load_config(config) is config
    assert load_config({"seed": 20240101}) == config
    with pytest.raises(FileNotFoundError):
        read_config(os.path.join(perr_tmpdir, "missing.json"))


def test_effective_workers(minimal_config):
    config = read_config(minimal_config)
    assert effective_workers(config) == (os.cpu_count() or 1)
    with_workers = parse_config('{"seed": 1, "workers": 3}')
    assert effective_workers(with_workers) == 3
    assert effective_workers(with_workers, workers=5) == 5
    assert effective_workers(None, workers=2) == 2
