"""Convenience validator functions for generator, grid and configuration values."""

import math
from numbers import Integral, Real

from perr_lab.errors import InvalidParams

SCENARIO_IDS = (1, 2, 3, 4)
MAX_DROPOUT_TARGET = 0.5


def validate_real(name, value):
    """
    Return value as float.

    Booleans are rejected even though they are integers.

    Raises
    ------
    InvalidParams if value is not a finite real number.
    """
    if isinstance(value, bool) or not isinstance(value, Real):
        raise InvalidParams(name, f"must be a real number, not {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InvalidParams(name, f"must be finite, not {value}")
    return value


def validate_probability(name, value):
    """Return value as float if it lies within [0, 1]."""
    value = validate_real(name, value)
    if not 0.0 <= value <= 1.0:
        raise InvalidParams(name, f"must be within [0, 1], not {value}")
    return value


def validate_positive(name, value):
    """Return value as float if it is strictly positive."""
    value = validate_real(name, value)
    if value <= 0:
        raise InvalidParams(name, f"must be positive, not {value}")
    return value


def validate_positive_integer(name, value):
    """Return value as int if it is an integer >= 1."""
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise InvalidParams(name, f"must be an integer, not {value!r}")
    if value < 1:
        raise InvalidParams(name, f"must be at least 1, not {value}")
    return int(value)


def validate_nonnegative_integer(name, value):
    """Return value as int if it is an integer >= 0."""
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise InvalidParams(name, f"must be an integer, not {value!r}")
    if value < 0:
        raise InvalidParams(name, f"must not be negative, not {value}")
    return int(value)


def validate_scenario_id(name, value):
    """Return value if it is one of the four dropout scenarios."""
    if isinstance(value, bool) or value not in SCENARIO_IDS:
        raise InvalidParams(name, f"must be one of {SCENARIO_IDS}, not {value!r}")
    return int(value)


def validate_dropout_target(name, value):
    """Return value as float if it lies within [0, 0.5]."""
    value = validate_real(name, value)
    if not 0.0 <= value <= MAX_DROPOUT_TARGET:
        raise InvalidParams(
            name, f"must be within [0, {MAX_DROPOUT_TARGET}], not {value}"
        )
    return value


def validate_dropout_targets(name, values):
    """
    Return a tuple of validated dropout targets.

    Targets have to be unique and sorted ascending.
    """
    if isinstance(values, (str, bytes)) or not hasattr(values, "__iter__"):
        raise InvalidParams(name, f"must be a list, not {values!r}")
    values = tuple(
        validate_dropout_target(f"{name}[{i}]", v) for i, v in enumerate(values)
    )
    if not values:
        raise InvalidParams(name, "must not be empty")
    if any(a >= b for a, b in zip(values, values[1:])):
        raise InvalidParams(name, f"must be unique and sorted ascending: {values}")
    return values


def validate_scenario_ids(name, values):
    """Return a tuple of unique validated scenario ids."""
    if isinstance(values, (str, bytes)) or not hasattr(values, "__iter__"):
        raise InvalidParams(name, f"must be a list, not {values!r}")
    values = tuple(
        validate_scenario_id(f"{name}[{i}]", v) for i, v in enumerate(values)
    )
    if not values:
        raise InvalidParams(name, "must not be empty")
    if len(set(values)) != len(values):
        raise InvalidParams(name, f"must not contain duplicates: {values}")
    return values
