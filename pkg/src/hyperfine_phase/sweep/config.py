"""Declarative sweep configuration.

A configuration is a flat file with one ``key = value`` per line and ``#``
comments. A value written as a TOML literal (a number, quoted string,
boolean, list or inline table) is read with :mod:`tomllib`. Anything else
is kept as a bare string and read the same way as a command-line value,
which uses a compact syntax for grids: ``1,2,3`` for a list or
``start:stop:count`` for a range::

    scenario = fig3
    J = {start = -10, stop = 10, count = 201}
    C = 1
    beta = 0.5, 1.0
    t = 0:10:201
    outputs = gamma_g, magnitude
    dynamical_h = post

"""
from __future__ import annotations

import dataclasses
import importlib.resources
import itertools
import logging
import math
import tomllib
from enum import StrEnum
from typing import Any, Iterator, Mapping, NamedTuple

import numpy as np

from hyperfine_phase.constants import (
    DEFAULT_MAX_ROWS,
    DEFAULT_ORACLE_STEPS,
    DEFAULT_TOLERANCES,
    MIN_ORACLE_STEPS,
    Tolerances,
)
from hyperfine_phase.errors import ConfigParseError, GridTooLarge
from hyperfine_phase.physics.geomphase import DynamicalHamiltonian

log = logging.getLogger(__name__)

SCENARIO_PACKAGE = "hyperfine_phase.sweep.scenarios"
SCENARIO_SUFFIX = ".conf"


class Output(StrEnum):
    """A quantity that a sweep can be asked to emit."""

    gamma_g = "gamma_g"
    gamma_g_unwrapped = "gamma_g_unwrapped"
    magnitude = "magnitude"
    concurrence = "concurrence"
    populations = "populations"


DEFAULT_OUTPUTS = frozenset(
    {Output.gamma_g, Output.gamma_g_unwrapped, Output.magnitude, Output.concurrence}
)

PHASE_OUTPUTS = frozenset({Output.gamma_g, Output.gamma_g_unwrapped, Output.magnitude})


class GridPoint(NamedTuple):
    """One combination of parameters in a sweep."""

    J: float
    C: float
    D: float
    epsilon: float
    beta: float
    t: float


GRID_KEYS = GridPoint._fields
"""The grid parameters, outermost first."""

DEFAULT_GRIDS: dict[str, tuple[float, ...]] = {
    "J": (1.0,),
    "C": (1.0,),
    "D": (0.0,),
    "epsilon": (0.0,),
    "beta": (1.0,),
    "t": (0.0,),
}

SCALAR_KEYS = frozenset(
    {
        "scenario",
        "outputs",
        "oracle_check",
        "steps",
        "extrapolate",
        "dynamical_h",
        "threads",
        "max_rows",
    }
)
TOLERANCE_PREFIX = "tol_"


@dataclasses.dataclass(frozen=True)
class SweepConfig:
    """A parameter grid and what to compute at each of its points."""

    scenario: str = "custom"
    """The name of the shipped scenario this came from, or ``"custom"``."""

    grids: Mapping[str, tuple[float, ...]] = dataclasses.field(
        default_factory=lambda: dict(DEFAULT_GRIDS)
    )
    """The values of each parameter in :data:`GRID_KEYS`."""

    outputs: frozenset[Output] = DEFAULT_OUTPUTS
    """The quantities to compute; unrequested columns are left empty."""

    oracle_check: bool = False
    """Also evaluate the integrated phase and emit its difference."""

    steps: int = DEFAULT_ORACLE_STEPS
    """The number of intervals used by the integrated phase."""

    extrapolate: bool = True
    """Whether the integrated phase uses Richardson extrapolation."""

    dynamical_h: DynamicalHamiltonian = DynamicalHamiltonian.post
    """Which Hamiltonian the dynamical-phase factor uses."""

    threads: int = 1
    """How many worker threads evaluate grid points."""

    max_rows: int = DEFAULT_MAX_ROWS
    """The largest grid accepted."""

    tolerances: Tolerances = DEFAULT_TOLERANCES
    """The numerical tolerances to use."""

    @property
    def size(self) -> int:
        """The number of grid points, and therefore rows."""
        return math.prod(len(self.grids[key]) for key in GRID_KEYS)

    def validate(self) -> None:
        """Checks the configuration for consistency.

        :raises ConfigParseError: A field has an unusable value.
        :raises GridTooLarge: The grid exceeds :attr:`max_rows`.

        """
        source = f"scenario {self.scenario!r}"
        for key in GRID_KEYS:
            values = self.grids.get(key)
            if not values:
                raise ConfigParseError(source, f"grid {key!r} is empty")
        if self.threads < 1:
            raise ConfigParseError(source, "threads must be at least 1")
        if self.oracle_check and self.steps < MIN_ORACLE_STEPS:
            raise ConfigParseError(source, f"steps must be at least {MIN_ORACLE_STEPS}")
        if Output.gamma_g_unwrapped in self.outputs:
            times = self.grids["t"]
            if any(b <= a for a, b in itertools.pairwise(times)):
                raise ConfigParseError(
                    source, "unwrapping requires a strictly increasing t grid"
                )
        if self.size > self.max_rows:
            raise GridTooLarge(self.size, self.max_rows)

    def series(self) -> Iterator[tuple[tuple[float, ...], tuple[float, ...]]]:
        """Yields each combination of the non-time parameters with the time grid.

        The order is row-major with ``J`` outermost, so concatenating the
        series gives every grid point with ``t`` innermost.

        """
        outer = [self.grids[key] for key in GRID_KEYS[:-1]]
        for combination in itertools.product(*outer):
            yield combination, self.grids["t"]

    def points(self) -> Iterator[GridPoint]:
        """Yields every grid point in row-major order."""
        for combination, times in self.series():
            for t in times:
                yield GridPoint(*combination, t)


def parse_config_text(text: str, source: str) -> dict[str, Any]:
    """Parses a configuration file into raw key-value pairs.

    Each non-blank line that is not a comment must read ``key = value``.
    The value is read as a TOML literal when it is one and is otherwise
    kept as a bare string with any trailing ``#`` comment removed, so
    ``dynamical_h = pre`` and ``t = 0:10:201`` both work.

    :raises ConfigParseError: A line is malformed or a key is repeated.

    """
    raw: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue

        key, sep, rest = stripped.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigParseError(source, f"line {lineno}: expected 'key = value'")
        if not key.isidentifier():
            raise ConfigParseError(source, f"line {lineno}: invalid key {key!r}")
        if key in raw:
            raise ConfigParseError(source, f"line {lineno}: duplicate key {key!r}")

        raw[key] = _parse_value(rest, f"{source}, line {lineno}")
    return raw


def _parse_value(text: str, where: str) -> Any:
    try:
        return tomllib.loads(f"value = {text}")["value"]
    except tomllib.TOMLDecodeError as e:
        literal_error = str(e)

    value = text.split("#", 1)[0].strip()
    if not value:
        raise ConfigParseError(where, "missing value")
    if value[0] in "\"'[{" or "=" in value:
        raise ConfigParseError(where, literal_error)
    return value


def load_config_file(path: str) -> dict[str, Any]:
    """Reads and parses a configuration file from disk."""
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ConfigParseError(path, e.strerror or str(e)) from None
    return parse_config_text(text, path)


def list_scenarios() -> list[str]:
    """Returns the names of the shipped figure scenarios."""
    files = importlib.resources.files(SCENARIO_PACKAGE)
    return sorted(
        f.name.removesuffix(SCENARIO_SUFFIX)
        for f in files.iterdir()
        if f.name.endswith(SCENARIO_SUFFIX)
    )


def load_scenario(name: str) -> dict[str, Any]:
    """Reads the raw key-value pairs of a shipped scenario.

    :raises ConfigParseError: No scenario has that name.

    """
    if name not in list_scenarios():
        available = ", ".join(list_scenarios())
        raise ConfigParseError(name, f"unknown scenario (available: {available})")
    resource = importlib.resources.files(SCENARIO_PACKAGE).joinpath(name + SCENARIO_SUFFIX)
    raw = parse_config_text(resource.read_text(encoding="utf-8"), name)
    raw.setdefault("scenario", name)
    return raw


def merge_overrides(base: Mapping[str, Any], overrides: Mapping[str, Any]) -> dict[str, Any]:
    """Returns *base* with *overrides* applied on top.

    ``beta`` and ``T`` describe the same axis, so overriding either one
    discards both from *base*.

    """
    merged = dict(base)
    for key, value in overrides.items():
        if key in ("beta", "T"):
            merged.pop("beta", None)
            merged.pop("T", None)
        merged[key] = value
    return merged


def build_config(raw: Mapping[str, Any], source: str = "<config>") -> SweepConfig:
    """Turns raw key-value pairs into a validated :class:`SweepConfig`.

    :raises ConfigParseError: A key is unknown or a value has the wrong form.
    :raises GridTooLarge: The resulting grid is too large.

    """
    grids = dict(DEFAULT_GRIDS)
    fields: dict[str, Any] = {}
    tolerance_overrides: dict[str, Any] = {}

    if "beta" in raw and "T" in raw:
        raise ConfigParseError(source, "give either beta or T, not both")

    for key, value in raw.items():
        if key in GRID_KEYS:
            grids[key] = parse_grid(value, key, source)
        elif key == "T":
            temperatures = parse_grid(value, key, source)
            if any(T <= 0 for T in temperatures):
                raise ConfigParseError(source, "temperatures must be positive")
            grids["beta"] = tuple(1.0 / T for T in temperatures)
        elif key.startswith(TOLERANCE_PREFIX):
            tolerance_overrides[key.removeprefix(TOLERANCE_PREFIX)] = value
        elif key in SCALAR_KEYS:
            fields[key] = _parse_scalar(key, value, source)
        else:
            raise ConfigParseError(source, f"unknown key {key!r}")

    try:
        tolerances = DEFAULT_TOLERANCES.replace(**tolerance_overrides)
    except TypeError:
        names = ", ".join(TOLERANCE_PREFIX + k for k in tolerance_overrides)
        raise ConfigParseError(source, f"unknown tolerance in {names}") from None

    config = SweepConfig(grids=grids, tolerances=tolerances, **fields)
    config.validate()
    log.debug("Built %s config with %d grid points", config.scenario, config.size)
    return config


def parse_grid(value: Any, key: str, source: str) -> tuple[float, ...]:
    """Expands a grid value into its points.

    Accepts a number, a list of numbers, a ``{start, stop, count}`` table,
    or a string of the form ``a,b,c`` or ``start:stop:count``.

    """
    try:
        values = _expand_grid(value)
    except (TypeError, ValueError, KeyError) as e:
        raise ConfigParseError(source, f"invalid grid for {key!r}: {e}") from None

    if not values:
        raise ConfigParseError(source, f"grid {key!r} is empty")
    if not all(math.isfinite(v) for v in values):
        raise ConfigParseError(source, f"grid {key!r} contains non-finite values")
    return values


def _expand_grid(value: Any) -> tuple[float, ...]:
    if isinstance(value, bool):
        raise TypeError("expected numbers, got a boolean")
    if isinstance(value, (int, float)):
        return (float(value),)
    if isinstance(value, list):
        return tuple(_number(v) for v in value)
    if isinstance(value, dict):
        unknown = set(value) - {"start", "stop", "count"}
        if unknown:
            raise KeyError(f"unexpected range keys {sorted(unknown)}")
        return _linspace(value["start"], value["stop"], value["count"])
    if isinstance(value, str):
        text = value.strip()
        if ":" in text:
            start, stop, count = text.split(":")
            return _linspace(float(start), float(stop), int(count))
        return tuple(float(part) for part in text.split(",") if part.strip())
    raise TypeError(f"unsupported grid value {value!r}")


def _number(value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TypeError(f"expected a number, got {value!r}")
    return float(value)


def _linspace(start: Any, stop: Any, count: Any) -> tuple[float, ...]:
    if isinstance(count, bool) or not isinstance(count, int) or count < 1:
        raise ValueError(f"count must be a positive integer, got {count!r}")
    return tuple(float(x) for x in np.linspace(float(start), float(stop), count))


def _parse_scalar(key: str, value: Any, source: str) -> Any:
    try:
        match key:
            case "scenario":
                return str(value)
            case "outputs":
                if isinstance(value, str):
                    value = [v.strip() for v in value.split(",") if v.strip()]
                return frozenset(Output(v) for v in value)
            case "oracle_check" | "extrapolate":
                return _parse_bool(value)
            case "steps" | "threads" | "max_rows":
                return _parse_int(value)
            case "dynamical_h":
                return DynamicalHamiltonian(value)
    except (TypeError, ValueError) as e:
        raise ConfigParseError(source, f"invalid value for {key!r}: {e}") from None
    raise ConfigParseError(source, f"unknown key {key!r}")  # pragma: no cover


def _parse_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in ("true", "false", "1", "0"):
        return value.lower() in ("true", "1")
    raise ValueError(f"expected a boolean, got {value!r}")


def _parse_int(value: Any) -> int:
    if isinstance(value, bool):
        raise ValueError(f"expected an integer, got {value!r}")
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return int(value)
