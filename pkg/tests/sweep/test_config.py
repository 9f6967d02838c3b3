import math

import pytest

from hyperfine_phase import ConfigParseError, GridTooLarge
from hyperfine_phase.physics import DynamicalHamiltonian
from hyperfine_phase.sweep import (
    GridPoint,
    Output,
    build_config,
    list_scenarios,
    load_config_file,
    load_scenario,
    merge_overrides,
    parse_config_text,
    parse_grid,
)


@pytest.mark.parametrize(
    ("value", "expected"),
    [
        (2, (2.0,)),
        (0.5, (0.5,)),
        ([1, 2.5], (1.0, 2.5)),
        ({"start": 0, "stop": 1, "count": 3}, (0.0, 0.5, 1.0)),
        ("1,2,3", (1.0, 2.0, 3.0)),
        ("0:1:5", (0.0, 0.25, 0.5, 0.75, 1.0)),
        ("-1", (-1.0,)),
    ],
)
def test_parse_grid(value, expected):
    assert parse_grid(value, "J", "test") == expected


@pytest.mark.parametrize(
    "value",
    [
        [],
        True,
        "a,b",
        "0:1",
        {"start": 0, "stop": 1, "count": 0},
        {"start": 0, "stop": 1},
        {"start": 0, "stop": 1, "count": 2, "step": 1},
        [[1, 2]],
        "nan",
    ],
)
def test_parse_grid_rejects(value):
    with pytest.raises(ConfigParseError):
        parse_grid(value, "J", "test")


def test_config_file():
    raw = parse_config_text(
        """
        # a comment
        scenario = "demo"
        J = {start = -1, stop = 1, count = 3}
        C = 1
        epsilon = [0.0, 0.5]
        T = [0.5, 2]
        t = 1
        outputs = ["gamma_g", "concurrence"]
        oracle_check = true
        steps = 200
        dynamical_h = "pre"
        threads = 2
        tol_degeneracy_rtol = 1e-6
        """,
        "demo.conf",
    )
    config = build_config(raw, "demo.conf")

    assert config.scenario == "demo"
    assert config.grids["J"] == (-1.0, 0.0, 1.0)
    assert config.grids["beta"] == (2.0, 0.5)
    assert config.grids["D"] == (0.0,)
    assert config.outputs == {Output.gamma_g, Output.concurrence}
    assert config.oracle_check
    assert config.steps == 200
    assert config.dynamical_h == DynamicalHamiltonian.pre
    assert config.threads == 2
    assert config.tolerances.degeneracy_rtol == 1e-6
    assert config.size == 3 * 2 * 2


def test_points_are_row_major():
    config = build_config({"J": [1, 2], "t": [0, 1, 2]})
    points = list(config.points())
    assert points[0] == GridPoint(1.0, 1.0, 0.0, 0.0, 1.0, 0.0)
    assert [(p.J, p.t) for p in points] == [
        (1.0, 0.0), (1.0, 1.0), (1.0, 2.0),
        (2.0, 0.0), (2.0, 1.0), (2.0, 2.0),
    ]


@pytest.mark.parametrize(
    "raw",
    [
        {"unknown": 1},
        {"beta": 1, "T": 1},
        {"T": [0, 1]},
        {"outputs": ["phase"]},
        {"dynamical_h": "middle"},
        {"threads": 0},
        {"oracle_check": True, "steps": 10},
        {"oracle_check": "maybe"},
        {"tol_unknown": 1e-3},
        {"t": [1, 0]},
    ],
)
def test_invalid_config(raw):
    with pytest.raises(ConfigParseError):
        build_config(raw)


def test_decreasing_times_allowed_without_unwrapping():
    config = build_config({"t": [1, 0], "outputs": ["gamma_g"]})
    assert config.grids["t"] == (1.0, 0.0)


def test_grid_too_large():
    with pytest.raises(GridTooLarge) as exc_info:
        build_config({"J": "0:1:100", "t": "0:1:100", "max_rows": 1000})
    assert exc_info.value.size == 10_000


def test_bare_values():
    raw = parse_config_text(
        """
        scenario = demo  # trailing comment
        J = -1, 1
        t = 0:10:201
        outputs = gamma_g, concurrence
        dynamical_h = pre
        steps = 400
        """,
        "bare.conf",
    )
    assert raw["t"] == "0:10:201"
    config = build_config(raw, "bare.conf")

    assert config.scenario == "demo"
    assert config.grids["J"] == (-1.0, 1.0)
    assert len(config.grids["t"]) == 201
    assert config.grids["t"][-1] == 10.0
    assert config.outputs == {Output.gamma_g, Output.concurrence}
    assert config.dynamical_h == DynamicalHamiltonian.pre
    assert config.steps == 400


def test_toml_literals_still_parse():
    raw = parse_config_text(
        'outputs = ["gamma_g"]  # list\nbeta = 0.5\noracle_check = true\nscenario = "x"\n',
        "literal.conf",
    )
    assert raw == {"outputs": ["gamma_g"], "beta": 0.5, "oracle_check": True, "scenario": "x"}


@pytest.mark.parametrize(
    "text",
    [
        "J = = 1",
        "J 1",
        "= 1",
        "J =",
        "J = # nothing",
        "J = 1\nJ = 2",
        'scenario = "unterminated',
        "J = [1, 2",
    ],
)
def test_malformed_file(text):
    with pytest.raises(ConfigParseError):
        parse_config_text(text, "bad.conf")


def test_malformed_line_is_located():
    with pytest.raises(ConfigParseError, match="line 3"):
        parse_config_text("C = 1\n\nno value here\n", "bad.conf")


def test_missing_file(tmp_path):
    with pytest.raises(ConfigParseError):
        load_config_file(str(tmp_path / "missing.conf"))


def test_overrides_win():
    base = {"J": 1, "beta": 2, "t": 0}
    merged = merge_overrides(base, {"J": "3,4", "T": "0.5"})
    config = build_config(merged)
    assert config.grids["J"] == (3.0, 4.0)
    assert config.grids["beta"] == (2.0,)
    assert config.grids["t"] == (0.0,)


def test_string_overrides():
    config = build_config(
        {"outputs": "gamma_g,magnitude", "threads": "3", "oracle_check": "true", "steps": "500"}
    )
    assert config.outputs == {Output.gamma_g, Output.magnitude}
    assert config.threads == 3
    assert config.oracle_check
    assert config.steps == 500


def test_shipped_scenarios():
    names = list_scenarios()
    assert names == [f"fig{i}" for i in range(1, 8)]
    for name in names:
        config = build_config(load_scenario(name), name)
        assert config.scenario == name
        assert all(math.isfinite(v) for values in config.grids.values() for v in values)


def test_unknown_scenario():
    with pytest.raises(ConfigParseError):
        load_scenario("fig99")
