from .checks import CHECKS, CheckResult, run_checks
from .config import (
    GRID_KEYS,
    GridPoint,
    Output,
    SweepConfig,
    build_config,
    list_scenarios,
    load_config_file,
    load_scenario,
    merge_overrides,
    parse_config_text,
    parse_grid,
)
from .output import CSV_COLUMNS, RowWriter, SweepRow, read_rows, write_rows
from .runner import evaluate_point, evaluate_series, run_sweep, wrapped_difference
from .unwrap import unwrap_phase
