"""Sweep the geometric phase and concurrence of a quenched hydrogen spin pair."""
import argparse
import contextlib
import logging
import sys
from typing import Any, Iterator, Sequence, TextIO

from .errors import ConfigParseError, ConfigurationError, NumericalError
from .physics import DynamicalHamiltonian
from .sweep import (
    GRID_KEYS,
    build_config,
    evaluate_point,
    list_scenarios,
    load_config_file,
    load_scenario,
    merge_overrides,
    run_checks,
    run_sweep,
    write_rows,
)
from .sweep.config import Output
from .sweep.output import RowWriter

log = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """An argument parser that reports usage errors with exit status 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(attach_grid_values(argv))

    logging.basicConfig(
        format="%(name)30s (%(levelname)8s) => %(message)s",
    )
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.getLogger(__package__).setLevel(level)

    try:
        return args.func(args)
    except ConfigurationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except NumericalError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def attach_grid_values(argv: Sequence[str]) -> list[str]:
    """
    Join each grid flag with the value after it, as in ``--J=-10:10:5``.

    Grid values such as ``-1,1`` begin with a dash and would otherwise
    be mistaken for options.

    """
    flags = {f"--{key}" for key in (*GRID_KEYS, "T")}
    result: list[str] = []
    args = iter(argv)
    for arg in args:
        if arg == "--":
            result.append(arg)
            result.extend(args)
            break
        if arg in flags:
            value = next(args, None)
            if value is None:
                result.append(arg)
            else:
                result.append(f"{arg}={value}")
        else:
            result.append(arg)
    return result


def make_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument(
        "--out",
        help="Write CSV to this path instead of stdout",
    )
    common.add_argument(
        "--steps",
        help="Number of intervals for the integrated phase",
        type=int,
    )
    common.add_argument(
        "--oracle",
        action="store_true",
        help="Also evaluate the integrated phase and emit the difference",
    )
    common.add_argument(
        "--dynamical-h",
        choices=[h.value for h in DynamicalHamiltonian],
        help="Hamiltonian used in the dynamical-phase factor",
    )
    common.add_argument(
        "--threads",
        help="Number of worker threads",
        type=int,
    )
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Increase logging verbosity (repeat for debug output)",
    )

    grids = ArgumentParser(add_help=False)
    for key in GRID_KEYS:
        grids.add_argument(
            f"--{key}",
            help=f"Grid for {key} as a,b,c or start:stop:count",
        )
    grids.add_argument(
        "--T",
        help="Grid of temperatures, replacing beta with 1/T",
    )
    grids.add_argument(
        "--outputs",
        help="Comma-separated quantities to compute",
    )
    grids.add_argument(
        "--max-rows",
        help="Largest grid to accept",
        type=int,
    )

    parser = ArgumentParser(prog="hyperfine-phase", description=__doc__)
    subparsers = parser.add_subparsers(required=True)

    sweep = subparsers.add_parser(
        "sweep",
        help="Run a sweep from a configuration file",
        parents=[common, grids],
    )
    sweep.add_argument("config", help="Path to the configuration file")
    sweep.set_defaults(func=cmd_sweep)

    scenario = subparsers.add_parser(
        "scenario",
        help="Run one of the shipped figure scenarios",
        parents=[common, grids],
    )
    scenario.add_argument("name", nargs="?", help="The scenario to run")
    scenario.add_argument(
        "--list",
        action="store_true",
        help="List the available scenarios and exit",
    )
    scenario.set_defaults(func=cmd_scenario)

    point = subparsers.add_parser(
        "point",
        help="Evaluate a single grid point and print one row",
        parents=[common, grids],
    )
    point.set_defaults(func=cmd_point)

    check = subparsers.add_parser(
        "check",
        help="Run the numerical invariant checks",
        parents=[common],
    )
    check.add_argument("names", nargs="*", help="Checks to run (default: all)")
    check.set_defaults(func=cmd_check)

    return parser


def overrides_from_args(args: argparse.Namespace) -> dict[str, Any]:
    """Collects the configuration keys given as command-line flags."""
    overrides: dict[str, Any] = {}
    for key in (*GRID_KEYS, "T", "outputs", "max_rows", "steps", "threads", "dynamical_h"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if args.oracle:
        overrides["oracle_check"] = True
    return overrides


def cmd_sweep(args: argparse.Namespace) -> int:
    raw = merge_overrides(load_config_file(args.config), overrides_from_args(args))
    return _run(raw, args.config, args.out)


def cmd_scenario(args: argparse.Namespace) -> int:
    if args.list:
        for name in list_scenarios():
            print(name)
        return 0
    if args.name is None:
        print("error: a scenario name is required (see --list)", file=sys.stderr)
        return 1

    raw = merge_overrides(load_scenario(args.name), overrides_from_args(args))
    return _run(raw, args.name, args.out)


def cmd_point(args: argparse.Namespace) -> int:
    config = build_config(overrides_from_args(args), "<command line>")
    if config.size != 1:
        print("error: point takes a single value per parameter", file=sys.stderr)
        return 1

    (point,) = config.points()
    row = evaluate_point(config, point)
    with _open_output(args.out) as stream:
        writer = RowWriter(stream, populations=Output.populations in config.outputs)
        writer.write_header()
        writer.write_row(row)
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    try:
        results = run_checks(args.names or None)
    except KeyError as e:
        print(f"error: {e.args[0]}", file=sys.stderr)
        return 1

    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name}: {result.detail}")
    return 0 if all(r.passed for r in results) else 2


def _run(raw: dict[str, Any], source: str, out: str | None) -> int:
    config = build_config(raw, source)
    with _open_output(out) as stream:
        count = write_rows(
            run_sweep(config),
            stream,
            populations=Output.populations in config.outputs,
        )
    log.info("Wrote %d rows for %s", count, config.scenario)
    return 0


@contextlib.contextmanager
def _open_output(path: str | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    try:
        f = open(path, "w", encoding="utf-8", newline="")
    except OSError as e:
        raise ConfigParseError(path, e.strerror or str(e)) from e
    with f:
        yield f


if __name__ == "__main__":
    sys.exit(main())
