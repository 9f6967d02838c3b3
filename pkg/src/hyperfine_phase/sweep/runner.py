"""Evaluation of sweep grids.

Grid points sharing every parameter except ``t`` form a series. Each series
is evaluated by one worker: the Hamiltonians, the thermal state and the
spectrum of ``H'`` are computed once and reused for every time. Series are
submitted lazily and collected in grid order, so output is identical for
any number of threads.

"""
import logging
import math
from collections import deque
from concurrent.futures import Future, ThreadPoolExecutor
from typing import Iterator, Sequence

from .config import GRID_KEYS, GridPoint, Output, PHASE_OUTPUTS, SweepConfig
from .output import SweepRow
from .unwrap import unwrap_phase
from hyperfine_phase.errors import GridPointError, SimulationError
from hyperfine_phase.linalg import SpectralDecomposition, hermitian_eig
from hyperfine_phase.physics import (
    SpinParams,
    ThermalState,
    build_full,
    concurrence,
    geometric_phase_closed,
    geometric_phase_integrated,
    gibbs_state,
    principal_value,
    quench,
)

log = logging.getLogger(__name__)

SERIES_PER_THREAD = 2
"""How many series each worker thread may run ahead of the consumer."""


def run_sweep(config: SweepConfig) -> Iterator[SweepRow]:
    """Evaluates every point of a sweep, yielding rows in grid order.

    With more than one thread, at most :data:`SERIES_PER_THREAD` series
    per thread are in flight or waiting to be consumed at any time, so a
    slow consumer holds back the workers.

    :raises GridTooLarge: The grid exceeds the configured row limit.
    :raises GridPointError: A grid point could not be evaluated.

    """
    config.validate()
    log.info(
        "Sweeping %s over %d points in %d series with %d thread(s)",
        config.scenario,
        config.size,
        math.prod(len(config.grids[key]) for key in GRID_KEYS[:-1]),
        config.threads,
    )

    if config.threads == 1:
        for outer, times in config.series():
            yield from evaluate_series(config, outer, times)
        return

    window = SERIES_PER_THREAD * config.threads
    pending: deque[Future[list[SweepRow]]] = deque()
    with ThreadPoolExecutor(max_workers=config.threads) as executor:
        try:
            for outer, times in config.series():
                if len(pending) >= window:
                    yield from pending.popleft().result()
                pending.append(executor.submit(evaluate_series, config, outer, times))
            while pending:
                yield from pending.popleft().result()
        finally:
            for future in pending:
                future.cancel()


def evaluate_point(config: SweepConfig, point: GridPoint) -> SweepRow:
    """Evaluates a single grid point.

    A lone point has nothing to unwrap against, so its unwrapped phase
    equals its wrapped phase.

    """
    (row,) = evaluate_series(config, point[:-1], (point.t,), unwrap=False)
    return row


def evaluate_series(
    config: SweepConfig,
    outer: Sequence[float],
    times: Sequence[float],
    *,
    unwrap: bool = True,
) -> list[SweepRow]:
    """Evaluates one ``(J, C, D, epsilon, beta)`` combination at every time.

    :raises GridPointError: A point in the series could not be evaluated.

    """
    J, C, D, epsilon, beta = outer
    tol = config.tolerances

    try:
        params = SpinParams(J=J, C=C, D=D, epsilon=epsilon)
        h = build_full(params)
        hp = build_full(params, quenched=True)
        state = gibbs_state(h, beta, reference=hp, tolerances=tol)
        spectrum = hermitian_eig(hp, tolerances=tol)
    except (SimulationError, ValueError) as e:
        raise GridPointError(GridPoint(*outer, times[0]), e) from e

    rows = []
    for t in times:
        point = GridPoint(*outer, t)
        try:
            rows.append(_evaluate(config, point, state, spectrum))
        except (SimulationError, ValueError) as e:
            raise GridPointError(point, e) from e

    if unwrap and Output.gamma_g_unwrapped in config.outputs:
        series = [(row.t, row.gamma_g_unwrapped) for row in rows]
        unwrapped = unwrap_phase(series)
        rows = [row._replace(gamma_g_unwrapped=u) for row, u in zip(rows, unwrapped)]

    log.debug("Evaluated series %r over %d times", outer, len(times))
    return rows


def _evaluate(
    config: SweepConfig,
    point: GridPoint,
    state: ThermalState,
    spectrum: SpectralDecomposition,
) -> SweepRow:
    tol = config.tolerances
    outputs = config.outputs

    gamma = magnitude = conc = delta = None
    phase = None
    if outputs & PHASE_OUTPUTS or config.oracle_check:
        phase = geometric_phase_closed(
            state,
            spectrum,
            point.t,
            dynamical_h=config.dynamical_h,
            tolerances=tol,
        )
        if phase.well_defined:
            gamma = phase.gamma

    if Output.magnitude in outputs and phase is not None:
        magnitude = phase.magnitude

    if Output.concurrence in outputs:
        rho_t = quench(state, spectrum, point.t, tolerances=tol).rho_t
        conc = concurrence(rho_t, tolerances=tol).value

    if config.oracle_check and phase is not None and phase.well_defined:
        oracle = geometric_phase_integrated(
            state,
            spectrum,
            point.t,
            config.steps,
            extrapolate=config.extrapolate,
            tolerances=tol,
        )
        if oracle.well_defined:
            delta = abs(wrapped_difference(oracle.gamma, phase.gamma))

    populations = None
    if Output.populations in outputs:
        populations = tuple(float(p) for p in state.populations)

    return SweepRow(
        *point,
        gamma_g=gamma if Output.gamma_g in outputs else None,
        # Filled in once the whole series is known.
        gamma_g_unwrapped=gamma if Output.gamma_g_unwrapped in outputs else None,
        magnitude=magnitude,
        concurrence=conc,
        oracle_delta=delta,
        populations=populations,
    )


def wrapped_difference(a: float, b: float) -> float:
    """Returns ``a - b`` mapped into ``(-π, π]``."""
    return principal_value(math.remainder(a - b, 2 * math.pi))
