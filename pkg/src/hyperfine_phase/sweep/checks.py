"""Self-checks of the numerical invariants.

Each check draws its inputs from a seeded generator, so a failing check
fails the same way every time. Checks raise :class:`AssertionError` on
failure and return a short summary otherwise.

"""
import dataclasses
import logging
import math
import time
from typing import Callable, Iterable

import numpy as np

from hyperfine_phase.linalg import (
    ComplexMatrix,
    SpectralDecomposition,
    adjoint,
    hermitian_eig,
    spectral_function,
    unitary_deviation,
)
from hyperfine_phase.physics import (
    SpinParams,
    analytic_spectrum,
    build_full,
    build_h0,
    concurrence,
    concurrence_threshold_temperature,
    geometric_phase_closed,
    geometric_phase_integrated,
    gibbs_state,
    heisenberg_concurrence,
    propagator,
    quench,
)

log = logging.getLogger(__name__)

Check = Callable[[np.random.Generator], str]

CHECKS: dict[str, Check] = {}
"""Every registered check by name, in registration order."""

DEFAULT_SEED = 20240501


@dataclasses.dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


def check(name: str) -> Callable[[Check], Check]:
    """Registers a function as a named check."""

    def decorator(func: Check) -> Check:
        CHECKS[name] = func
        return func

    return decorator


def run_checks(names: Iterable[str] | None = None, *, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """Runs the named checks, or all of them, each with a fresh generator.

    :raises KeyError: A name does not refer to a registered check.

    """
    selected = list(CHECKS) if names is None else list(names)
    for name in selected:
        if name not in CHECKS:
            raise KeyError(f"unknown check {name!r}")

    results = []
    for name in selected:
        rng = np.random.default_rng(seed)
        start = time.perf_counter()
        try:
            detail = CHECKS[name](rng)
            passed = True
        except AssertionError as e:
            detail = str(e) or "assertion failed"
            passed = False
        elapsed = time.perf_counter() - start
        log.info("Check %s %s in %.2fs", name, "passed" if passed else "FAILED", elapsed)
        results.append(CheckResult(name, passed, detail, elapsed))
    return results


def random_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> ComplexMatrix:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (a + adjoint(a)) / 2


def random_density_matrix(rng: np.random.Generator, n: int = 4) -> ComplexMatrix:
    """Returns a full-rank density matrix drawn from the Ginibre ensemble."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = g @ adjoint(g)
    return rho / np.trace(rho).real


def random_unitary(rng: np.random.Generator, n: int) -> ComplexMatrix:
    return spectral_function(random_hermitian(rng, n), lambda x: np.exp(-1j * x))


def random_params(rng: np.random.Generator, scale: float = 10.0) -> SpinParams:
    J, C, D = rng.uniform(-scale, scale, size=3)
    epsilon = rng.uniform(-1, 1)
    return SpinParams(J=float(J), C=float(C), D=float(D), epsilon=float(epsilon))


@check("spectrum")
def check_spectrum(rng: np.random.Generator) -> str:
    worst = 0.0
    for _ in range(100):
        J, C = (float(x) for x in rng.uniform(-10, 10, size=2))
        numeric = hermitian_eig(build_full(SpinParams(J=J, C=C))).eigenvalues
        error = float(np.max(np.abs(numeric - analytic_spectrum(J, C))))
        bound = 1e-10 * max(1.0, abs(J) + abs(C))
        assert error <= bound, f"spectrum off by {error:.3e} at J={J}, C={C}"
        worst = max(worst, error)
    return f"100 pairs, worst error {worst:.2e}"


@check("reconstruction")
def check_reconstruction(rng: np.random.Generator) -> str:
    worst = 0.0
    for _ in range(100):
        m = random_hermitian(rng, 4, scale=rng.uniform(0.1, 10))
        decomposition = hermitian_eig(m)
        error = float(np.linalg.norm(decomposition.reconstruct() - m))
        assert error <= 1e-12 * max(1.0, float(np.linalg.norm(m))), f"reconstruction error {error:.3e}"
        assert unitary_deviation(decomposition.eigenvectors) <= 1e-12
        worst = max(worst, error)
    return f"100 matrices, worst error {worst:.2e}"


@check("zero-phase")
def check_zero_phase(rng: np.random.Generator) -> str:
    cases = []
    for _ in range(20):
        p = random_params(rng)
        t = float(rng.uniform(0, 10))
        cases.append((dataclasses.replace(p, J=0.0), 1.0, t))
        cases.append((dataclasses.replace(p, C=0.0, D=0.0), 1.0, t))
        cases.append((random_params(rng, scale=2.0), 1e-6, t))

    for params, beta, t in cases:
        hp = build_full(params, quenched=True)
        state = gibbs_state(build_full(params), beta, reference=hp)
        phase = geometric_phase_closed(state, hp, t)
        assert phase.well_defined, f"phase undefined for {params}"
        assert abs(phase.gamma) <= 1e-8, f"phase {phase.gamma:.3e} for {params} at beta={beta}"
    return f"{len(cases)} cases"


@check("gauge")
def check_gauge(rng: np.random.Generator) -> str:
    worst = 0.0
    for _ in range(50):
        p = random_params(rng)
        t = float(rng.uniform(0, 10))
        hp = build_full(p, quenched=True)
        state = gibbs_state(build_full(p), float(rng.uniform(0.1, 5)), reference=hp)

        phases = np.exp(1j * rng.uniform(0, 2 * math.pi, size=4))
        rephased = dataclasses.replace(
            state,
            decomposition=SpectralDecomposition(
                state.populations.copy(), state.eigenvectors * phases
            ),
        )
        a = geometric_phase_closed(state, hp, t)
        b = geometric_phase_closed(rephased, hp, t)
        if a.magnitude < 1e-3:
            continue
        error = abs(math.remainder(a.gamma - b.gamma, 2 * math.pi))
        assert error <= 1e-10, f"rephasing changed the phase by {error:.3e}"
        worst = max(worst, error)
    return f"50 trials, worst change {worst:.2e}"


@check("oracle")
def check_oracle(rng: np.random.Generator) -> str:
    worst = 0.0
    for _ in range(20):
        p = random_params(rng, scale=2.0)
        t = float(rng.uniform(0, 5))
        hp = build_full(p, quenched=True)
        state = gibbs_state(build_full(p), float(rng.uniform(0.1, 5)), reference=hp)
        closed = geometric_phase_closed(state, hp, t)
        integrated = geometric_phase_integrated(state, hp, t)
        if not closed.well_defined or closed.magnitude < 1e-3:
            continue
        error = abs(math.remainder(integrated.gamma - closed.gamma, 2 * math.pi))
        assert error <= 1e-6, f"integrated phase differs by {error:.3e} for {p} at t={t}"
        worst = max(worst, error)
    return f"20 points, worst difference {worst:.2e}"


@check("concurrence")
def check_concurrence(rng: np.random.Generator) -> str:
    singlet = np.array([0, 1, -1, 0], dtype=np.complex128) / math.sqrt(2)
    bell = np.outer(singlet, singlet.conj())
    product = np.zeros((4, 4), dtype=np.complex128)
    product[0, 0] = 1.0
    mixed = np.eye(4, dtype=np.complex128) / 4

    assert abs(concurrence(bell).value - 1.0) <= 1e-12, "singlet is not maximally entangled"
    assert concurrence(product).value <= 1e-12, "product state is entangled"
    assert concurrence(mixed).value <= 1e-12, "maximally mixed state is entangled"

    worst = 0.0
    for _ in range(50):
        rho = random_density_matrix(rng)
        local = np.kron(random_unitary(rng, 2), random_unitary(rng, 2))
        before = concurrence(rho).value
        after = concurrence(local @ rho @ adjoint(local)).value
        error = abs(before - after)
        assert error <= 1e-10, f"local unitary changed concurrence by {error:.3e}"
        worst = max(worst, error)
    return f"fixtures exact, 50 local unitaries, worst change {worst:.2e}"


@check("heisenberg")
def check_heisenberg(rng: np.random.Generator) -> str:
    h = build_h0(1.0)
    for beta in (0.5, 1.0, math.log(3.0), 2.0, 5.0, 10.0):
        numeric = concurrence(gibbs_state(h, beta).rho).value
        exact = heisenberg_concurrence(1.0, beta)
        assert abs(numeric - exact) <= 1e-10, f"concurrence {numeric} != {exact} at beta={beta}"

    threshold = concurrence_threshold_temperature(1.0)
    expected = 1.0 / math.log(3.0)
    assert abs(threshold - expected) <= 1e-6, f"threshold {threshold} != {expected}"
    return f"threshold T={threshold:.8f}"


@check("evolution")
def check_evolution(rng: np.random.Generator) -> str:
    for _ in range(20):
        p = random_params(rng)
        t = float(rng.uniform(0, 10))
        hp = build_full(p, quenched=True)
        state = gibbs_state(build_full(p), float(rng.uniform(0.1, 5)))
        u = propagator(hp, t)
        assert unitary_deviation(u) <= 1e-12, "propagator is not unitary"

        rho_t = quench(state, hp, t).rho_t
        before = np.sort(state.populations)
        after = hermitian_eig(rho_t).eigenvalues
        assert np.allclose(before, after, atol=1e-12), "evolution changed the spectrum"
        assert abs(np.trace(rho_t).real - 1.0) <= 1e-12, "evolution changed the trace"
    return "20 quenches"
