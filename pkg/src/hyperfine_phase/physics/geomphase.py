"""Mixed-state geometric phase of a thermal state evolving after a quench.

Two evaluations are provided. :func:`geometric_phase_closed` uses the
reduced formula valid for a time-independent Hamiltonian::

    γ_g = arg Σ_k λ_k ⟨k|U(t)|k⟩ exp(i ⟨k|H'|k⟩ t)

:func:`geometric_phase_integrated` evaluates the general, gauge-invariant
formula along the path ``|k(t')⟩ = U(t')|k⟩``::

    γ_g = arg Σ_k √(λ_k(0) λ_k(t)) ⟨k|U(t)|k⟩ exp(-∫₀ᵗ ⟨k(t')|k̇(t')⟩ dt')

with the connection integral discretized as a Pancharatnam product of
overlaps between neighbouring points of the path, and serves as an
independent check of the first.

"""
import dataclasses
import logging
import math
from enum import StrEnum

import numpy as np
import numpy.typing as npt

from .dynamics import evolve, propagator
from .thermal import ThermalState
from hyperfine_phase.constants import (
    DEFAULT_ORACLE_STEPS,
    DEFAULT_TOLERANCES,
    MIN_ORACLE_STEPS,
    Tolerances,
)
from hyperfine_phase.errors import StepCountTooSmall
from hyperfine_phase.linalg import (
    ComplexMatrix,
    RealVector,
    SpectralDecomposition,
    adjoint,
    as_complex_matrix,
    hermitian_eig,
    require_same_shape,
)

log = logging.getLogger(__name__)


class DynamicalHamiltonian(StrEnum):
    """Which Hamiltonian supplies ``⟨k|H|k⟩`` in the dynamical-phase factor."""

    post = "post"
    """The post-quench Hamiltonian ``H'`` that generates ``U``."""
    pre = "pre"
    """The pre-quench Hamiltonian ``H`` the thermal state was prepared with."""


@dataclasses.dataclass(frozen=True, slots=True)
class PhaseResult:
    """A geometric phase together with the modulus of the sum it came from."""

    gamma: float
    """The phase in ``(-π, π]``, or NaN when :attr:`well_defined` is false."""
    magnitude: float
    """The modulus of the weighted sum, at most 1."""
    well_defined: bool
    """False when :attr:`magnitude` is too small for the argument to mean anything."""


def geometric_phase_closed(
    state: ThermalState,
    Hprime: npt.ArrayLike | SpectralDecomposition,
    t: float,
    *,
    dynamical_h: DynamicalHamiltonian = DynamicalHamiltonian.post,
    tolerances: Tolerances | None = None,
) -> PhaseResult:
    """Evaluates the geometric phase for a time-independent post-quench Hamiltonian.

    :param state: The initial thermal state, providing ``λ_k`` and ``|k⟩``.
    :param Hprime:
        The Hamiltonian generating ``U = e^{-iH't}``, or its decomposition.
    :param t: The evolution time.
    :param dynamical_h:
        Whether the dynamical factor uses ``H'`` (the default) or the
        pre-quench Hamiltonian stored in *state*.
    :param tolerances: Overrides for the default tolerances.
    :raises DimensionMismatch: *Hprime* and the state differ in dimension.

    """
    tol = tolerances or DEFAULT_TOLERANCES
    spectrum, hp = _spectrum_and_matrix(Hprime, tol)
    require_same_shape(state.rho, hp)

    k = state.eigenvectors
    u = propagator(spectrum, t, tolerances=tol)
    overlaps = _diagonal_elements(k, u)

    h = hp if dynamical_h == DynamicalHamiltonian.post else state.hamiltonian
    expectations = _diagonal_elements(k, h).real

    total = np.sum(state.populations * overlaps * np.exp(1j * expectations * t))
    return _phase_result(complex(total), tol)


def geometric_phase_integrated(
    state: ThermalState,
    Hprime: npt.ArrayLike | SpectralDecomposition,
    t: float,
    steps: int = DEFAULT_ORACLE_STEPS,
    *,
    extrapolate: bool = True,
    tolerances: Tolerances | None = None,
) -> PhaseResult:
    """Evaluates the general geometric phase formula by parallel transport.

    Each eigenvector is carried along ``U(t')|k⟩`` on a uniform grid of
    *steps* intervals. The connection phase is accumulated from the
    arguments of the overlaps between neighbouring grid points, which is
    gauge invariant at every step. With *extrapolate*, the accumulation is
    repeated on ``2·steps`` intervals and the two are combined to cancel the
    leading ``O(dt²)`` error.

    :param state: The initial thermal state.
    :param Hprime: The post-quench Hamiltonian, or its decomposition.
    :param t: The evolution time.
    :param steps: The number of grid intervals, at least 100.
    :param extrapolate: Whether to apply Richardson extrapolation.
    :param tolerances: Overrides for the default tolerances.
    :raises StepCountTooSmall: *steps* is below 100.
    :raises DimensionMismatch: *Hprime* and the state differ in dimension.

    """
    tol = tolerances or DEFAULT_TOLERANCES
    if steps < MIN_ORACLE_STEPS:
        raise StepCountTooSmall(steps, MIN_ORACLE_STEPS)
    spectrum, hp = _spectrum_and_matrix(Hprime, tol)
    require_same_shape(state.rho, hp)

    k0 = state.eigenvectors
    connection = _connection_phases(spectrum, k0, t, steps)
    if extrapolate:
        finer = _connection_phases(spectrum, k0, t, 2 * steps)
        connection = (4.0 * finer - connection) / 3.0

    u = propagator(spectrum, t, tolerances=tol)
    kt = u @ k0
    overlaps = np.einsum("ik,ik->k", k0.conj(), kt)

    rho_t = evolve(state, u, t=t, tolerances=tol).rho_t
    lambda_0 = state.populations
    lambda_t = _diagonal_elements(kt, rho_t).real
    weights = np.sqrt(np.clip(lambda_0 * lambda_t, 0.0, None))

    total = np.sum(weights * overlaps * np.exp(-1j * connection))
    result = _phase_result(complex(total), tol)
    log.debug("Integrated phase over %d steps: %r", steps, result)
    return result


def _connection_phases(
    spectrum: SpectralDecomposition,
    k0: ComplexMatrix,
    t: float,
    steps: int,
) -> RealVector:
    """Returns ``Σ_j arg⟨k(t_j)|k(t_{j+1})⟩`` for each column of *k0*."""
    times = np.linspace(0.0, t, steps + 1)
    v = spectrum.eigenvectors
    coefficients = adjoint(v) @ k0
    phases = np.exp(-1j * np.outer(times, spectrum.eigenvalues))
    path = np.einsum("ij,sj,jk->sik", v, phases, coefficients)
    overlaps = np.einsum("sik,sik->sk", path[:-1].conj(), path[1:])
    return np.angle(overlaps).sum(axis=0)


def _diagonal_elements(vectors: ComplexMatrix, m: ComplexMatrix) -> npt.NDArray[np.complex128]:
    """Returns ``⟨k|M|k⟩`` for each column ``|k⟩`` of *vectors*."""
    return np.einsum("ik,ij,jk->k", vectors.conj(), m, vectors)


def _spectrum_and_matrix(
    Hprime: npt.ArrayLike | SpectralDecomposition,
    tol: Tolerances,
) -> tuple[SpectralDecomposition, ComplexMatrix]:
    if isinstance(Hprime, SpectralDecomposition):
        return Hprime, Hprime.reconstruct()
    hp = as_complex_matrix(Hprime)
    return hermitian_eig(hp, tolerances=tol), hp


def principal_value(angle: float) -> float:
    """Maps an angle from :func:`numpy.angle` into ``(-π, π]``."""
    return math.pi if angle <= -math.pi else angle


def _phase_result(total: complex, tol: Tolerances) -> PhaseResult:
    magnitude = abs(total)
    if magnitude < tol.phase_magnitude_min:
        return PhaseResult(gamma=math.nan, magnitude=magnitude, well_defined=False)
    gamma = principal_value(float(np.angle(total)))
    return PhaseResult(gamma=gamma, magnitude=magnitude, well_defined=True)
