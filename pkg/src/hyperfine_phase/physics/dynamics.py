import dataclasses
import math

import numpy as np
import numpy.typing as npt

from .thermal import ThermalState
from hyperfine_phase.constants import DEFAULT_TOLERANCES, Tolerances
from hyperfine_phase.errors import NonFiniteInput, NonUnitaryPropagator
from hyperfine_phase.linalg import (
    ComplexMatrix,
    SpectralDecomposition,
    adjoint,
    as_complex_matrix,
    require_same_shape,
    spectral_function,
    unitary_deviation,
)


@dataclasses.dataclass(frozen=True)
class EvolutionResult:
    """A density matrix after unitary evolution."""

    t: float
    """The elapsed time, or NaN if the propagator's time is unknown."""
    rho_t: ComplexMatrix
    """The evolved density matrix ``U ρ₀ U†``."""
    propagator: ComplexMatrix
    """The unitary ``U`` that was applied."""


def propagator(
    Hprime: npt.ArrayLike | SpectralDecomposition,
    t: float,
    *,
    tolerances: Tolerances | None = None,
) -> ComplexMatrix:
    """Returns ``U(t) = e^{-iH't}``, computed exactly from the spectrum of ``H'``."""
    if not math.isfinite(t):
        raise NonFiniteInput("t", t)
    return spectral_function(Hprime, lambda x: np.exp(-1j * x * t), tolerances=tolerances)


def evolve(
    rho0: ThermalState | npt.ArrayLike,
    U: npt.ArrayLike,
    *,
    t: float = math.nan,
    tolerances: Tolerances | None = None,
) -> EvolutionResult:
    """Applies ``ρ(t) = U ρ₀ U†``.

    :param rho0: The initial state, or a bare density matrix.
    :param U: The propagator, which must be unitary within tolerance.
    :param t: The time *U* corresponds to, recorded in the result.
    :param tolerances: Overrides for the default tolerances.
    :raises NonUnitaryPropagator: *U* is not unitary.

    """
    tol = tolerances or DEFAULT_TOLERANCES
    rho = rho0.rho if isinstance(rho0, ThermalState) else as_complex_matrix(rho0)
    u = as_complex_matrix(U)
    require_same_shape(rho, u)

    deviation = unitary_deviation(u)
    if deviation > tol.unitary:
        raise NonUnitaryPropagator(deviation, tol.unitary)

    rho_t = u @ rho @ adjoint(u)
    rho_t = (rho_t + adjoint(rho_t)) / 2
    return EvolutionResult(t=t, rho_t=rho_t, propagator=u)


def quench(
    state: ThermalState,
    Hprime: npt.ArrayLike | SpectralDecomposition,
    t: float,
    *,
    tolerances: Tolerances | None = None,
) -> EvolutionResult:
    """Evolves a thermal state under the post-quench Hamiltonian for time *t*."""
    u = propagator(Hprime, t, tolerances=tolerances)
    return evolve(state, u, t=t, tolerances=tolerances)
