"""Wootters concurrence of two-qubit density matrices.

For a state ``ρ`` the spin-flipped state is ``ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)``
with complex conjugation in the product basis. The ``λ_i`` are the square
roots of the eigenvalues of ``ρρ̃``. That product is not Hermitian, but it
is similar to the positive semidefinite ``√ρ ρ̃ √ρ``, which is what gets
diagonalized here.

"""
import dataclasses
import logging
import math

import numpy as np
import numpy.typing as npt

from .hamiltonian import PAULI_Y, build_h0
from .thermal import gibbs_state
from hyperfine_phase.constants import DEFAULT_TOLERANCES, Tolerances
from hyperfine_phase.errors import InvalidDensityMatrix, NonHermitianInput
from hyperfine_phase.linalg import (
    ComplexMatrix,
    RealVector,
    adjoint,
    hermitian_eig,
    spectral_function,
)

log = logging.getLogger(__name__)

SIGMA_YY = np.kron(PAULI_Y, PAULI_Y)
"""``σ_y ⊗ σ_y`` in the product basis."""


@dataclasses.dataclass(frozen=True, slots=True)
class ConcurrenceResult:
    """The concurrence of a state and the spin-flip spectrum behind it."""

    value: float
    """``max(0, λ₁ - λ₂ - λ₃ - λ₄)``, within ``[0, 1]``."""
    lambdas: RealVector
    """The four ``λ_i``, descending and non-negative."""

    @property
    def margin(self) -> float:
        """``λ₁ - λ₂ - λ₃ - λ₄`` before clamping at zero."""
        return float(self.lambdas[0] - self.lambdas[1:].sum())


def spin_flip(rho: ComplexMatrix) -> ComplexMatrix:
    """Returns ``(σ_y⊗σ_y) ρ* (σ_y⊗σ_y)``."""
    return SIGMA_YY @ rho.conj() @ SIGMA_YY


def concurrence(
    rho: npt.ArrayLike,
    *,
    tolerances: Tolerances | None = None,
) -> ConcurrenceResult:
    """Computes the Wootters concurrence of a 4x4 density matrix.

    :param rho: The two-qubit density matrix in the product basis.
    :param tolerances: Overrides for the default tolerances.
    :raises InvalidDensityMatrix:
        *rho* is not 4x4, not Hermitian, not of unit trace, or not
        positive semidefinite within tolerance.

    """
    tol = tolerances or DEFAULT_TOLERANCES
    m = np.asarray(rho, dtype=np.complex128)
    if m.shape != (4, 4):
        raise InvalidDensityMatrix(f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidDensityMatrix("entries must be finite")

    try:
        spectrum = hermitian_eig(m, tolerances=tol.replace(hermitian=tol.density_matrix))
    except NonHermitianInput as e:
        raise InvalidDensityMatrix(f"not Hermitian (deviation {e.deviation:.3e})") from e

    trace = float(np.trace(m).real)
    if abs(trace - 1.0) > tol.density_matrix:
        raise InvalidDensityMatrix(f"trace is {trace!r}, expected 1")
    if spectrum.eigenvalues[0] < -tol.density_matrix:
        raise InvalidDensityMatrix(
            f"negative eigenvalue {spectrum.eigenvalues[0]:.3e}"
        )

    sqrt_rho = spectral_function(spectrum, lambda x: np.sqrt(np.clip(x, 0.0, None)))
    r = sqrt_rho @ spin_flip(m) @ sqrt_rho
    r = (r + adjoint(r)) / 2
    mu = hermitian_eig(r, tolerances=tol).eigenvalues

    if mu[0] < -tol.negative_eigenvalue_slack:
        raise InvalidDensityMatrix(f"spin-flip product has eigenvalue {mu[0]:.3e}")
    mu = np.where(mu < tol.spin_flip_zero, 0.0, mu)

    lambdas = np.sqrt(mu)[::-1].copy()
    lambdas.setflags(write=False)
    value = lambdas[0] - lambdas[1:].sum()
    return ConcurrenceResult(value=float(min(max(value, 0.0), 1.0)), lambdas=lambdas)


def heisenberg_concurrence(J: float, beta: float) -> float:
    """Returns the closed-form concurrence of the Gibbs state of ``J I·S``.

    The state is Bell-diagonal with singlet weight ``e^{βJ}/(e^{βJ} + 3)``,
    giving ``max(0, (e^{βJ} - 3)/(e^{βJ} + 3))``.

    """
    x = beta * J
    if x <= math.log(3.0):
        return 0.0
    decay = 3.0 * math.exp(-x)
    return (1.0 - decay) / (1.0 + decay)


def concurrence_threshold_temperature(
    J: float,
    *,
    xtol: float = 1e-12,
    max_iterations: int = 200,
    tolerances: Tolerances | None = None,
) -> float:
    """Locates the temperature above which the ``C = D = 0`` Gibbs state is separable.

    The concurrence of the Gibbs state of ``build_h0(J)`` is evaluated
    numerically and the sign change of ``λ₁ - λ₂ - λ₃ - λ₄`` is bisected.
    The exact answer is ``J / ln 3``.

    :param J: A positive hyperfine coupling; for ``J <= 0`` the state is never entangled.
    :param xtol: The bracket width, relative to ``J``, at which to stop.
    :param max_iterations: The bisection budget.
    :param tolerances: Overrides for the default tolerances.

    """
    if not J > 0:
        raise ValueError(f"J must be positive for a finite threshold, got {J!r}")

    h = build_h0(J)

    def margin(temperature: float) -> float:
        state = gibbs_state(h, 1.0 / temperature, tolerances=tolerances)
        return concurrence(state.rho, tolerances=tolerances).margin

    low, high = 0.1 * J, 10.0 * J
    for _ in range(max_iterations):
        if high - low <= xtol * J:
            break
        mid = 0.5 * (low + high)
        if margin(mid) > 0:
            low = mid
        else:
            high = mid

    threshold = 0.5 * (low + high)
    log.debug("Concurrence threshold for J=%g located at T=%.12f", J, threshold)
    return threshold
