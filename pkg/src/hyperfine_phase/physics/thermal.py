import dataclasses
import logging
import math

import numpy as np
import numpy.typing as npt

from hyperfine_phase.constants import DEFAULT_TOLERANCES, MAX_BETA, Tolerances
from hyperfine_phase.errors import BetaOutOfRange
from hyperfine_phase.linalg import (
    ComplexMatrix,
    RealVector,
    SpectralDecomposition,
    adjoint,
    as_complex_matrix,
    hermitian_eig,
)

log = logging.getLogger(__name__)

OVERFLOW_EXPONENT = 700.0
"""Exponents beyond this overflow or underflow a double."""


@dataclasses.dataclass(frozen=True)
class ThermalState:
    """The Gibbs state ``ρ₀ = e^{-βH}/Z`` of a Hamiltonian."""

    beta: float
    """The inverse temperature."""

    rho: ComplexMatrix
    """The density matrix."""

    decomposition: SpectralDecomposition
    """
    The eigenpairs ``{λ_k, |k⟩}`` of :attr:`rho`.

    Unlike :func:`~hyperfine_phase.linalg.hermitian_eig`, the populations
    here are in Boltzmann order, i.e. descending.
    """

    log_partition_function: float
    """``ln Z``, which stays finite when ``Z`` itself would overflow."""

    hamiltonian: ComplexMatrix
    """The Hamiltonian this state is in equilibrium with."""

    energies: RealVector
    """The eigenvalues of :attr:`hamiltonian`, ascending."""

    def __post_init__(self) -> None:
        self.rho.setflags(write=False)
        self.hamiltonian.setflags(write=False)
        self.energies.setflags(write=False)

    @property
    def populations(self) -> RealVector:
        """The weights ``λ_k``, descending."""
        return self.decomposition.eigenvalues

    @property
    def eigenvectors(self) -> ComplexMatrix:
        """The states ``|k⟩`` as columns, paired with :attr:`populations`."""
        return self.decomposition.eigenvectors

    @property
    def partition_function(self) -> float:
        """``Z = Tr e^{-βH}``, possibly infinite for very large ``β|E_min|``."""
        with np.errstate(over="ignore"):
            return float(np.exp(self.log_partition_function))

    @property
    def temperature(self) -> float:
        return math.inf if self.beta == 0 else 1.0 / self.beta


def gibbs_state(
    H: npt.ArrayLike,
    beta: float,
    *,
    reference: npt.ArrayLike | None = None,
    tolerances: Tolerances | None = None,
) -> ThermalState:
    """Prepares the thermal state of *H* at inverse temperature *beta*.

    The populations ``p_i = e^{-β(E_i - E_min)} / Σ_j e^{-β(E_j - E_min)}``
    are evaluated with the ground energy subtracted so that nothing
    overflows at large ``β``.

    Populations that agree within
    :attr:`~hyperfine_phase.constants.Tolerances.degeneracy_rtol` form a
    degenerate subspace in which any basis diagonalizes ``ρ₀``. When a
    *reference* Hamiltonian is given, each such subspace is re-diagonalized
    against it and the weights become ``⟨k|ρ₀|k⟩``; otherwise the
    gauge-fixed Jacobi basis is kept.

    :param H: The Hermitian Hamiltonian.
    :param beta: The inverse temperature, within ``[0, 1e4]``.
    :param reference:
        The Hamiltonian to align degenerate subspaces with, normally the
        post-quench Hamiltonian.
    :param tolerances: Overrides for the default tolerances.
    :raises BetaOutOfRange: *beta* is negative, too large or not finite.
    :raises NonHermitianInput: *H* is not Hermitian.

    """
    tol = tolerances or DEFAULT_TOLERANCES
    if not 0.0 <= beta <= MAX_BETA:
        raise BetaOutOfRange(beta, MAX_BETA)

    h = as_complex_matrix(H)
    energy = hermitian_eig(h, tolerances=tol)
    energies = energy.eigenvalues
    n = len(energies)

    exponents = -beta * (energies - energies[0])
    if -exponents[-1] > OVERFLOW_EXPONENT:
        log.debug("Large beta*dE = %.1f, excited populations underflow", -exponents[-1])
    weights = np.exp(exponents)
    shifted_z = float(weights.sum())
    populations = weights / shifted_z
    log_z = -beta * float(energies[0]) + math.log(shifted_z)

    vectors = energy.eigenvectors.copy()
    if beta == 0:
        rho = np.eye(n, dtype=np.complex128) / n
    else:
        rho = (vectors * populations) @ adjoint(vectors)
        rho = (rho + adjoint(rho)) / 2

    if reference is not None:
        ref = as_complex_matrix(reference)
        populations, vectors = _align_degenerate(rho, populations, vectors, ref, tol)

    return ThermalState(
        beta=beta,
        rho=rho,
        decomposition=SpectralDecomposition(populations, vectors),
        log_partition_function=log_z,
        hamiltonian=h,
        energies=energies.copy(),
    )


def degenerate_groups(populations: RealVector, rtol: float) -> list[list[int]]:
    """Splits descending populations into runs of nearly equal values."""
    groups: list[list[int]] = []
    for i, p in enumerate(populations):
        if groups:
            last = populations[groups[-1][-1]]
            if abs(last - p) <= rtol * max(abs(last), abs(p)):
                groups[-1].append(i)
                continue
        groups.append([i])
    return groups


def _align_degenerate(
    rho: ComplexMatrix,
    populations: RealVector,
    vectors: ComplexMatrix,
    reference: ComplexMatrix,
    tol: Tolerances,
) -> tuple[RealVector, ComplexMatrix]:
    populations = populations.copy()
    for group in degenerate_groups(populations, tol.degeneracy_rtol):
        if len(group) < 2:
            continue

        w = vectors[:, group]
        restricted = adjoint(w) @ reference @ w
        restricted = (restricted + adjoint(restricted)) / 2
        aligned = w @ hermitian_eig(restricted, tolerances=tol).eigenvectors
        vectors[:, group] = aligned
        populations[group] = np.einsum("ik,ij,jk->k", aligned.conj(), rho, aligned).real
        log.debug("Aligned degenerate subspace %s with the reference Hamiltonian", group)

    return populations, vectors


def purity(state: ThermalState) -> float:
    """Returns ``Tr ρ²``, which runs from ``1/n`` at ``β = 0`` up to 1."""
    return float(np.sum(state.populations**2))


def von_neumann_entropy(state: ThermalState) -> float:
    """Returns ``-Tr ρ ln ρ`` in nats."""
    p = state.populations[state.populations > 0]
    return float(-np.sum(p * np.log(p)))
