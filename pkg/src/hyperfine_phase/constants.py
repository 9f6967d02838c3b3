import dataclasses
from typing import Any, Self

HERMITIAN_TOL = 1e-10
"""Largest ``|M - M†|`` entry accepted for matrices expected to be Hermitian."""

UNITARY_TOL = 1e-8
"""Largest ``|U†U - 1|`` entry accepted for propagators passed to ``evolve()``."""

JACOBI_OFF_NORM_TOL = 1e-14
"""
The Jacobi iteration stops when the off-diagonal Frobenius norm falls below
this fraction of the input's Frobenius norm.
"""

JACOBI_MAX_SWEEPS = 64
"""The number of cyclic sweeps after which the eigensolver gives up."""

MAX_EIG_DIM = 16
"""The largest matrix dimension accepted by the eigensolver."""

MAX_BETA = 1e4
"""
The largest supported inverse temperature.

Beyond this the Gibbs state is numerically a ground-state projector.
"""

DEGENERACY_RTOL = 1e-5
"""
Populations whose relative difference is at most this are treated as
one degenerate subspace.
"""

PHASE_MAGNITUDE_MIN = 1e-9
"""Below this modulus the geometric phase sum has no meaningful argument."""

DENSITY_MATRIX_TOL = 1e-8
"""Slack for Hermiticity, unit trace and positivity of density matrices."""

SPIN_FLIP_ZERO_TOL = 1e-14
"""Eigenvalues of the spin-flip product below this are treated as exactly zero."""

NEGATIVE_EIGENVALUE_SLACK = 1e-10
"""How negative a spin-flip eigenvalue may be before it is rejected."""

MIN_ORACLE_STEPS = 100
"""The fewest intervals accepted by the integrated geometric phase."""

DEFAULT_ORACLE_STEPS = 10_000
"""The default number of intervals for the integrated geometric phase."""

DEFAULT_MAX_ROWS = 10_000_000
"""The default cap on the number of rows a sweep may produce."""


@dataclasses.dataclass(frozen=True, slots=True)
class Tolerances:
    """The numerical tolerances used throughout the library.

    Every operation that compares against a tolerance accepts an instance
    of this class, falling back to :data:`DEFAULT_TOLERANCES`.

    """

    hermitian: float = HERMITIAN_TOL
    unitary: float = UNITARY_TOL
    jacobi_off_norm: float = JACOBI_OFF_NORM_TOL
    jacobi_max_sweeps: int = JACOBI_MAX_SWEEPS
    degeneracy_rtol: float = DEGENERACY_RTOL
    phase_magnitude_min: float = PHASE_MAGNITUDE_MIN
    density_matrix: float = DENSITY_MATRIX_TOL
    spin_flip_zero: float = SPIN_FLIP_ZERO_TOL
    negative_eigenvalue_slack: float = NEGATIVE_EIGENVALUE_SLACK

    def replace(self, **overrides: Any) -> Self:
        """Returns a copy with the given fields replaced."""
        return dataclasses.replace(self, **overrides)


DEFAULT_TOLERANCES = Tolerances()
"""The tolerances used when none are passed explicitly."""
