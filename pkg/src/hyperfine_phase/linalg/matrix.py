from typing import TypeAlias

import numpy as np
import numpy.typing as npt

from hyperfine_phase.errors import DimensionMismatch, NonFiniteInput, NonHermitianInput

ComplexMatrix: TypeAlias = npt.NDArray[np.complex128]
"""A dense square complex matrix.

Hamiltonians, density matrices and propagators are all carried this way.
Energies are in natural units where ``ħ = k_B = 1``.

"""

RealVector: TypeAlias = npt.NDArray[np.float64]


def as_complex_matrix(m: npt.ArrayLike) -> ComplexMatrix:
    """Converts the input to a square complex128 matrix with finite entries.

    :raises DimensionMismatch: The input is not a square 2D array.
    :raises NonFiniteInput: The input contains NaN or infinity.

    """
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        n = arr.shape[0] if arr.ndim > 0 else 0
        raise DimensionMismatch((n, n), arr.shape)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput("matrix entries")
    return arr


def adjoint(m: ComplexMatrix) -> ComplexMatrix:
    """Returns the conjugate transpose of a matrix."""
    return m.conj().T


def commutator(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Returns ``[a, b] = ab - ba``."""
    return a @ b - b @ a


def hermitian_deviation(m: ComplexMatrix) -> float:
    """Returns ``max|M - M†|`` over all entries."""
    return float(np.max(np.abs(m - adjoint(m)), initial=0.0))


def unitary_deviation(m: ComplexMatrix) -> float:
    """Returns ``max|M†M - 1|`` over all entries."""
    identity = np.eye(m.shape[0], dtype=np.complex128)
    return float(np.max(np.abs(adjoint(m) @ m - identity), initial=0.0))


def is_hermitian(m: ComplexMatrix, tol: float) -> bool:
    """Checks if ``max|M - M†| <= tol`` elementwise."""
    return hermitian_deviation(m) <= tol


def is_unitary(m: ComplexMatrix, tol: float) -> bool:
    """Checks if ``max|M†M - 1| <= tol`` elementwise."""
    return unitary_deviation(m) <= tol


def require_hermitian(m: ComplexMatrix, tol: float) -> None:
    """Raises :exc:`NonHermitianInput` unless the matrix is Hermitian within *tol*."""
    deviation = hermitian_deviation(m)
    if deviation > tol:
        raise NonHermitianInput(deviation, tol)


def require_same_shape(a: ComplexMatrix, b: ComplexMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(a.shape, b.shape)
