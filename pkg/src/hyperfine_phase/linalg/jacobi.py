"""Cyclic Jacobi eigensolver for small dense Hermitian matrices."""
import dataclasses
import logging
import math

import numpy as np
import numpy.typing as npt

from .matrix import (
    ComplexMatrix,
    RealVector,
    adjoint,
    as_complex_matrix,
    require_hermitian,
)
from hyperfine_phase.constants import DEFAULT_TOLERANCES, MAX_EIG_DIM, Tolerances
from hyperfine_phase.errors import ConvergenceFailure, DimensionMismatch

log = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues and orthonormal eigenvectors of a Hermitian matrix.

    Column ``k`` of :attr:`eigenvectors` belongs to ``eigenvalues[k]``.
    Both arrays are read-only.

    """

    eigenvalues: RealVector
    """The real eigenvalues. :func:`hermitian_eig` returns them ascending."""

    eigenvectors: ComplexMatrix
    """
    The eigenvectors as columns, gauge-fixed so that the entry of largest
    modulus in each column is real and non-negative.
    """

    def __post_init__(self) -> None:
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> ComplexMatrix:
        """Returns ``V Λ V†``."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ adjoint(v)


def hermitian_eig(
    m: npt.ArrayLike,
    *,
    tolerances: Tolerances | None = None,
) -> SpectralDecomposition:
    """Diagonalizes a Hermitian matrix with cyclic complex Jacobi rotations.

    Each sweep visits every upper off-diagonal pair ``(p, q)`` in row-major
    order and annihilates it with a unitary rotation. Iteration stops once
    the off-diagonal Frobenius norm drops below
    :attr:`~hyperfine_phase.constants.Tolerances.jacobi_off_norm` times the
    Frobenius norm of the input.

    The result is deterministic: eigenvalues are sorted ascending with
    a stable sort, and each eigenvector is gauge-fixed by
    :func:`fix_gauge`.

    :param m: The Hermitian matrix to diagonalize, at most 16x16.
    :param tolerances: Overrides for the default tolerances.
    :raises DimensionMismatch: The matrix is not square or is too large.
    :raises NonHermitianInput: The matrix is not Hermitian within tolerance.
    :raises ConvergenceFailure: The sweep budget ran out.

    """
    tol = tolerances or DEFAULT_TOLERANCES
    a = as_complex_matrix(m)
    n = a.shape[0]
    if n > MAX_EIG_DIM:
        raise DimensionMismatch((MAX_EIG_DIM, MAX_EIG_DIM), a.shape)
    require_hermitian(a, tol.hermitian)

    a = (a + adjoint(a)) / 2
    v = np.eye(n, dtype=np.complex128)
    threshold = tol.jacobi_off_norm * float(np.linalg.norm(a))

    sweeps = 0
    off = _off_norm(a)
    while off > threshold:
        if sweeps >= tol.jacobi_max_sweeps:
            raise ConvergenceFailure(sweeps, off)
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
        sweeps += 1
        off = _off_norm(a)

    log.debug("Jacobi converged in %d sweeps (off-diagonal norm %.2e)", sweeps, off)

    eigenvalues = np.diag(a).real.copy()
    order = np.argsort(eigenvalues, kind="stable")
    return SpectralDecomposition(
        eigenvalues=eigenvalues[order],
        eigenvectors=fix_gauge(v[:, order]),
    )


def fix_gauge(vectors: ComplexMatrix) -> ComplexMatrix:
    """Rephases each column so its largest-modulus entry is real and non-negative.

    Ties between entries of equal modulus go to the lowest row index.

    """
    n = vectors.shape[1]
    columns = np.arange(n)
    rows = np.argmax(np.abs(vectors), axis=0)
    pivots = vectors[rows, columns]
    moduli = np.abs(pivots)
    fixed = vectors / (pivots / moduli)[np.newaxis, :]
    fixed[rows, columns] = moduli
    return fixed


def _off_norm(a: ComplexMatrix) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a: ComplexMatrix, v: ComplexMatrix, p: int, q: int) -> None:
    """Annihilates ``a[p, q]`` in place and accumulates the rotation into *v*."""
    apq = a[p, q]
    r = abs(apq)
    if r == 0.0:
        return

    phase = apq / r
    theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
    if abs(theta) > 1e150:
        t = 1.0 / (2.0 * theta)
    else:
        t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    # diag(1, conj(phase)) makes the pair real, then a real rotation zeroes it
    g = np.array(
        [[c, s], [-s * phase.conjugate(), c * phase.conjugate()]],
        dtype=np.complex128,
    )
    pair = [p, q]
    a[:, pair] = a[:, pair] @ g
    a[pair, :] = adjoint(g) @ a[pair, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, pair] = v[:, pair] @ g
