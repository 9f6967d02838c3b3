from typing import Callable

import numpy as np
import numpy.typing as npt

from .jacobi import SpectralDecomposition, hermitian_eig
from .matrix import ComplexMatrix, RealVector, adjoint
from hyperfine_phase.constants import Tolerances
from hyperfine_phase.errors import NonFiniteFunctionValue

SpectralFunc = Callable[[RealVector], npt.ArrayLike]
"""
A scalar function of a real variable, applied elementwise to an array of
eigenvalues, e.g. ``np.exp`` or ``lambda x: np.exp(-1j * x * t)``.
"""


def spectral_function(
    m: npt.ArrayLike | SpectralDecomposition,
    f: SpectralFunc,
    *,
    tolerances: Tolerances | None = None,
) -> ComplexMatrix:
    """Evaluates ``f(M) = V diag(f(λ₁), ..., f(λₙ)) V†``.

    The result is Hermitian when *f* is real-valued and unitary when
    ``|f| = 1``.

    :param m:
        The Hermitian matrix, or its decomposition if one is already at hand.
    :param f: The function to apply to each eigenvalue.
    :param tolerances: Overrides for the default tolerances.
    :raises NonFiniteFunctionValue: *f* is not finite at some eigenvalue.

    """
    if isinstance(m, SpectralDecomposition):
        decomposition = m
    else:
        decomposition = hermitian_eig(m, tolerances=tolerances)

    eigenvalues = decomposition.eigenvalues
    values = np.broadcast_to(
        np.asarray(f(eigenvalues), dtype=np.complex128),
        eigenvalues.shape,
    )
    bad = ~np.isfinite(values)
    if bad.any():
        raise NonFiniteFunctionValue(float(eigenvalues[np.argmax(bad)]))

    v = decomposition.eigenvectors
    return (v * values) @ adjoint(v)
