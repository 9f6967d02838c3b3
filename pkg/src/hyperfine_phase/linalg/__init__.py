from .jacobi import SpectralDecomposition, fix_gauge, hermitian_eig
from .matrix import (
    ComplexMatrix,
    RealVector,
    adjoint,
    as_complex_matrix,
    commutator,
    hermitian_deviation,
    is_hermitian,
    is_unitary,
    require_hermitian,
    require_same_shape,
    unitary_deviation,
)
from .spectral import SpectralFunc, spectral_function
