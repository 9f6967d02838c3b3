from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from hyperfine_phase.sweep.config import GridPoint


class SimulationError(Exception):
    """The base class for exceptions raised by the library."""


class NumericalError(SimulationError):
    """
    A computation could not be carried out on the given inputs.

    The command-line interface exits with status 2 for these errors.

    """


class ConfigurationError(SimulationError):
    """
    A sweep configuration could not be used.

    The command-line interface exits with status 1 for these errors.

    """


class NonHermitianInput(NumericalError, ValueError):
    """A matrix expected to be Hermitian was not, within tolerance."""

    deviation: float
    """The largest elementwise magnitude of ``M - M†``."""

    def __init__(self, deviation: float, tolerance: float) -> None:
        super().__init__(
            f"matrix is not Hermitian: max|M - M†| = {deviation:.3e} "
            f"exceeds {tolerance:.1e}"
        )
        self.deviation = deviation


class NonFiniteInput(NumericalError, ValueError):
    """An input value was NaN or infinite."""

    name: str
    """What the offending value was passed as."""

    def __init__(self, name: str, value: object = None) -> None:
        if value is None:
            super().__init__(f"{name} must be finite")
        else:
            super().__init__(f"{name} must be finite, got {value!r}")
        self.name = name


class ConvergenceFailure(NumericalError, ArithmeticError):
    """The Jacobi eigensolver did not reach tolerance in its sweep budget."""

    sweeps: int
    """The number of sweeps performed before giving up."""

    off_norm: float
    """The off-diagonal Frobenius norm left after the last sweep."""

    def __init__(self, sweeps: int, off_norm: float) -> None:
        super().__init__(
            f"Jacobi iteration did not converge after {sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.3e})"
        )
        self.sweeps = sweeps
        self.off_norm = off_norm


class NonFiniteFunctionValue(NumericalError, ArithmeticError):
    """A spectral function produced NaN or infinity at an eigenvalue."""

    eigenvalue: float

    def __init__(self, eigenvalue: float) -> None:
        super().__init__(f"function value is not finite at eigenvalue {eigenvalue!r}")
        self.eigenvalue = eigenvalue


class DimensionMismatch(NumericalError, ValueError):
    """Two operands did not have compatible shapes."""

    expected: tuple[int, ...]
    actual: tuple[int, ...]

    def __init__(self, expected: tuple[int, ...], actual: tuple[int, ...]) -> None:
        super().__init__(f"expected shape {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


class BetaOutOfRange(NumericalError, ValueError):
    """The inverse temperature was outside the supported range."""

    beta: float

    def __init__(self, beta: float, maximum: float) -> None:
        super().__init__(f"beta must lie within [0, {maximum:g}], got {beta!r}")
        self.beta = beta


class NonUnitaryPropagator(NumericalError, ValueError):
    """A propagator passed to :func:`~hyperfine_phase.physics.evolve` was not unitary."""

    deviation: float
    """The largest elementwise magnitude of ``U†U - 1``."""

    def __init__(self, deviation: float, tolerance: float) -> None:
        super().__init__(
            f"propagator is not unitary: max|U†U - 1| = {deviation:.3e} "
            f"exceeds {tolerance:.1e}"
        )
        self.deviation = deviation


class StepCountTooSmall(NumericalError, ValueError):
    """Too few steps were requested for the integrated geometric phase."""

    steps: int
    minimum: int

    def __init__(self, steps: int, minimum: int) -> None:
        super().__init__(f"at least {minimum} steps are required, got {steps}")
        self.steps = steps
        self.minimum = minimum


class InvalidDensityMatrix(NumericalError, ValueError):
    """A matrix was not a valid two-qubit density matrix."""

    reason: str
    """What the matrix failed to satisfy."""

    def __init__(self, reason: str) -> None:
        super().__init__(f"invalid density matrix: {reason}")
        self.reason = reason


class NonMonotonicTimeGrid(NumericalError, ValueError):
    """The times of a phase series were not strictly increasing."""

    index: int
    """The index of the first time that did not increase."""

    def __init__(self, index: int) -> None:
        super().__init__(f"time grid is not strictly increasing at index {index}")
        self.index = index


class GridPointError(NumericalError):
    """
    A grid point of a sweep failed to evaluate.

    The original exception is available as :attr:`__cause__`.

    """

    point: GridPoint
    """The grid point that failed."""

    def __init__(self, point: GridPoint, cause: BaseException) -> None:
        values = ", ".join(f"{k}={v!r}" for k, v in point._asdict().items())
        super().__init__(f"grid point ({values}) failed: {cause}")
        self.point = point


class ConfigParseError(ConfigurationError, ValueError):
    """A configuration file or override could not be parsed."""

    source: str
    """Where the offending configuration came from."""

    def __init__(self, source: str, message: str) -> None:
        super().__init__(f"{source}: {message}")
        self.source = source


class GridTooLarge(ConfigurationError, ValueError):
    """A sweep grid exceeded the configured row limit."""

    size: int
    limit: int

    def __init__(self, size: int, limit: int) -> None:
        super().__init__(
            f"sweep grid has {size} rows, which exceeds the limit of {limit}"
        )
        self.size = size
        self.limit = limit
