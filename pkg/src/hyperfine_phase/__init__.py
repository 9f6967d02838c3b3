"""Mixed-state geometric phase and entanglement of a quenched hydrogen spin pair."""
from .constants import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    BetaOutOfRange,
    ConfigParseError,
    ConfigurationError,
    ConvergenceFailure,
    DimensionMismatch,
    GridPointError,
    GridTooLarge,
    InvalidDensityMatrix,
    NonFiniteFunctionValue,
    NonFiniteInput,
    NonHermitianInput,
    NonMonotonicTimeGrid,
    NonUnitaryPropagator,
    NumericalError,
    SimulationError,
    StepCountTooSmall,
)
from .linalg import SpectralDecomposition, hermitian_eig, spectral_function
from .physics import (
    ConcurrenceResult,
    DynamicalHamiltonian,
    EvolutionResult,
    PhaseResult,
    SpinParams,
    ThermalState,
    analytic_spectrum,
    build_full,
    build_h0,
    build_hi,
    concurrence,
    evolve,
    geometric_phase_closed,
    geometric_phase_integrated,
    gibbs_state,
    propagator,
    quench,
)
from .sweep import GridPoint, SweepConfig, SweepRow, build_config, run_sweep


def _get_version() -> str:
    from importlib.metadata import version

    return version("hyperfine-phase")


__version__ = _get_version()
