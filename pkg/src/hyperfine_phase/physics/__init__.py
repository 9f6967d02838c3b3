from .dynamics import EvolutionResult, evolve, propagator, quench
from .entanglement import (
    SIGMA_YY,
    ConcurrenceResult,
    concurrence,
    concurrence_threshold_temperature,
    heisenberg_concurrence,
    spin_flip,
)
from .geomphase import (
    DynamicalHamiltonian,
    PhaseResult,
    geometric_phase_closed,
    geometric_phase_integrated,
    principal_value,
)
from .hamiltonian import (
    BASIS_LABELS,
    ELECTRON_SPIN,
    HYDROGEN,
    NUCLEAR_SPIN,
    HydrogenConstants,
    SpinParams,
    analytic_spectrum,
    build_full,
    build_h0,
    build_hi,
    commutator_norm,
    field_to_couplings,
    printed_spectrum,
)
from .thermal import (
    ThermalState,
    degenerate_groups,
    gibbs_state,
    purity,
    von_neumann_entropy,
)
