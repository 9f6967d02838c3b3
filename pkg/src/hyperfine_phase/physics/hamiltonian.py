"""The hyperfine Hamiltonian of an electron spin coupled to a nuclear spin.

All matrices use the product basis ``|e↑n↑⟩, |e↑n↓⟩, |e↓n↑⟩, |e↓n↓⟩``,
with the electron as the left Kronecker factor. Spin operators are
``S = I = σ/2`` and energies are in natural units (``ħ = k_B = 1``).

"""
import dataclasses
import math

import numpy as np

from hyperfine_phase.errors import NonFiniteInput
from hyperfine_phase.linalg import ComplexMatrix, RealVector, commutator

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY_2 = np.eye(2, dtype=np.complex128)

ELECTRON_SPIN = tuple(np.kron(s / 2, IDENTITY_2) for s in (PAULI_X, PAULI_Y, PAULI_Z))
"""The electron spin operators ``(S_x, S_y, S_z)``."""

NUCLEAR_SPIN = tuple(np.kron(IDENTITY_2, s / 2) for s in (PAULI_X, PAULI_Y, PAULI_Z))
"""The nuclear spin operators ``(I_x, I_y, I_z)``."""

BASIS_LABELS = ("e↑n↑", "e↑n↓", "e↓n↑", "e↓n↓")


@dataclasses.dataclass(frozen=True, slots=True)
class SpinParams:
    """The couplings defining the Hamiltonian before and after the quench.

    No sign restrictions apply; negative ``J`` is a valid regime.

    """

    J: float
    """The hyperfine coupling constant."""
    C: float
    """The electron Zeeman coupling."""
    D: float = 0.0
    """The nuclear Zeeman coupling, negligible for most purposes."""
    epsilon: float = 0.0
    """The quench factor; the Zeeman term becomes ``(1 + epsilon) H_I``."""

    def __post_init__(self) -> None:
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not math.isfinite(value):
                raise NonFiniteInput(field.name, value)


@dataclasses.dataclass(frozen=True, slots=True)
class HydrogenConstants:
    """Physical constants of the hydrogen ground state."""

    g: float = 2.0
    """The electron g-factor, taken as exactly 2."""
    mu_ratio: float = 2.793
    """The proton magnetic moment in nuclear magnetons."""
    nuclear_spin: float = 0.5
    """The proton spin quantum number ``I``."""
    proton_electron_mass_ratio: float = 1836.15267343
    """``m_p/m_e``, which equals ``μ_B/μ_N``."""
    cd_ratio_scale: float = 2000.0
    """
    The rough ``|C/D| ~ m_p/m_e`` estimate.

    Evaluating the coupling formulas exactly gives about 657; this value is
    kept only for comparison and is not used in computation.
    """
    hyperfine_frequency_mhz: float = 1420.0
    """The measured hyperfine transition frequency. Not used in computation."""


HYDROGEN = HydrogenConstants()


def build_h0(J: float) -> ComplexMatrix:
    """Returns the hyperfine term ``J (I_x S_x + I_y S_y + I_z S_z)``."""
    _require_finite(J=J)
    return J * sum(s @ i for s, i in zip(ELECTRON_SPIN, NUCLEAR_SPIN))


def build_hi(C: float, D: float) -> ComplexMatrix:
    """Returns the Zeeman term ``C S_z + D I_z``, which is diagonal."""
    _require_finite(C=C, D=D)
    return C * ELECTRON_SPIN[2] + D * NUCLEAR_SPIN[2]


def build_full(params: SpinParams, quenched: bool = False) -> ComplexMatrix:
    """Returns ``H = H₀ + H_I``, or ``H' = H₀ + (1 + ε) H_I`` if *quenched*."""
    factor = 1.0 + params.epsilon if quenched else 1.0
    return build_h0(params.J) + factor * build_hi(params.C, params.D)


def analytic_spectrum(J: float, C: float) -> RealVector:
    """Returns the closed-form eigenvalues of ``H`` at ``D = 0``, ascending.

    The two product states ``|e↑n↑⟩`` and ``|e↓n↓⟩`` give ``(J ± 2C)/4``.
    The remaining block ``[[-J/4 + C/2, J/2], [J/2, -J/4 - C/2]]`` gives
    ``(-J ± 2√(C² + J²))/4``.

    """
    _require_finite(J=J, C=C)
    root = 2.0 * math.hypot(C, J)
    values = np.array([(J + 2 * C) / 4, (J - 2 * C) / 4, (-J + root) / 4, (-J - root) / 4])
    return np.sort(values)


def printed_spectrum(J: float, C: float) -> RealVector:
    """Returns ``{(J ± 2C)/4, (-J ± √(C² + J²))/4}`` ascending.

    This is the commonly quoted form, which drops a factor of 2 on the
    square root; at ``C = 0`` it disagrees with the spectrum of ``H₀``.
    Use :func:`analytic_spectrum` for computation.

    """
    _require_finite(J=J, C=C)
    root = math.hypot(C, J)
    values = np.array([(J + 2 * C) / 4, (J - 2 * C) / 4, (-J + root) / 4, (-J - root) / 4])
    return np.sort(values)


def field_to_couplings(
    B: float,
    *,
    energy_per_field: float = 1.0,
    constants: HydrogenConstants = HYDROGEN,
) -> tuple[float, float]:
    """Converts a magnetic field into the Zeeman couplings ``(C, D)``.

    Uses ``C = g μ_B B`` and ``D = -(μ/I) B`` with ``μ = mu_ratio · μ_N``
    and ``μ_N = μ_B / (m_p/m_e)``.

    :param B: The magnetic field.
    :param energy_per_field:
        The Bohr magneton expressed in the caller's energy unit per field
        unit, i.e. the unit scale of ``μ_B B``.
    :param constants: The atomic constants to use.

    """
    _require_finite(B=B, energy_per_field=energy_per_field)
    mu_b = energy_per_field
    mu_n = mu_b / constants.proton_electron_mass_ratio
    C = constants.g * mu_b * B
    D = -(constants.mu_ratio * mu_n / constants.nuclear_spin) * B
    return C, D


def commutator_norm(params: SpinParams) -> float:
    """Returns the Frobenius norm of ``[H₀, H_I]``.

    This vanishes exactly when ``J = 0`` or ``C = D``.

    """
    h0 = build_h0(params.J)
    hi = build_hi(params.C, params.D)
    return float(np.linalg.norm(commutator(h0, hi)))


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise NonFiniteInput(name, value)
