import dataclasses

import numpy as np
import pytest

from hyperfine_phase import NonFiniteInput, SimulationError
from hyperfine_phase.linalg import hermitian_eig, is_hermitian
from hyperfine_phase.physics import (
    ELECTRON_SPIN,
    NUCLEAR_SPIN,
    SpinParams,
    analytic_spectrum,
    build_full,
    build_h0,
    build_hi,
    commutator_norm,
    field_to_couplings,
    printed_spectrum,
)


def test_h0_at_unit_coupling():
    h0 = build_h0(1.0)
    assert abs(np.trace(h0)) < 1e-15
    assert np.allclose(np.diag(h0).real, [0.25, -0.25, -0.25, 0.25])


def test_full_hamiltonian_is_traceless(rng):
    for _ in range(20):
        J, C, D, epsilon = rng.uniform(-5, 5, size=4)
        params = SpinParams(J=J, C=C, D=D, epsilon=epsilon)
        assert abs(np.trace(build_full(params))) < 1e-12
        assert abs(np.trace(build_full(params, quenched=True))) < 1e-12


@pytest.mark.parametrize("field", ["J", "C", "D"])
def test_full_hamiltonian_is_linear(rng, field):
    base = SpinParams(J=0.0, C=0.0, D=0.0)
    a, b = rng.uniform(-3, 3, size=2)

    def h(value: float) -> np.ndarray:
        return build_full(dataclasses.replace(base, **{field: float(value)}))

    assert np.allclose(h(a + b), h(a) + h(b), atol=1e-12)
    assert np.allclose(h(2.5 * a), 2.5 * h(a), atol=1e-12)


def test_full_hamiltonian_sums_its_parts():
    params = SpinParams(J=1.3, C=0.7, D=-0.2)
    parts = [
        build_full(SpinParams(J=1.3, C=0.0)),
        build_full(SpinParams(J=0.0, C=0.7)),
        build_full(SpinParams(J=0.0, C=0.0, D=-0.2)),
    ]
    assert np.allclose(build_full(params), sum(parts), atol=1e-14)


def test_spin_operators_commute():
    for s in ELECTRON_SPIN:
        for i in NUCLEAR_SPIN:
            assert np.allclose(s @ i, i @ s)


def test_h0_spectrum():
    # singlet at -3J/4, triplet at J/4
    energies = hermitian_eig(build_h0(2.0)).eigenvalues
    assert np.allclose(energies, [-1.5, 0.5, 0.5, 0.5])


def test_hi_is_diagonal():
    hi = build_hi(1.0, 0.5)
    assert np.array_equal(hi, np.diag(np.diag(hi)))
    assert np.allclose(np.diag(hi).real, [0.75, 0.25, -0.25, -0.75])


@pytest.mark.parametrize("epsilon", [-1.0, 0.0, 0.5, 2.0])
def test_quenched_hamiltonian(epsilon):
    params = SpinParams(J=1.0, C=0.7, D=0.1, epsilon=epsilon)
    expected = build_h0(1.0) + (1 + epsilon) * build_hi(0.7, 0.1)
    assert np.allclose(build_full(params, quenched=True), expected)
    assert is_hermitian(build_full(params, quenched=True), 0.0)


def test_field_free_quench_leaves_bare_coupling():
    params = SpinParams(J=1.3, C=2.0, D=0.4, epsilon=-1.0)
    assert np.allclose(build_full(params, quenched=True), build_h0(1.3))


def test_printed_spectrum_disagrees_without_field():
    assert np.allclose(analytic_spectrum(1.0, 0.0), [-0.75, 0.25, 0.25, 0.25])
    assert not np.allclose(printed_spectrum(1.0, 0.0), analytic_spectrum(1.0, 0.0))


@pytest.mark.parametrize(
    ("params", "vanishes"),
    [
        (SpinParams(J=0.0, C=1.0, D=0.3), True),
        (SpinParams(J=1.0, C=0.5, D=0.5), True),
        (SpinParams(J=1.0, C=1.0, D=0.0), False),
    ],
)
def test_commutator_norm(params, vanishes):
    assert (commutator_norm(params) < 1e-14) == vanishes


def test_field_to_couplings_ratio():
    C, D = field_to_couplings(1.0)
    assert C > 0 > D
    assert 650 < abs(C / D) < 665


def test_non_finite_params():
    with pytest.raises(NonFiniteInput) as info:
        SpinParams(J=float("nan"), C=1.0)
    assert info.value.name == "J"
    assert isinstance(info.value, SimulationError)


def test_non_finite_coupling():
    with pytest.raises(SimulationError):
        build_hi(1.0, float("inf"))
