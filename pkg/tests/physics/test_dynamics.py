import math

import numpy as np
import pytest
import scipy.linalg

from hyperfine_phase import NonFiniteInput, NonUnitaryPropagator, SimulationError
from hyperfine_phase.linalg import hermitian_eig
from hyperfine_phase.physics import SpinParams, build_full, evolve, gibbs_state, propagator, quench


@pytest.fixture
def params() -> SpinParams:
    return SpinParams(J=1.0, C=1.0, D=0.1, epsilon=0.5)


@pytest.mark.parametrize("t", [0.0, 0.3, 7.0, 50.0])
def test_propagator_matches_expm(params, t):
    hp = build_full(params, quenched=True)
    assert np.allclose(propagator(hp, t), scipy.linalg.expm(-1j * hp * t), atol=1e-10)


def test_propagator_at_zero_is_identity(params):
    assert np.allclose(propagator(build_full(params), 0.0), np.eye(4), atol=1e-14)


def test_propagator_rejects_non_finite_time(params):
    with pytest.raises(NonFiniteInput) as info:
        propagator(build_full(params), math.inf)
    assert info.value.name == "t"
    assert isinstance(info.value, SimulationError)


def test_quench_preserves_spectrum_and_trace(params):
    state = gibbs_state(build_full(params), 1.0)
    result = quench(state, build_full(params, quenched=True), 3.0)

    assert result.t == 3.0
    assert math.isclose(np.trace(result.rho_t).real, 1.0, rel_tol=1e-13)
    after = hermitian_eig(result.rho_t).eigenvalues
    assert np.allclose(after, np.sort(state.populations), atol=1e-13)


def test_stationary_without_quench():
    params = SpinParams(J=1.0, C=1.0)
    state = gibbs_state(build_full(params), 1.0)
    result = quench(state, build_full(params), 7.0)
    assert np.allclose(result.rho_t, state.rho, atol=1e-13)


def test_evolve_accepts_bare_matrix(params):
    rho = np.eye(4) / 4
    u = propagator(build_full(params), 1.0)
    result = evolve(rho, u)
    assert math.isnan(result.t)
    assert np.allclose(result.rho_t, rho)


def test_evolve_rejects_non_unitary(params):
    state = gibbs_state(build_full(params), 1.0)
    with pytest.raises(NonUnitaryPropagator):
        evolve(state, 1.01 * np.eye(4))


def test_evolution_composes(params):
    hp = build_full(params, quenched=True)
    state = gibbs_state(build_full(params), 1.0)
    u = propagator(hp, 1.3)
    twice = evolve(evolve(state, u).rho_t, u).rho_t
    assert np.allclose(twice, evolve(state, propagator(hp, 2.6)).rho_t, atol=1e-10)


@pytest.mark.parametrize("t", [0.4, 3.0, 25.0])
def test_backward_propagator_inverts(params, t):
    hp = build_full(params, quenched=True)
    assert np.allclose(propagator(hp, t) @ propagator(hp, -t), np.eye(4), atol=1e-10)


def test_quench_moves_the_state():
    params = SpinParams(J=1.0, C=1.0, epsilon=0.5)
    state = gibbs_state(build_full(params), 1.0)
    result = evolve(state, propagator(build_full(params, quenched=True), 1.0), t=1.0)

    after = hermitian_eig(result.rho_t).eigenvalues
    assert np.allclose(after, np.sort(state.populations), atol=1e-10)
    assert np.max(np.abs(result.rho_t - state.rho)) > 1e-3
