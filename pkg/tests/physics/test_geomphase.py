import dataclasses
import math

import numpy as np
import pytest

from hyperfine_phase import StepCountTooSmall
from hyperfine_phase.constants import DEFAULT_TOLERANCES
from hyperfine_phase.linalg import SpectralDecomposition, hermitian_eig
from hyperfine_phase.physics import (
    DynamicalHamiltonian,
    SpinParams,
    geometric_phase_closed,
    geometric_phase_integrated,
    principal_value,
)

from tests import angle_difference, quenched_state, random_point, random_quench


def test_integrated_matches_closed():
    rng = np.random.default_rng(2)
    compared = 0
    for _ in range(200):
        params, beta, t = random_point(rng)
        state, hp = quenched_state(params, beta)
        closed = geometric_phase_closed(state, hp, t)
        if closed.magnitude < 1e-3:
            continue
        integrated = geometric_phase_integrated(state, hp, t, 10_000)
        assert angle_difference(closed.gamma, integrated.gamma) < 1e-6
        compared += 1
    assert compared > 150


def test_integrated_converges_with_steps():
    rng = np.random.default_rng(3)
    for _ in range(20):
        params, beta, t = random_point(rng)
        state, hp = quenched_state(params, beta)
        coarse = geometric_phase_integrated(state, hp, t, 10_000)
        fine = geometric_phase_integrated(state, hp, t, 20_000)
        if not coarse.well_defined or coarse.magnitude < 1e-3:
            continue
        assert angle_difference(coarse.gamma, fine.gamma) < 1e-6


def test_integrated_matches_closed_over_figure_ranges():
    rng = np.random.default_rng(6)
    compared = 0
    for _ in range(100):
        params, beta, t = random_quench(rng)
        state, hp = quenched_state(params, beta)
        closed = geometric_phase_closed(state, hp, t)
        if not closed.well_defined or closed.magnitude < 1e-6:
            continue
        integrated = geometric_phase_integrated(state, hp, t, 1000)
        assert angle_difference(closed.gamma, integrated.gamma) < 1e-6, (params, beta, t)
        compared += 1
    assert compared > 80


def test_doubling_oracle_steps_changes_little():
    rng = np.random.default_rng(7)
    for _ in range(30):
        params, beta, t = random_quench(rng)
        state, hp = quenched_state(params, beta)
        coarse = geometric_phase_integrated(state, hp, t, 1000)
        fine = geometric_phase_integrated(state, hp, t, 2000)
        if not coarse.well_defined or coarse.magnitude < 1e-6:
            continue
        assert angle_difference(coarse.gamma, fine.gamma) < 1e-6, (params, beta, t)


def test_phase_is_continuous_in_time():
    rng = np.random.default_rng(8)
    delta = 1e-6
    for _ in range(300):
        params, beta, t = random_quench(rng)
        state, hp = quenched_state(params, beta)
        now = geometric_phase_closed(state, hp, t)
        later = geometric_phase_closed(state, hp, t + delta)
        if min(now.magnitude, later.magnitude) < 1e-6:
            continue
        assert angle_difference(now.gamma, later.gamma) < 1e-4, (params, beta, t)


def test_integrated_without_extrapolation():
    state, hp = quenched_state(SpinParams(J=1.0, C=1.0, epsilon=0.5), 1.0)
    closed = geometric_phase_closed(state, hp, 2.0)
    plain = geometric_phase_integrated(state, hp, 2.0, 10_000, extrapolate=False)
    assert angle_difference(closed.gamma, plain.gamma) < 1e-4


def test_step_count_too_small():
    state, hp = quenched_state(SpinParams(J=1.0, C=1.0, epsilon=0.5), 1.0)
    with pytest.raises(StepCountTooSmall):
        geometric_phase_integrated(state, hp, 1.0, 99)


def test_zero_phase_limits():
    rng = np.random.default_rng(4)
    for _ in range(50):
        params, beta, t = random_point(rng)
        cases = [
            (dataclasses.replace(params, epsilon=0.0), beta, t),
            (dataclasses.replace(params, C=0.0, D=0.0), beta, t),
            (dataclasses.replace(params, J=0.0), beta, 1.0),
            (params, beta, 0.0),
            (params, 1e-6, t),
        ]
        for case_params, case_beta, case_t in cases:
            state, hp = quenched_state(case_params, case_beta)
            phase = geometric_phase_closed(state, hp, case_t)
            assert phase.well_defined
            assert abs(phase.gamma) < 1e-9, case_params


def test_gauge_invariance():
    rng = np.random.default_rng(5)
    for _ in range(500):
        params, beta, t = random_point(rng)
        state, hp = quenched_state(params, beta)
        phases = np.exp(1j * rng.uniform(0, 2 * math.pi, size=4))
        rephased = dataclasses.replace(
            state,
            decomposition=SpectralDecomposition(
                state.populations.copy(), state.eigenvectors * phases
            ),
        )

        a = geometric_phase_closed(state, hp, t)
        b = geometric_phase_closed(rephased, hp, t)
        if a.magnitude > 1e-3:
            assert angle_difference(a.gamma, b.gamma) < 1e-10


def test_sign_of_coupling_matters():
    gammas = []
    for J in (1.0, -1.0):
        state, hp = quenched_state(SpinParams(J=J, C=1.0, epsilon=0.5), 1.0)
        gammas.append(geometric_phase_closed(state, hp, 1.0).gamma)
    assert abs(abs(gammas[0]) - abs(gammas[1])) > 1e-3


def test_sign_of_coupling_changes_largest_phase():
    times = np.linspace(0, 10, 1001)
    largest = []
    for J in (1.0, -1.0):
        state, hp = quenched_state(SpinParams(J=J, C=1.0, epsilon=0.5), 1.0)
        phases = [geometric_phase_closed(state, hp, float(t)) for t in times]
        largest.append(max(abs(p.gamma) for p in phases if p.well_defined))
    assert abs(largest[0] - largest[1]) > 1e-3


@pytest.mark.parametrize("J", [100.0, -100.0])
def test_strong_coupling_suppresses_phase(J):
    state, hp = quenched_state(SpinParams(J=J, C=1.0, epsilon=0.5), 1.0)
    assert abs(geometric_phase_closed(state, hp, 1.0).gamma) < 0.05


def test_field_switched_off_gives_phase():
    state, hp = quenched_state(SpinParams(J=1.0, C=1.0, epsilon=-1.0), 1.0)
    gammas = [geometric_phase_closed(state, hp, t).gamma for t in (0.7, 1.9, 3.3)]
    assert max(abs(g) for g in gammas) > 1e-3


def test_accepts_decomposition():
    state, hp = quenched_state(SpinParams(J=1.0, C=1.0, epsilon=0.5), 1.0)
    a = geometric_phase_closed(state, hp, 2.0)
    b = geometric_phase_closed(state, hermitian_eig(hp), 2.0)
    assert angle_difference(a.gamma, b.gamma) < 1e-14


def test_dynamical_hamiltonian_choice():
    state, hp = quenched_state(SpinParams(J=1.0, C=1.0), 1.0)
    post = geometric_phase_closed(state, hp, 2.0, dynamical_h=DynamicalHamiltonian.post)
    pre = geometric_phase_closed(state, hp, 2.0, dynamical_h=DynamicalHamiltonian.pre)
    assert post == pre

    state, hp = quenched_state(SpinParams(J=1.0, C=1.0, epsilon=0.5), 1.0)
    post = geometric_phase_closed(state, hp, 2.0, dynamical_h="post")
    pre = geometric_phase_closed(state, hp, 2.0, dynamical_h="pre")
    assert post.gamma != pre.gamma


def test_ill_defined_phase():
    state, hp = quenched_state(SpinParams(J=1.0, C=1.0, epsilon=0.5), 1.0)
    tolerances = DEFAULT_TOLERANCES.replace(phase_magnitude_min=2.0)
    phase = geometric_phase_closed(state, hp, 1.0, tolerances=tolerances)
    assert not phase.well_defined
    assert math.isnan(phase.gamma)
    assert phase.magnitude <= 1.0


def test_principal_value():
    assert principal_value(-math.pi) == math.pi
    assert principal_value(1.0) == 1.0
