import math

import numpy as np

from hyperfine_phase.physics import SpinParams, ThermalState, build_full, gibbs_state


def angle_difference(a: float, b: float) -> float:
    """Returns the distance between two angles on the circle."""
    return abs(math.remainder(a - b, 2 * math.pi))


def quenched_state(params: SpinParams, beta: float) -> tuple[ThermalState, np.ndarray]:
    """Returns the thermal state of *params* aligned with ``H'``, and ``H'``."""
    hp = build_full(params, quenched=True)
    return gibbs_state(build_full(params), beta, reference=hp), hp


def random_point(rng: np.random.Generator, scale: float = 2.0) -> tuple[SpinParams, float, float]:
    """Draws moderate ``(params, beta, t)`` for property tests."""
    J, C, D = (float(x) for x in rng.uniform(-scale, scale, size=3))
    params = SpinParams(J=J, C=C, D=D, epsilon=float(rng.uniform(-1, 1)))
    return params, float(rng.uniform(0.1, 5)), float(rng.uniform(0, 5))


def random_quench(rng: np.random.Generator) -> tuple[SpinParams, float, float]:
    """Draws ``(params, beta, t)`` over the ranges the figures explore.

    ``J`` in [-2, 2], ``C`` in [0, 2], ``epsilon`` in [-1, 1],
    ``beta`` in [0.1, 5] and ``t`` in [0, 10], with ``D = 0``.

    """
    params = SpinParams(
        J=float(rng.uniform(-2, 2)),
        C=float(rng.uniform(0, 2)),
        epsilon=float(rng.uniform(-1, 1)),
    )
    return params, float(rng.uniform(0.1, 5)), float(rng.uniform(0, 10))
