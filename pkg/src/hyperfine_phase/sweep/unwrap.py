"""Phase unwrapping along the time axis of a sweep."""
import math
from typing import Sequence

import numpy as np

from hyperfine_phase.errors import NonMonotonicTimeGrid


def unwrap_phase(series: Sequence[tuple[float, float | None]]) -> list[float | None]:
    """Removes ``2π`` jumps from a time series of wrapped phases.

    Multiples of ``2π`` are added so that consecutive defined values differ
    by at most ``π``. Undefined entries (``None`` or NaN) are passed through
    as ``None`` and the values on either side of them are unwrapped against
    each other. The first defined value is never changed.

    :param series: ``(t, gamma)`` pairs in time order.
    :raises NonMonotonicTimeGrid: The times are not strictly increasing.

    """
    for i in range(1, len(series)):
        if not series[i][0] > series[i - 1][0]:
            raise NonMonotonicTimeGrid(i)

    defined = [
        i for i, (_, gamma) in enumerate(series)
        if gamma is not None and math.isfinite(gamma)
    ]
    result: list[float | None] = [None] * len(series)
    if not defined:
        return result

    wrapped = np.array([series[i][1] for i in defined], dtype=np.float64)
    for i, value in zip(defined, np.unwrap(wrapped)):
        result[i] = float(value)
    return result
