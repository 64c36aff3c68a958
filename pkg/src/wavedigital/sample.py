"""Sample type helpers.

Every port quantity in this library is a "sample": either a plain Python
float (scalar processing) or a numpy float64 array of shape (L,) holding L
independent lanes.  All element and adaptor arithmetic is written so that it
broadcasts transparently over either representation; lanes never interact
except through explicit reductions (see :func:`lane_sum`).
"""

from __future__ import annotations

from typing import Union

import numpy as np

Sample = Union[float, np.ndarray]


def lane_count(x: Sample) -> int:
    """Number of lanes carried by a sample (1 for scalars)."""
    if isinstance(x, np.ndarray):
        return int(x.shape[0])
    return 1


def zero_sample(lanes: int | None = None) -> Sample:
    """A zero sample: scalar 0.0, or an (L,) zero vector when lanes is set."""
    if lanes is None:
        return 0.0
    return np.zeros(lanes)


def splat(value: float, lanes: int | None) -> Sample:
    """Broadcast a scalar to the requested lane count."""
    if lanes is None:
        return float(value)
    return np.full(lanes, float(value))


def sign(x: Sample) -> Sample:
    # scalar path matches the generated-kernel expression exactly
    if isinstance(x, np.ndarray):
        return np.sign(x)
    return 1.0 if x > 0.0 else (-1.0 if x < 0.0 else 0.0)


def lane_sum(x: Sample) -> float:
    """Explicit cross-lane reduction (ordered, lane 0 first)."""
    if isinstance(x, np.ndarray):
        total = 0.0
        for v in x:
            total += float(v)
        return total
    return float(x)
