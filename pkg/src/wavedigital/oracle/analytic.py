"""Closed-form discrete-time frequency responses.

Each family's analog transfer function is evaluated under the bilinear
substitution s -> 2*fs*(1 - z^-1)/(1 + z^-1), which is the mapping implied
by trapezoidal discretization.  Evaluating the result on the unit circle
gives the exact frequency response the wave models must reproduce.
"""

from __future__ import annotations

import numpy as np

FAMILIES = ("divider", "rc1", "lpf2")


def analytic_response(family, values, freqs, fs):
    """Complex response of a circuit family at the given frequencies (Hz)."""
    freqs = np.asarray(freqs, dtype=float)
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if family == "divider":
        r1, r2 = values["R1"], values["R2"]
        return np.full(freqs.shape, r2 / (r1 + r2), dtype=complex)

    zinv = np.exp(-2j * np.pi * freqs / fs)
    s = 2.0 * fs * (1.0 - zinv) / (1.0 + zinv)
    if family == "rc1":
        r, c = values["R"], values["C"]
        return 1.0 / (1.0 + s * r * c)
    # lpf2: loaded two-stage RC ladder
    r1, c1 = values["R1"], values["C1"]
    r2, c2 = values["R2"], values["C2"]
    return 1.0 / (s * s * (r1 * c1 * r2 * c2)
                  + s * (r1 * c1 + r2 * c2 + r1 * c2) + 1.0)
