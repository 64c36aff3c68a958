"""Reference solve of the diode wave map.

Given an incident wave ``a`` at a port of resistance R, the port voltage
must satisfy (a - v)/R = i_d(v).  The left side is strictly decreasing in
v and i_d is nondecreasing, so the root is unique; it is found by Newton
iteration safeguarded with bisection on a bracketing interval.  The
reflected wave is then b = 2*v - a.

The pair law here mirrors the wave element's convention: only the
forward-biased diode of the antiparallel pair conducts (the reverse one is
open).  The MNA simulator carries the full two-exponential pair law, so
both conventions are covered by independent routes.
"""

from __future__ import annotations

import math

_MAX_EXP = 350.0


def _lim_exp(x):
    return math.exp(x if x < _MAX_EXP else _MAX_EXP)


def _law(v, Is, eta, pair):
    if pair:
        if v >= 0.0:
            e = _lim_exp(v / eta)
            return Is * (e - 1.0), Is / eta * e
        e = _lim_exp(-v / eta)
        return -Is * (e - 1.0), Is / eta * e
    e = _lim_exp(v / eta)
    return Is * (e - 1.0), Is / eta * e


def implicit_diode_solve(params, r_port, a, pair=False):
    """Reflected wave of a (pair of) diode(s) for incident wave ``a``."""
    Is, eta = params.Is, params.n * params.Vt
    a = float(a)

    def h(v):
        cur, g = _law(v, Is, eta, pair)
        return (a - v) / r_port - cur, -1.0 / r_port - g

    # bracket the root: h is strictly decreasing
    lo = min(a, 0.0) - 1.0
    hi = max(a, 0.0) + 1.0
    flo, _ = h(lo)
    fhi, _ = h(hi)
    while flo < 0.0:
        lo -= 1.0
        flo, _ = h(lo)
    while fhi > 0.0:
        hi += 1.0
        fhi, _ = h(hi)

    v = 0.5 * (lo + hi)
    scale = max(abs(a) / r_port, Is, 1e-30)
    for _ in range(200):
        f, df = h(v)
        if abs(f) <= 1e-12 * scale + 1e-300:
            break
        if f > 0.0:
            lo = v
        else:
            hi = v
        step = f / df
        v_new = v - step
        if not (lo < v_new < hi):
            v_new = 0.5 * (lo + hi)
        if abs(v_new - v) <= 1e-17 * max(1.0, abs(v)):
            v = v_new
            break
        v = v_new
    return 2.0 * v - a
