"""Wright omega evaluators.

omega(x) is the positive solution w of ``w + ln(w) = x`` (equivalently
``W(e**x)`` in terms of the Lambert W function).  It turns the implicit
exponential-diode wave relations into closed-form expressions.

Two evaluators are provided:

* :func:`omega_exact` -- safeguarded Newton iteration on the log form,
  run to convergence (|step| <= 2 ulp).  This is the reference.
* :func:`omega_fast` -- a piecewise initial guess built from cheap
  exponent/mantissa-split approximations of log2/exp2 (``frexp``/``ldexp``
  plus a short polynomial), refined by a single Newton step.  Relative
  error stays below 1e-4 over the working range; see the test suite.

Both accept a float or a numpy array.  The scalar cores are written in
plain arithmetic so they can also be compiled by numba for the generated
processing kernels.
"""

from __future__ import annotations

import math

import numpy as np

_LN2 = 0.6931471805599453
_LOG2E = 1.4426950408889634

# log2(m) on m in [0.5, 1], degree 5 (Horner, highest power first)
_LOG2_C5 = 1.405716091122104
_LOG2_C4 = -6.551609372218587
_LOG2_C3 = 12.881420375110288
_LOG2_C2 = -14.08087535253679
_LOG2_C1 = 10.139512633250762
_LOG2_C0 = -3.794153676533875

# 2**f on f in [0, 1], degree 6
_EXP2_C6 = 0.00021877504769419377
_EXP2_C5 = 0.0012387821479928024
_EXP2_C4 = 0.009684580452091952
_EXP2_C3 = 0.055480426326015415
_EXP2_C2 = 0.24023050204489338
_EXP2_C1 = 0.6931469286930451
_EXP2_C0 = 1.0000000025868883

# omega initial guess, x in [-2, 3), degree 4
_GB_C4 = -0.0012014409955187664
_GB_C3 = -7.670394650411208e-05
_GB_C2 = 0.07297799723997572
_GB_C1 = 0.36006226629717103
_GB_C0 = 0.5669564027912323

# omega initial guess, x in [3, 10), degree 4
_GC_C4 = 0.0001059069348392512
_GC_C3 = -0.00386890882775014
_GC_C2 = 0.06033370639792397
_GC_C1 = 0.4208083790062926
_GC_C0 = 0.4982397323865635


def fast_log(x):
    """ln(x) from the exponent/mantissa split plus a mantissa polynomial."""
    m, e = math.frexp(x)
    p = _LOG2_C5
    p = p * m + _LOG2_C4
    p = p * m + _LOG2_C3
    p = p * m + _LOG2_C2
    p = p * m + _LOG2_C1
    p = p * m + _LOG2_C0
    return (p + e) * _LN2


def fast_exp(x):
    """exp(x) via 2**k * poly(frac), assembled with ldexp."""
    y = x * _LOG2E
    k = math.floor(y)
    f = y - k
    p = _EXP2_C6
    p = p * f + _EXP2_C5
    p = p * f + _EXP2_C4
    p = p * f + _EXP2_C3
    p = p * f + _EXP2_C2
    p = p * f + _EXP2_C1
    p = p * f + _EXP2_C0
    return math.ldexp(p, int(k))


def _omega_fast_scalar(x):
    if x < -2.0:
        e = fast_exp(x)
        w = e * (1.0 - e * (1.0 - 1.5 * e))
    elif x < 3.0:
        w = (((_GB_C4 * x + _GB_C3) * x + _GB_C2) * x + _GB_C1) * x + _GB_C0
    elif x < 10.0:
        w = (((_GC_C4 * x + _GC_C3) * x + _GC_C2) * x + _GC_C1) * x + _GC_C0
    else:
        w = x - fast_log(x - fast_log(x))
    # single Newton refinement of w = exp(x - w)
    return w - (w - fast_exp(x - w)) / (w + 1.0)


def _omega_exact_scalar(x):
    # initial guess only needs to be positive and roughly scaled
    if x > 1.0:
        w = x - math.log(x)
    elif x > -1.0:
        w = 0.567 + 0.345 * x
    else:
        w = math.exp(x)
    # Newton on f(w) = w + ln(w) - x, safeguarded to stay positive,
    # iterated until the step falls below 2 ulp.
    for _ in range(100):
        f = w + math.log(w) - x
        dw = f * w / (w + 1.0)
        wn = w - dw
        if wn <= 0.0:
            wn = w * 0.5
            dw = w - wn
        w = wn
        if abs(dw) <= 2.0 * (2.220446049250313e-16 * abs(w)):
            break
    return w


def omega_fast(x):
    """Fast omega approximation (<= 1e-4 relative of omega_exact)."""
    if isinstance(x, np.ndarray):
        return np.array([_omega_fast_scalar(float(v)) for v in x])
    return _omega_fast_scalar(float(x))


def omega_exact(x):
    """Reference omega: w + ln(w) = x solved to machine precision."""
    if isinstance(x, np.ndarray):
        return np.array([_omega_exact_scalar(float(v)) for v in x])
    return _omega_exact_scalar(float(x))
