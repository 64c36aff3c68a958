"""Wave-domain exponential diode elements (tree roots).

A diode at the root sees its child subtree through a port of impedance R.
Combining the wave constraint v = a - R*i with the Shockley law
i = Is*(exp(v/(n*Vt)) - 1) gives the closed-form reflected wave

    b = a + 2*R*Is - 2*n*Vt * omega( ln(R*Is/(n*Vt)) + (a + R*Is)/(n*Vt) )

The antiparallel pair uses the same relation mirrored by the sign of the
incident wave (the reverse-biased diode is treated as open, which is
accurate to within 2*R*Is in the reflected wave; the oracle module carries
both this convention and the full two-exponential law).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .elements import RootElement
from .omega import omega_exact, omega_fast
from .sample import sign


@dataclass(frozen=True)
class DiodeParams:
    """Shockley parameters: saturation current, thermal voltage, ideality."""

    Is: float = 2.52e-9
    Vt: float = 25.85e-3
    n: float = 1.0

    def __post_init__(self):
        if not self.Is > 0.0:
            raise ValueError(f"Is must be > 0, got {self.Is!r}")
        if not self.Vt > 0.0:
            raise ValueError(f"Vt must be > 0, got {self.Vt!r}")
        if not self.n >= 1.0:
            raise ValueError(f"n must be >= 1, got {self.n!r}")

    @property
    def eta(self):
        # effective thermal voltage n*Vt
        return self.n * self.Vt


_EVALUATORS = {"exact": omega_exact, "fast": omega_fast}


class _DiodeBase(RootElement):
    def __init__(self, child, params=None, evaluator="exact"):
        self.params = params if params is not None else DiodeParams()
        if evaluator not in _EVALUATORS:
            raise ValueError(f"evaluator must be 'exact' or 'fast', got {evaluator!r}")
        self.evaluator = evaluator
        self._omega = _EVALUATORS[evaluator]
        super().__init__(child)

    def set_params(self, params):
        self.params = params
        self.impedance_change()

    def calc_impedance(self):
        r = self.child.Rp
        self.Rp = r
        self.G = self.child.G
        if r is None:
            self._two_r_is = None
            return
        eta = self.params.eta
        r_is = r * self.params.Is
        self._r_is = r_is
        self._two_r_is = 2.0 * r_is
        self._two_eta = 2.0 * eta
        self._inv_eta = 1.0 / eta
        if isinstance(r_is, np.ndarray):
            self._log_r_is_over_eta = np.log(r_is / eta)
        else:
            self._log_r_is_over_eta = math.log(r_is / eta)


class Diode(_DiodeBase):
    """Single exponential diode at the root."""

    def reflect(self):
        self._require_prepared()
        arg = self._log_r_is_over_eta + (self.a + self._r_is) * self._inv_eta
        self.b = self.a + self._two_r_is - self._two_eta * self._omega(arg)
        return self.b


class DiodePair(_DiodeBase):
    """Antiparallel diode pair at the root; odd-symmetric wave map."""

    def reflect(self):
        self._require_prepared()
        lam = sign(self.a)
        arg = self._log_r_is_over_eta + (lam * self.a + self._r_is) * self._inv_eta
        self.b = self.a + lam * (self._two_r_is - self._two_eta * self._omega(arg))
        return self.b
