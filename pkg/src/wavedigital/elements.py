"""One-port leaf elements and root elements.

Leaves are adapted: their port impedance is chosen so the reflected wave
does not depend on their own incident wave (a resistor reflects exactly 0).
Root elements sit at the top of the tree, own no port impedance of their
own, and close the wave loop against their single child.

Reactive elements discretize by the trapezoidal rule, which gives the
one-sample-memory wave forms b = z (capacitor) and b = -z (inductor) with
port impedances 1/(2*fs*C) and 2*fs*L.
"""

from __future__ import annotations

import numpy as np

from .core import WdfNode, adopt


def _check_positive(name, value):
    # value may be a scalar or a per-lane vector
    if not bool(np.all(np.asarray(value) > 0.0)):
        raise ValueError(f"{name} must be > 0, got {value!r}")


def _same_value(a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(a, b)
    return a == b


class Resistor(WdfNode):
    def __init__(self, resistance):
        super().__init__()
        _check_positive("resistance", resistance)
        self._r = resistance
        self.calc_impedance()

    def set_resistance(self, resistance):
        _check_positive("resistance", resistance)
        if _same_value(resistance, self._r):
            return
        self._r = resistance
        self.impedance_change()

    @property
    def resistance(self):
        return self._r

    def calc_impedance(self):
        self.Rp = self._r
        self.G = 1.0 / self._r

    def reflect(self):
        self.b = 0.0
        return self.b

    def accept_incident(self, a):
        self.a = a


class Capacitor(WdfNode):
    """Capacitor with trapezoidal wave discretization: Rp = 1/(2*fs*C)."""

    def __init__(self, capacitance, fs=None):
        super().__init__()
        _check_positive("capacitance", capacitance)
        self._c = capacitance
        self._fs = None
        self.z = 0.0
        if fs is not None:
            self.prepare(fs)

    def set_capacitance(self, capacitance):
        _check_positive("capacitance", capacitance)
        if _same_value(capacitance, self._c):
            return
        self._c = capacitance
        self.impedance_change()

    @property
    def capacitance(self):
        return self._c

    def prepare(self, fs):
        _check_positive("sample rate", fs)
        self._fs = fs
        self.reset()
        self.impedance_change()

    def reset(self):
        super().reset()
        self.z = 0.0

    def calc_impedance(self):
        if self._fs is None:
            self.Rp = None
            self.G = None
            return
        self.Rp = 1.0 / (2.0 * self._fs * self._c)
        self.G = 2.0 * self._fs * self._c

    def reflect(self):
        self._require_prepared()
        self.b = self.z
        return self.b

    def accept_incident(self, a):
        self.a = a
        self.z = a


class Inductor(WdfNode):
    """Inductor with trapezoidal wave discretization: Rp = 2*fs*L."""

    def __init__(self, inductance, fs=None):
        super().__init__()
        _check_positive("inductance", inductance)
        self._l = inductance
        self._fs = None
        self.z = 0.0
        if fs is not None:
            self.prepare(fs)

    def set_inductance(self, inductance):
        _check_positive("inductance", inductance)
        if _same_value(inductance, self._l):
            return
        self._l = inductance
        self.impedance_change()

    @property
    def inductance(self):
        return self._l

    def prepare(self, fs):
        _check_positive("sample rate", fs)
        self._fs = fs
        self.reset()
        self.impedance_change()

    def reset(self):
        super().reset()
        self.z = 0.0

    def calc_impedance(self):
        if self._fs is None:
            self.Rp = None
            self.G = None
            return
        self.Rp = 2.0 * self._fs * self._l
        self.G = 1.0 / self.Rp

    def reflect(self):
        self._require_prepared()
        self.b = -self.z
        return self.b

    def accept_incident(self, a):
        self.a = a
        self.z = a


class ResistiveVoltageSource(WdfNode):
    """Voltage source with series resistance Rs; adapted with Rp = Rs."""

    def __init__(self, voltage=0.0, resistance=1.0e3):
        super().__init__()
        _check_positive("resistance", resistance)
        self._r = resistance
        self.Vs = voltage
        self.calc_impedance()

    def set_voltage(self, v):
        self.Vs = v

    def set_resistance(self, resistance):
        _check_positive("resistance", resistance)
        if _same_value(resistance, self._r):
            return
        self._r = resistance
        self.impedance_change()

    def calc_impedance(self):
        self.Rp = self._r
        self.G = 1.0 / self._r

    def reflect(self):
        self.b = self.Vs
        return self.b

    def accept_incident(self, a):
        self.a = a


class ResistiveCurrentSource(WdfNode):
    """Current source with parallel resistance; adapted with Rp = Rpar."""

    def __init__(self, current=0.0, resistance=1.0e3):
        super().__init__()
        _check_positive("resistance", resistance)
        self._r = resistance
        self.Is = current
        self.calc_impedance()

    def set_current(self, i):
        self.Is = i

    def set_resistance(self, resistance):
        _check_positive("resistance", resistance)
        if _same_value(resistance, self._r):
            return
        self._r = resistance
        self.impedance_change()

    def calc_impedance(self):
        self.Rp = self._r
        self.G = 1.0 / self._r

    def reflect(self):
        self.b = self.Rp * self.Is
        return self.b

    def accept_incident(self, a):
        self.a = a


class RootElement(WdfNode):
    """Unadapted element closing the tree at the root.

    Owns exactly one child; the root's port is the child's upstream port, so
    Rp mirrors the child impedance (needed for current()).
    """

    def __init__(self, child):
        super().__init__()
        self.child = child
        adopt(self, child)
        self.calc_impedance()

    def children(self):
        return (self.child,)

    def accept_incident(self, a):
        self.a = a


class IdealVoltageSource(RootElement):
    """Ideal source at the root: b = 2*Vs - a, so the port voltage is Vs."""

    def __init__(self, child, voltage=0.0):
        self.Vs = voltage
        super().__init__(child)

    def set_voltage(self, v):
        self.Vs = v

    def calc_impedance(self):
        self.Rp = self.child.Rp
        self.G = self.child.G

    def reflect(self):
        self.b = 2.0 * self.Vs - self.a
        return self.b


class IdealCurrentSource(RootElement):
    """Ideal current source at the root: b = a + 2*R_child*Is."""

    def __init__(self, child, current=0.0):
        self.Is = current
        super().__init__(child)

    def set_current(self, i):
        self.Is = i

    def calc_impedance(self):
        self.Rp = self.child.Rp
        self.G = self.child.G
        self._two_r = None if self.Rp is None else 2.0 * self.Rp

    def reflect(self):
        self._require_prepared()
        self.b = self.a + self._two_r * self.Is
        return self.b
