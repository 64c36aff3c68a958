"""Series and parallel adaptors and the polarity inverter.

Both adaptors present an adapted (reflection-free) upstream port: the
upstream impedance is the sum of the child impedances (series) or of the
child admittances (parallel), which zeroes the scattering coefficient from
the upstream incident wave back into the upstream reflected wave.

Two-child adaptors use the one-multiply scattering form.  With more than
two children the general N-port formulas are used, one multiply per child.

Sign convention: the three (or N+1) ports of a series junction satisfy
sum_k v_k = 0 and carry equal current; a parallel junction has equal port
voltages and sum_k i_k = 0.  Circuit builders place polarity inverters
where a conventional positive output is wanted.
"""

from __future__ import annotations

from .core import WdfNode, adopt
from .errors import WiringError


class Adaptor(WdfNode):
    def __init__(self, *child_nodes):
        super().__init__()
        if len(child_nodes) < 1:
            raise WiringError("adaptor needs at least one child")
        self._children = list(child_nodes)
        for c in self._children:
            adopt(self, c)
        self.calc_impedance()

    def children(self):
        return tuple(self._children)

    def detach_child(self, child):
        """Unhook a child so it can be rewired elsewhere.

        The adaptor is left with a hole and must not process until a new
        child is attached at the same position.
        """
        idx = self._index_of(child)
        self._children[idx] = None
        child.parent = None
        return child

    def attach_child(self, index, child):
        """Fill a hole left by detach_child and re-derive impedances."""
        if self._children[index] is not None:
            raise WiringError("position already occupied; detach first")
        adopt(self, child)
        self._children[index] = child
        self.impedance_change()

    def replace_child(self, old, new):
        """Swap ``old`` for ``new`` in one step (topology rewiring)."""
        idx = self._index_of(old)
        self._children[idx] = None
        old.parent = None
        adopt(self, new)
        self._children[idx] = new
        self.impedance_change()

    def _index_of(self, child):
        for i, c in enumerate(self._children):
            if c is child:
                return i
        raise WiringError(f"{type(child).__name__} is not a child of this adaptor")

    def _child_impedances(self):
        rs = []
        for c in self._children:
            if c is None:
                raise WiringError("adaptor has a detached child position")
            rs.append(c.Rp)
        return rs


class Series(Adaptor):
    """Series junction; upstream impedance R1 + R2 + ..."""

    def calc_impedance(self):
        rs = self._child_impedances()
        if any(r is None for r in rs):
            self.Rp = None
            self.G = None
            return
        total = rs[0]
        for r in rs[1:]:
            total = total + r
        self.Rp = total
        self.G = 1.0 / total
        if len(rs) == 2:
            self.p = rs[0] / total
        else:
            self._q = [r / total for r in rs]

    def reflect(self):
        self._require_prepared()
        if len(self._children) == 2:
            b1 = self._children[0].reflect()
            b2 = self._children[1].reflect()
            self.b = -(b1 + b2)
        else:
            total = 0.0
            for c in self._children:
                total = total + c.reflect()
            self.b = -total
        return self.b

    def accept_incident(self, a):
        c = self._children
        if len(c) == 2:
            b1 = c[0].b
            b2 = c[1].b
            t = self.p * (a + b1 + b2)
            d1 = b1 - t
            c[0].accept_incident(d1)
            c[1].accept_incident(-(a + d1))
        else:
            total = a
            for ch in c:
                total = total + ch.b
            for q, ch in zip(self._q, c):
                ch.accept_incident(ch.b - q * total)
        self.a = a


class Parallel(Adaptor):
    """Parallel junction; upstream admittance G1 + G2 + ..."""

    def calc_impedance(self):
        rs = self._child_impedances()
        if any(r is None for r in rs):
            self.Rp = None
            self.G = None
            return
        gs = [c.G for c in self._children]
        total = gs[0]
        for g in gs[1:]:
            total = total + g
        self.G = total
        self.Rp = 1.0 / total
        if len(gs) == 2:
            self.p = gs[0] / total
        else:
            self._q = [g / total for g in gs]

    def reflect(self):
        self._require_prepared()
        c = self._children
        if len(c) == 2:
            b1 = c[0].reflect()
            b2 = c[1].reflect()
            bdiff = b2 - b1
            bt = -(self.p * bdiff)
            self._bdiff = bdiff
            self._bt = bt
            self.b = b2 + bt
        else:
            acc = 0.0
            for q, ch in zip(self._q, c):
                acc = acc + q * ch.reflect()
            self.b = acc
        return self.b

    def accept_incident(self, a):
        c = self._children
        if len(c) == 2:
            d2 = a + self._bt
            c[0].accept_incident(self._bdiff + d2)
            c[1].accept_incident(d2)
        else:
            total = a + self.b
            for ch in c:
                ch.accept_incident(total - ch.b)
        self.a = a


class PolarityInverter(Adaptor):
    """Wave polarity flip: same impedance, negated waves both ways."""

    def __init__(self, child):
        super().__init__(child)

    def calc_impedance(self):
        child = self._children[0]
        if child is None or child.Rp is None:
            self.Rp = None
            self.G = None
            return
        self.Rp = child.Rp
        self.G = child.G

    def reflect(self):
        self._require_prepared()
        self.b = -self._children[0].reflect()
        return self.b

    def accept_incident(self, a):
        self._children[0].accept_incident(-a)
        self.a = a
