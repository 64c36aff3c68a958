"""R-type adaptors: multiport junctions realized by a dense scattering matrix.

A junction that cannot be decomposed into series/parallel connections is
described as a resistive network (:class:`RJunction`) with N designated
ports.  :func:`synthesize_scattering` derives the N x N scattering matrix
numerically: column j is obtained by driving port j with a unit incident
wave through its port resistance (a Thevenin source e=1, Rs=R_j), solving
the network by nodal analysis, and reading b_k = 2*v_k - a_k at every port.

Port 0 is the upstream port for the adapted variant ("parent first"); the
root variant has no upstream port.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import WdfNode, adopt
from . import instrumentation
from .errors import SingularNetworkError, UnpreparedError, WiringError


def scatter(S, a_vec):
    """Dense mat-vec b = S @ a with a pinned sequential accumulation order.

    This is the normative scatter kernel; :func:`scatter_fast` is the
    vectorized equivalent and must agree with it to a few ulp.
    """
    n = len(a_vec)
    out = [0.0] * n
    for k in range(n):
        acc = 0.0
        row = S[k]
        for j in range(n):
            acc = acc + row[j] * a_vec[j]
        out[k] = acc
    return out


def scatter_fast(S, a_vec):
    """Vectorized scatter kernel (BLAS mat-vec)."""
    return S @ a_vec


@dataclass(frozen=True)
class RJunction:
    """Connected resistive network with designated ports.

    Nodes are integers 0..num_nodes-1 with node 0 as the reference.
    ``resistors`` holds internal branches (node_a, node_b, ohms); ``ports``
    holds (node_plus, node_minus) pairs in adaptor port order.  ``taps``
    names internal nodes whose voltage the enclosing model wants to read.
    """

    num_nodes: int
    ports: tuple
    resistors: tuple = ()
    taps: dict = field(default_factory=dict)

    def __post_init__(self):
        for na, nb, r in self.resistors:
            if not r > 0.0:
                raise ValueError(f"junction resistor ({na},{nb}) must be > 0, got {r!r}")

    def _check_connected(self, port_resistances):
        # union-find over all conducting branches; every node must reach ground
        parent = list(range(self.num_nodes))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            parent[find(i)] = find(j)

        for na, nb, _ in self.resistors:
            union(na, nb)
        for (na, nb), _ in zip(self.ports, port_resistances):
            union(na, nb)
        root = find(0)
        for node in range(self.num_nodes):
            if find(node) != root:
                raise SingularNetworkError(
                    f"junction node {node} is floating (no path to the reference node)",
                    node=node,
                )


def _conductance_system(junction, port_resistances, terminate):
    """Assemble the nodal conductance matrix with port terminations.

    ``terminate[k]`` selects whether port k is loaded by its port
    resistance.  Returns (G, n_unknowns); node 0 is eliminated.
    """
    n = junction.num_nodes - 1
    G = np.zeros((n, n))

    def stamp(na, nb, g):
        ia, ib = na - 1, nb - 1
        if ia >= 0:
            G[ia, ia] += g
        if ib >= 0:
            G[ib, ib] += g
        if ia >= 0 and ib >= 0:
            G[ia, ib] -= g
            G[ib, ia] -= g

    for na, nb, r in junction.resistors:
        stamp(na, nb, 1.0 / r)
    for k, ((na, nb), rk) in enumerate(zip(junction.ports, port_resistances)):
        if terminate[k]:
            stamp(na, nb, 1.0 / rk)
    return G


def _solve(junction, G, rhs):
    try:
        return np.linalg.solve(G, rhs)
    except np.linalg.LinAlgError:
        # name the offending node if one is isolated
        for i in range(G.shape[0]):
            if G[i, i] == 0.0:
                raise SingularNetworkError(
                    f"junction node {i + 1} is floating (zero self-conductance)",
                    node=i + 1,
                ) from None
        raise SingularNetworkError("junction network is singular") from None


def synthesize_scattering(junction, port_resistances, with_taps=False):
    """Derive the scattering matrix of a resistive junction.

    Column j: drive port j with unit incident wave a_j = 1 (Thevenin source
    through R_j), terminate all other ports in their port resistances, solve
    the nodal equations, and read b_k = 2*v_k - a_k.  Optionally also
    returns tap rows mapping incident waves to named internal node voltages.
    """
    n_ports = len(junction.ports)
    if len(port_resistances) != n_ports:
        raise WiringError(
            f"expected {n_ports} port resistances, got {len(port_resistances)}"
        )
    junction._check_connected(port_resistances)
    G = _conductance_system(junction, port_resistances, [True] * n_ports)
    n = junction.num_nodes - 1
    S = np.zeros((n_ports, n_ports))
    taps = {name: np.zeros(n_ports) for name in junction.taps}
    for j in range(n_ports):
        rhs = np.zeros(n)
        (pa, pb) = junction.ports[j]
        inj = 1.0 / port_resistances[j]
        if pa >= 1:
            rhs[pa - 1] += inj
        if pb >= 1:
            rhs[pb - 1] -= inj
        v = _solve(junction, G, rhs)
        volts = np.concatenate(([0.0], v))
        for k in range(n_ports):
            (ka, kb) = junction.ports[k]
            vk = volts[ka] - volts[kb]
            ak = 1.0 if k == j else 0.0
            S[k, j] = 2.0 * vk - ak
        for name, node in junction.taps.items():
            taps[name][j] = volts[node]
    if with_taps:
        return S, taps
    return S


def input_resistance(junction, child_resistances, up_port=0):
    """Resistance seen into ``up_port`` with child ports terminated.

    This is the adapted upstream impedance: setting R_up to it makes the
    synthesized S reflection-free at the upstream port.
    """
    n_ports = len(junction.ports)
    resistances = [None] * n_ports
    terminate = [True] * n_ports
    terminate[up_port] = False
    child_iter = iter(child_resistances)
    for k in range(n_ports):
        resistances[k] = 1.0 if k == up_port else next(child_iter)
    junction._check_connected(resistances)
    G = _conductance_system(junction, resistances, terminate)
    rhs = np.zeros(junction.num_nodes - 1)
    (pa, pb) = junction.ports[up_port]
    if pa >= 1:
        rhs[pa - 1] += 1.0
    if pb >= 1:
        rhs[pb - 1] -= 1.0
    v = _solve(junction, G, rhs)
    volts = np.concatenate(([0.0], v))
    return float(volts[pa] - volts[pb])


class JunctionCalculator:
    """Default impedance calculator backed by scattering synthesis."""

    def __init__(self, junction):
        self.junction = junction

    def __call__(self, port_resistances):
        return synthesize_scattering(self.junction, port_resistances, with_taps=True)


class RootRType(WdfNode):
    """R-type junction at the tree root: all ports face children.

    ``calc`` receives the tuple of child port resistances and returns the
    scattering matrix (optionally with tap rows).  The default calculator
    synthesizes it from an :class:`RJunction` description.
    """

    def __init__(self, children, calc=None, junction=None):
        super().__init__()
        if calc is None:
            if junction is None:
                raise WiringError("RootRType needs a calculator or a junction")
            calc = JunctionCalculator(junction)
        self._children = list(children)
        for c in self._children:
            adopt(self, c)
        self.calc = calc
        self.S = None
        self.tap_rows = {}
        self._a_vec = np.zeros(len(self._children))
        self.calc_impedance()

    def children(self):
        return tuple(self._children)

    def calc_impedance(self):
        rs = [c.Rp for c in self._children]
        if any(r is None for r in rs):
            self.S = None
            return
        result = self.calc(tuple(rs))
        if isinstance(result, tuple):
            S, taps = result
        else:
            S, taps = result, {}
        S = np.asarray(S, dtype=float)
        n = len(self._children)
        if S.shape != (n, n):
            raise WiringError(
                f"scattering matrix shape {S.shape} does not match {n} children"
            )
        self.S = S
        self.tap_rows = taps
        instrumentation.notify(self, instrumentation.SCATTERING)

    def process(self):
        """One full gather/scatter/distribute pass over the children."""
        if self.S is None:
            raise UnpreparedError("R-type junction processed before prepare()")
        a = self._a_vec
        for k, c in enumerate(self._children):
            a[k] = c.reflect()
        b = self.S @ a
        for k, c in enumerate(self._children):
            c.accept_incident(b[k])
        return b

    def tap_voltage(self, name):
        return float(self.tap_rows[name] @ self._a_vec)


class AdaptedRType(WdfNode):
    """R-type junction with an adapted upstream port at index 0.

    The calculator returns (S, R_up) where S includes the upstream port row
    and column and satisfies S[0][0] == 0 (checked to 1e-9).  The default
    junction-backed calculator derives R_up as the input resistance at the
    upstream port.
    """

    def __init__(self, children, calc=None, junction=None):
        super().__init__()
        if calc is None:
            if junction is None:
                raise WiringError("AdaptedRType needs a calculator or a junction")
            calc = self._junction_calc(junction)
        self._children = list(children)
        for c in self._children:
            adopt(self, c)
        self.calc = calc
        self.S = None
        self.tap_rows = {}
        self._a_vec = np.zeros(len(self._children) + 1)
        self.calc_impedance()

    @staticmethod
    def _junction_calc(junction):
        def calc(child_resistances):
            r_up = input_resistance(junction, child_resistances, up_port=0)
            S, taps = synthesize_scattering(
                junction, (r_up,) + tuple(child_resistances), with_taps=True
            )
            return S, r_up, taps
        return calc

    def children(self):
        return tuple(self._children)

    def calc_impedance(self):
        rs = [c.Rp for c in self._children]
        if any(r is None for r in rs):
            self.S = None
            self.Rp = None
            self.G = None
            return
        result = self.calc(tuple(rs))
        taps = {}
        if len(result) == 3:
            S, r_up, taps = result
        else:
            S, r_up = result
        S = np.asarray(S, dtype=float)
        n = len(self._children) + 1
        if S.shape != (n, n):
            raise WiringError(
                f"scattering matrix shape {S.shape} does not match {n} ports"
            )
        if abs(S[0, 0]) > 1e-9:
            raise WiringError(
                f"upstream port is not reflection-free: S[0][0] = {S[0, 0]!r}"
            )
        self.S = S
        self.tap_rows = taps
        self.Rp = r_up
        self.G = 1.0 / r_up
        instrumentation.notify(self, instrumentation.SCATTERING)

    def reflect(self):
        self._require_prepared()
        a = self._a_vec
        a[0] = 0.0
        for k, c in enumerate(self._children):
            a[k + 1] = c.reflect()
        # valid because S[0][0] == 0: the upstream reflection ignores a_up
        self.b = float(self.S[0] @ a)
        return self.b

    def accept_incident(self, a_up):
        a = self._a_vec
        a[0] = a_up
        b = self.S @ a
        for k, c in enumerate(self._children):
            c.accept_incident(b[k + 1])
        self.a = a_up

    def tap_voltage(self, name):
        return float(self.tap_rows[name] @ self._a_vec)
