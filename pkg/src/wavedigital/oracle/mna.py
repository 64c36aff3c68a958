"""Modified nodal analysis transient simulator.

Reactive branches use trapezoidal companion models so the discretization
matches the wave-domain models sample for sample; diode branches are
resolved by damped Newton iteration (tolerance 1e-12, at most 100 steps).
Node 0 is ground.  Branch orientation: positive branch current flows from
node ``a`` through the branch to node ``b``; for sources the value is the
potential rise (or injected current) from ``b`` to ``a``, so a voltage
source V with a=1, b=0 holds node 1 at +V.

Branch kinds:

====  =========================================  =====================
kind  meaning                                    value
====  =========================================  =====================
R     resistor                                   ohms
C     capacitor                                  farads
L     inductor                                   henries
V     ideal voltage source                       volts (None = input)
I     ideal current source                       amps  (None = input)
D     exponential diode (anode at ``a``)         (Is, Vt, n)
DP    antiparallel diode pair                    (Is, Vt, n)
====  =========================================  =====================
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import SingularNetworkError, WdfError

_KINDS = ("R", "C", "L", "V", "I", "D", "DP")
_MAX_EXP = 350.0


def _lim_exp(x):
    return math.exp(x if x < _MAX_EXP else _MAX_EXP)


@dataclass(frozen=True)
class Branch:
    kind: str
    a: int
    b: int
    value: object = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise WdfError(f"unknown branch kind {self.kind!r}")


@dataclass(frozen=True)
class NetDescription:
    """Circuit net: node count (ground = 0) plus a branch list."""

    num_nodes: int
    branches: tuple

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        self._check_connected()

    def _check_connected(self):
        parent = list(range(self.num_nodes))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for br in self.branches:
            parent[find(br.a)] = find(br.b)
        root = find(0)
        for node in range(self.num_nodes):
            if find(node) != root:
                raise SingularNetworkError(
                    f"node {node} has no path to ground", node=node
                )

    @property
    def driven_index(self):
        idx = [i for i, br in enumerate(self.branches)
               if br.kind in ("V", "I") and br.value is None]
        if len(idx) > 1:
            raise WdfError("only one input-driven source is supported")
        return idx[0] if idx else None


class TransientResult:
    """Per-sample node voltages and branch currents."""

    def __init__(self, voltages, currents):
        self.voltages = voltages      # (T, num_nodes), column 0 is ground
        self.currents = currents      # (T, num_branches)

    def node_voltage(self, node):
        return self.voltages[:, node]

    def branch_current(self, index):
        return self.currents[:, index]


def _diode_iv(kind, v, Is, eta):
    """Current and conductance of a diode branch at voltage v."""
    if kind == "D":
        e = _lim_exp(v / eta)
        return Is * (e - 1.0), Is / eta * e
    # antiparallel pair: full two-exponential law
    ef = _lim_exp(v / eta)
    er = _lim_exp(-v / eta)
    return Is * (ef - er), Is / eta * (ef + er)


def mna_transient(net, inputs, fs, record_residuals=False):
    """Run a transient analysis at sample rate fs driven by ``inputs``.

    The single source branch with value None takes inputs[t] each step.
    Returns a :class:`TransientResult`; raises SingularNetworkError for
    structurally singular nets and WdfError if Newton fails to converge.
    """
    if not fs > 0:
        raise ValueError(f"fs must be > 0, got {fs!r}")
    inputs = np.asarray(inputs, dtype=float)
    T = 1.0 / fs
    n = net.num_nodes - 1
    branches = net.branches
    vsrc_rows = [i for i, br in enumerate(branches) if br.kind == "V"]
    m = n + len(vsrc_rows)
    driven = net.driven_index

    # constant linear stamps
    A0 = np.zeros((m, m))
    companion_g = {}
    for i, br in enumerate(branches):
        ia, ib = br.a - 1, br.b - 1
        if br.kind == "R":
            g = 1.0 / br.value
        elif br.kind == "C":
            g = 2.0 * br.value * fs
        elif br.kind == "L":
            g = T / (2.0 * br.value)
        else:
            g = None
        if g is not None:
            companion_g[i] = g
            if ia >= 0:
                A0[ia, ia] += g
            if ib >= 0:
                A0[ib, ib] += g
            if ia >= 0 and ib >= 0:
                A0[ia, ib] -= g
                A0[ib, ia] -= g
    for row, i in enumerate(vsrc_rows):
        br = branches[i]
        ia, ib = br.a - 1, br.b - 1
        k = n + row
        if ia >= 0:
            A0[ia, k] += 1.0
            A0[k, ia] += 1.0
        if ib >= 0:
            A0[ib, k] -= 1.0
            A0[k, ib] -= 1.0

    diode_idx = [i for i, br in enumerate(branches) if br.kind in ("D", "DP")]
    nonlinear = bool(diode_idx)

    steps = len(inputs)
    volts_out = np.zeros((steps, net.num_nodes))
    currents_out = np.zeros((steps, len(branches)))

    v_nodes = np.zeros(net.num_nodes)      # previous node voltages
    i_hist = np.zeros(len(branches))       # previous branch currents
    x = np.zeros(m)

    def branch_v(volts, br):
        return volts[br.a] - volts[br.b]

    for t in range(steps):
        u = float(inputs[t])
        # history current sources for reactive branches
        rhs_hist = np.zeros(m)
        for i, br in enumerate(branches):
            ia, ib = br.a - 1, br.b - 1
            if br.kind == "C":
                g = companion_g[i]
                ieq = g * (v_nodes[br.a] - v_nodes[br.b]) + i_hist[i]
                # i = g*v - ieq  ->  inject +ieq into node a
                if ia >= 0:
                    rhs_hist[ia] += ieq
                if ib >= 0:
                    rhs_hist[ib] -= ieq
            elif br.kind == "L":
                g = companion_g[i]
                ieq = i_hist[i] + g * (v_nodes[br.a] - v_nodes[br.b])
                # i = g*v + ieq  ->  draws ieq out of node a
                if ia >= 0:
                    rhs_hist[ia] -= ieq
                if ib >= 0:
                    rhs_hist[ib] += ieq
            elif br.kind == "I":
                cur = u if i == driven else br.value
                if ia >= 0:
                    rhs_hist[ia] += cur
                if ib >= 0:
                    rhs_hist[ib] -= cur
        for row, i in enumerate(vsrc_rows):
            br = branches[i]
            rhs_hist[n + row] = u if i == driven else br.value

        if not nonlinear:
            try:
                x = np.linalg.solve(A0, rhs_hist)
            except np.linalg.LinAlgError:
                raise SingularNetworkError("MNA matrix is singular") from None
        else:
            # Newton iteration, warm-started from the previous sample
            for it in range(100):
                A = A0.copy()
                rhs = rhs_hist.copy()
                volts = np.concatenate(([0.0], x[:n]))
                for i in diode_idx:
                    br = branches[i]
                    Is, Vt, ideality = br.value
                    eta = ideality * Vt
                    vd = branch_v(volts, br)
                    cur, g = _diode_iv(br.kind, vd, Is, eta)
                    ieq = cur - g * vd
                    ia, ib = br.a - 1, br.b - 1
                    if ia >= 0:
                        A[ia, ia] += g
                        rhs[ia] -= ieq
                    if ib >= 0:
                        A[ib, ib] += g
                        rhs[ib] += ieq
                    if ia >= 0 and ib >= 0:
                        A[ia, ib] -= g
                        A[ib, ia] -= g
                try:
                    x_new = np.linalg.solve(A, rhs)
                except np.linalg.LinAlgError:
                    raise SingularNetworkError("MNA matrix is singular") from None
                dx = x_new - x
                # damp large diode-voltage moves to keep exp() sane
                step = np.max(np.abs(dx)) if m else 0.0
                if step > 0.5:
                    x = x + dx * (0.5 / step)
                else:
                    x = x_new
                if step <= 1e-12 * (1.0 + np.max(np.abs(x))):
                    break
            else:
                raise WdfError(
                    f"Newton failed to converge at step {t} "
                    f"(last step size {step:.3e})"
                )

        volts = np.concatenate(([0.0], x[:n]))
        volts_out[t] = volts
        # branch currents at the accepted solution
        for i, br in enumerate(branches):
            vd = branch_v(volts, br)
            if br.kind == "R":
                currents_out[t, i] = vd / br.value
            elif br.kind == "C":
                g = companion_g[i]
                ieq = g * (v_nodes[br.a] - v_nodes[br.b]) + i_hist[i]
                currents_out[t, i] = g * vd - ieq
            elif br.kind == "L":
                g = companion_g[i]
                ieq = i_hist[i] + g * (v_nodes[br.a] - v_nodes[br.b])
                currents_out[t, i] = g * vd + ieq
            elif br.kind == "V":
                row = vsrc_rows.index(i)
                currents_out[t, i] = x[n + row]
            elif br.kind == "I":
                # internal a->b current; the source injects value into node a
                currents_out[t, i] = -(u if i == driven else br.value)
            else:
                Is, Vt, ideality = br.value
                currents_out[t, i], _ = _diode_iv(br.kind, vd, Is, ideality * Vt)
        v_nodes = volts
        i_hist = currents_out[t].copy()

    return TransientResult(volts_out, currents_out)


# -- minimal line-oriented net format ----------------------------------------


def dump_net(net):
    """One branch per line: kind node_a node_b value(s); 'input' marks the drive."""
    lines = [f"nodes {net.num_nodes}"]
    for br in net.branches:
        if br.kind in ("D", "DP"):
            vals = " ".join(repr(v) for v in br.value)
        elif br.value is None:
            vals = "input"
        else:
            vals = repr(br.value)
        lines.append(f"{br.kind} {br.a} {br.b} {vals}")
    return "\n".join(lines) + "\n"


def load_net(text):
    num_nodes = None
    branches = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "nodes":
            num_nodes = int(parts[1])
            continue
        kind, a, b = parts[0], int(parts[1]), int(parts[2])
        rest = parts[3:]
        if kind in ("D", "DP"):
            value = tuple(float(v) for v in rest)
        elif rest[0] == "input":
            value = None
        else:
            value = float(rest[0])
        branches.append(Branch(kind, a, b, value))
    if num_nodes is None:
        num_nodes = 1 + max(max(br.a, br.b) for br in branches)
    return NetDescription(num_nodes, tuple(branches))
