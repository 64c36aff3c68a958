"""Connection-tree plumbing: the node base class, wiring rules,
impedance-change propagation, and deferred update sessions.

The tree is a rooted acyclic graph: adaptors own child nodes, one-port
elements are leaves, and exactly one node (a source or a nonlinearity) is
the root.  Each node carries one wave port facing its parent: incident wave
``a``, reflected wave ``b``, and the port impedance ``Rp`` with cached
admittance ``G == 1/Rp``.

Voltage-wave convention: a = v + Rp*i, b = v - Rp*i, with the port current
defined flowing into the node.  Hence v = (a+b)/2 and i = (a-b)/(2*Rp).
"""

from __future__ import annotations

import threading
from contextlib import contextmanager

from . import instrumentation
from .errors import UnpreparedError, WiringError

_tls = threading.local()


def _active_session():
    return getattr(_tls, "session", None)


class WdfNode:
    """Base class for every element and adaptor in a connection tree."""

    def __init__(self):
        self.a = 0.0
        self.b = 0.0
        self.Rp = None
        self.G = None
        self.parent = None

    # -- impedance plumbing -------------------------------------------------

    def calc_impedance(self):
        """Recompute this node's port impedance from its own values/children."""

    def _recompute(self):
        self.calc_impedance()
        instrumentation.notify(self, instrumentation.IMPEDANCE)

    def impedance_change(self):
        """Signal that a local value changed.

        Outside a deferred session this recomputes the node and then every
        ancestor in leaf-to-root order.  Inside a session the node is only
        marked dirty; the session commit performs the ordered recomputation,
        visiting each affected node exactly once.
        """
        session = _active_session()
        if session is not None:
            session.mark(self)
            return
        self._recompute()
        node = self.parent
        while node is not None:
            node._recompute()
            node = node.parent

    # -- tree walking --------------------------------------------------------

    def children(self):
        return ()

    def iter_nodes(self):
        yield self
        for c in self.children():
            yield from c.iter_nodes()

    def depth(self):
        d = 0
        node = self.parent
        while node is not None:
            d += 1
            node = node.parent
        return d

    def prepare(self, fs):
        """Propagate a sample-rate change through the subtree.

        Leaves with rate-dependent impedances override this; the default
        just recurses so that every leaf gets the new rate.
        """
        for c in self.children():
            c.prepare(fs)

    def reset(self):
        self.a = 0.0
        self.b = 0.0
        for c in self.children():
            c.reset()

    # -- wave processing -----------------------------------------------------

    def reflect(self):
        raise NotImplementedError

    def accept_incident(self, a):
        raise NotImplementedError

    def voltage(self):
        return (self.a + self.b) * 0.5

    def current(self):
        if self.G is None:
            raise UnpreparedError(f"{type(self).__name__}: impedance not set")
        return (self.a - self.b) * (0.5 * self.G)

    def _require_prepared(self):
        if self.Rp is None:
            raise UnpreparedError(
                f"{type(self).__name__} processed before prepare(); "
                "call prepare(sample_rate) first"
            )


def voltage(node):
    """Port voltage (a+b)/2 of a node."""
    return node.voltage()


def current(node):
    """Port current (a-b)/(2*Rp) flowing into a node."""
    return node.current()


def adopt(parent, child):
    """Wire ``child`` under ``parent``, rejecting double parents and cycles."""
    if not isinstance(child, WdfNode):
        raise WiringError(f"cannot wire non-node object {child!r}")
    if child.parent is not None:
        raise WiringError(
            f"{type(child).__name__} already has a parent "
            f"({type(child.parent).__name__}); a node may appear once in a tree"
        )
    node = parent
    while node is not None:
        if node is child:
            raise WiringError("wiring would create a cycle")
        node = node.parent
    child.parent = parent


class UpdateSession:
    """Collects impedance-change marks until the enclosing commit."""

    def __init__(self):
        self._marked = []
        self._seen = set()

    def mark(self, node):
        if id(node) not in self._seen:
            self._seen.add(id(node))
            self._marked.append(node)

    def commit(self):
        if not self._marked:
            return
        # Gather every marked node plus all ancestors, keeping first-seen
        # order for determinism, then recompute deepest-first so children are
        # always up to date before their parents -- each node exactly once.
        order = []
        seen = set()
        for node in self._marked:
            while node is not None:
                if id(node) not in seen:
                    seen.add(id(node))
                    order.append(node)
                node = node.parent
        order.sort(key=lambda n: -n.depth())
        for node in order:
            node._recompute()


@contextmanager
def deferred_updates():
    """Defer impedance recomputation until the end of the block.

    Component-value changes made inside the block are batched; on exit each
    affected node and ancestor chain is recomputed exactly once.  Nested
    blocks collapse into the outermost one.
    """
    outer = _active_session()
    if outer is not None:
        yield outer
        return
    session = UpdateSession()
    _tls.session = session
    try:
        yield session
    finally:
        _tls.session = None
        session.commit()
