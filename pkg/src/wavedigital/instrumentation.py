"""Recomputation counters used by tests and the deferred-update contract.

The hooks cost one attribute lookup when nothing is recording.  Recording is
scoped per thread, matching the per-instance single-threaded processing
model.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager

_tls = threading.local()

IMPEDANCE = "impedance"
SCATTERING = "scattering"


class RecomputeLog:
    """Collects (node, kind) recomputation events."""

    def __init__(self):
        self.events = []

    def count(self, kind=None, node=None):
        n = 0
        for ev_node, ev_kind in self.events:
            if kind is not None and ev_kind != kind:
                continue
            if node is not None and ev_node is not node:
                continue
            n += 1
        return n

    @property
    def impedance_recomputes(self):
        return self.count(kind=IMPEDANCE)

    @property
    def scattering_recomputes(self):
        return self.count(kind=SCATTERING)


def notify(node, kind):
    log = getattr(_tls, "log", None)
    if log is not None:
        log.events.append((node, kind))


@contextmanager
def record():
    """Record impedance/scattering recomputations inside the block."""
    outer = getattr(_tls, "log", None)
    log = RecomputeLog()
    _tls.log = log
    try:
        yield log
    finally:
        _tls.log = outer
