"""Runnable circuit models (the late-bound, rewireable API).

A :class:`CircuitModel` bundles a connection tree with an input drive, an
output tap, and named parameters with declared ranges.  Processing walks
the polymorphic tree: gather reflected waves up to the root, close the
loop at the root, distribute incident waves back down, then read the tap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import deferred_updates
from .errors import ParameterError, UnpreparedError
from .rtype import RootRType
from .sample import lane_sum


@dataclass
class ParamSpec:
    """Named real-valued control with range checking."""

    name: str
    default: float
    lo: float
    hi: float
    apply: object = None          # callable(value)
    unit: str = ""

    def check(self, value):
        if not (self.lo <= value <= self.hi):
            raise ParameterError(self.name, value, self.lo, self.hi)


@dataclass
class OutputTap:
    """Where the model's output comes from.

    quantity: "voltage" or "current" of ``node``, or "junction" to read the
    named internal tap of an R-type root.  ``reduce`` set to "sum" collapses
    batch lanes to a scalar (explicit cross-lane reduction).
    """

    node: object = None
    quantity: str = "voltage"
    name: str = ""
    reduce: str | None = None


class CircuitModel:
    """Late-bound circuit model: tree + drive + tap + parameters."""

    api = "late"

    def __init__(self, name, root, drive, tap, params=(), lanes=None):
        self.name = name
        self.root = root
        self.drive = drive            # ("voltage"|"current", element)
        self.tap = tap
        self.lanes = lanes
        self.fs = None
        self.params = {p.name: p for p in params}
        self._values = {p.name: p.default for p in params}
        kind, element = drive
        if kind == "voltage":
            self._set_input = element.set_voltage
        elif kind == "current":
            self._set_input = element.set_current
        else:
            raise ValueError(f"unknown drive kind {kind!r}")
        self._rtype_root = isinstance(root, RootRType)
        if not self._rtype_root:
            self._child = root.child

    # -- control --------------------------------------------------------------

    def prepare(self, fs):
        """Set (or change) the sample rate; re-derives impedances, resets state."""
        with deferred_updates():
            self.root.prepare(fs)
        self.root.reset()
        self.fs = fs

    def reset(self):
        self.root.reset()

    def set_param(self, name, value):
        if name not in self.params:
            raise ParameterError(name, value)
        spec = self.params[name]
        value = float(value)
        spec.check(value)
        spec.apply(value)
        self._values[name] = value

    def get_param(self, name):
        return self._values[name]

    # -- processing -----------------------------------------------------------

    def process_sample(self, x):
        self._set_input(x)
        root = self.root
        if self._rtype_root:
            root.process()
        else:
            child = self._child
            root.accept_incident(child.reflect())
            child.accept_incident(root.reflect())
        return self._read_tap()

    def process_block(self, xs):
        xs = np.asarray(xs, dtype=float)
        n = xs.shape[0]
        if self.lanes is None:
            out = np.empty(n)
            step = self.process_sample
            for i, x in enumerate(xs.tolist()):
                out[i] = step(x)
            return out
        if self.tap.reduce == "sum":
            out = np.empty(n)
        else:
            out = np.empty((n, self.lanes))
        step = self.process_sample
        for i, x in enumerate(xs.tolist()):
            out[i] = step(x)
        return out

    def _read_tap(self):
        tap = self.tap
        if tap.quantity == "voltage":
            v = tap.node.voltage()
        elif tap.quantity == "current":
            v = tap.node.current()
        elif tap.quantity == "junction":
            v = self.root.tap_voltage(tap.name)
        else:
            raise ValueError(f"unknown tap quantity {tap.quantity!r}")
        if tap.reduce == "sum":
            return lane_sum(v)
        return v

    def _require_prepared(self):
        if self.fs is None:
            raise UnpreparedError(f"model {self.name!r} used before prepare()")
