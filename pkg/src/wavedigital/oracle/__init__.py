"""Independent reference solvers used by the test suite as ground truth.

Nothing here shares code with the wave-domain models: circuits are solved
by modified nodal analysis with trapezoidal companion models, transfer
functions come from closed forms under the bilinear transform, and diode
wave maps come from a safeguarded scalar Newton solve.
"""

from .mna import Branch, NetDescription, TransientResult, mna_transient, dump_net, load_net
from .analytic import analytic_response
from .diode import implicit_diode_solve

__all__ = [
    "Branch",
    "NetDescription",
    "TransientResult",
    "mna_transient",
    "dump_net",
    "load_net",
    "analytic_response",
    "implicit_diode_solve",
]
