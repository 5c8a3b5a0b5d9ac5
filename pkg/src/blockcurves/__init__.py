"""Arithmetic statistics of blocking plane curves over small finite fields.

Exact engines (line-union tables, inclusion-exclusion, blocking census),
closed-form evaluators, interpolation-rank checks, a smoothness decision
procedure, and seeded Monte Carlo samplers over PG(2,q), with a compiled
kernel core and a pure-Python fallback (see `blockcurves.backend`).
"""

__version__ = "0.1.0"

from . import backend, census, formulas, gf, interp, pg2, poly, smooth, stats  # noqa: E402,F401
