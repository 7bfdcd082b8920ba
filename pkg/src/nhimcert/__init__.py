"""Certified normally hyperbolic invariant manifolds on a solid torus.

The package splits into a rigorous layer (interval arithmetic, rate
constants, covering / backward-cone certification) and a floating-point
layer (graph-transform construction of the center-stable/unstable
manifolds, the invariant circle and its fibers, truncated-jet
diagnostics), glued together by a small CLI.
"""

__version__ = "0.1.0"

from .interval import Interval, IntervalMatrix  # noqa: F401
