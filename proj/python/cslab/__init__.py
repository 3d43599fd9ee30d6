"""Exact-arithmetic laboratory for stage-indexed choice sequences.

Thin re-export of the compiled module; rationals cross the boundary as
fractions.Fraction, verdicts and reports as plain dicts.
"""

try:
    from cslab._cslab import *  # noqa: F401,F403 (installed layout)
except ImportError:
    from _cslab import *  # noqa: F401,F403 (in-tree build)
