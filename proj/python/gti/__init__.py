"""Non-adaptive group testing with inhibitors.

Bernoulli pooling designs, threshold decoders for exact and upper-bound
knowledge of the population, closed-form sample-complexity calculators,
Fano-style lower bounds, brute-force oracles and a seeded Monte Carlo
harness. Item indices are zero-based throughout this API.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
