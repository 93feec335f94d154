"""Relatively-smooth convex optimization toolkit.

First-order schemes whose smoothness is measured against a user-chosen
reference function: Bregman machinery, reference-function subproblem solvers,
built-in log-det / volumetric / quartic objectives, the primal gradient and
dual averaging schemes with their convergence-bound evaluators, and sampled
smoothness certification.
"""

from ._relsmooth import *  # noqa: F401,F403
from ._relsmooth import __version__  # noqa: F401
