"""Clustering in scale-free hidden-variable random graphs.

Thin python facade over the C++ core: connection kernels, power-law cutoff
schemes, analytic clustering formulas with universal bounds, and seeded graph
simulation with exact triangle counting.
"""

from ._hvclust import *  # noqa: F401,F403
