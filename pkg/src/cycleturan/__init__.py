"""Generalized Turán numbers for cycles and paths, made executable.

Exact cycle/path counting, extremal constructions, brute-force and
stochastic ex(n, T, F) search, mechanical inequality checks, and the
bipartiteness/L-freeness testing experiments.
"""

__version__ = "0.1.0"

from .graph import (  # noqa: F401
    BipartiteGraph,
    Graph,
    VertexPartition,
    blow_up,
    extend_independent_set_on_odd_cycle,
    induced_subgraph,
    random_partition,
    sample_induced,
)
