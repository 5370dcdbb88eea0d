import json
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from cycleturan.graph import Graph

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_graph(rng, n, p):
    mat = np.triu(rng.random((n, n)) < p, 1)
    return Graph.from_matrix(mat | mat.T)


def all_graphs(n):
    """Every labelled graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for i, e in enumerate(pairs) if (mask >> i) & 1])


@pytest.fixture(scope="session")
def ex_oracle():
    return json.loads((DATA / "ex_oracle_n7.json").read_text())


@pytest.fixture(scope="session")
def ex_n8():
    return json.loads((DATA / "ex_n8_recorded.json").read_text())
