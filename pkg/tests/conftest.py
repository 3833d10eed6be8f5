import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from wlpairs.graph import Graph  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, frozenset(p for p, keep in zip(pairs, mask) if keep))


@st.composite
def graph_and_perm(draw, min_n=1, max_n=9):
    from wlpairs.graph import Permutation

    g = draw(graphs(min_n, max_n))
    images = draw(st.permutations(list(range(1, g.n + 1))))
    return g, Permutation(tuple(images))


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    a = np.triu((rng.random((n, n)) < p).astype(np.int8), 1)
    return Graph.from_adjacency(a + a.T)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
