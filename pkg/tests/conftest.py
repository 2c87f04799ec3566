import random
from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from tightham import Hypergraph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def hypergraphs(draw, k=3, min_n=3, max_n=8, max_edges=None):
    n = draw(st.integers(min_n, max_n))
    allk = list(combinations(range(1, n + 1), k))
    cap = len(allk) if max_edges is None else min(max_edges, len(allk))
    idx = draw(st.lists(st.integers(0, len(allk) - 1), max_size=cap, unique=True))
    return Hypergraph(k, n, frozenset(allk[i] for i in idx))


def random_graph(rng: random.Random, n: int, k: int = 3, p: float = 0.5) -> Hypergraph:
    return Hypergraph(k, n, frozenset(e for e in combinations(range(1, n + 1), k) if rng.random() < p))


@pytest.fixture
def rng():
    return random.Random(12345)
