import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from riumapf.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_connected_graph(rng: random.Random, vmin: int, vmax: int, extra: float = 0.5) -> Graph:
    """Random spanning tree plus a few chords."""
    V = rng.randint(vmin, vmax)
    edges = [(i, rng.randrange(i)) for i in range(1, V)]
    for _ in range(int(rng.random() * extra * V) + (1 if V > 2 else 0)):
        a, b = rng.sample(range(V), 2)
        edges.append((a, b))
    return Graph.from_edges(V, edges)


@st.composite
def connected_graphs(draw, vmin=2, vmax=12):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected_graph(random.Random(seed), vmin, vmax)


def path(k: int) -> Graph:
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def cycle(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def grid(h: int, w: int) -> Graph:
    from riumapf.graph import grid_graph
    return grid_graph([[True] * w for _ in range(h)])


def five_agent_graph() -> Graph:
    """Eleven-vertex grid fragment used for the five-agent step trace (r=1).

    Ids: row 3 cols 1-4 -> 0..3, row 2 cols 2-4 -> 4..6, row 1 cols 1-4 -> 7..10.
    """
    edges = [(0, 1), (1, 2), (2, 3), (4, 5), (7, 8), (8, 9), (9, 10),
             (2, 5), (3, 6), (4, 8), (5, 9), (6, 10)]
    return Graph.from_edges(11, edges)


def pendant_cycle() -> Graph:
    """8-cycle 0..7 with pendants 8@2, 9@4, 10@6, 11@0."""
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(2, 8), (4, 9), (6, 10), (0, 11)]
    return Graph.from_edges(12, edges)


def ladder() -> Graph:
    """2x4 ladder, top row 0..3, bottom row 4..7."""
    return grid(2, 4)


@pytest.fixture
def rng():
    return random.Random(12345)


def claw() -> Graph:
    """K_{1,3}: centre 0, leaves 1..3."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
