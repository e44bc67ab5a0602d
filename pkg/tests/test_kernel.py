import random

from hypothesis import given, settings, strategies as st

from riumapf.errors import GenerationFailed, NoPlan
from riumapf.exact import exact_bfs_solve, exact_bfs_solve_galactic
from riumapf.graph import UNREACHABLE, Graph
from riumapf.instance import Instance, sample_random_instance
from riumapf.kernel import (GalacticGraph, compute_layers, kernelize, kernelize_galactic,
                            rule_adjacent_blackholes, rule_component_contract, threshold)

from conftest import cycle, path, random_connected_graph


def galactic(graph, black=()):
    return GalacticGraph(graph, tuple(v in black for v in range(graph.vertex_count)),
                         tuple(frozenset([v]) for v in range(graph.vertex_count)))


def feasible(solve):
    try:
        solve()
        return True
    except NoPlan:
        return False


def with_tail(core_edges, core_size, attach, length):
    edges = list(core_edges)
    prev, v = attach, core_size
    for _ in range(length):
        edges.append((prev, v))
        prev, v = v, v + 1
    return Graph.from_edges(v, edges)


def test_threshold_values():
    assert threshold(2, 1) == 7 == 2 * 2 + 3
    assert threshold(1, 2) == 8
    for n in range(1, 6):
        assert threshold(n, 1) == 2 * n + 3


def test_layers_on_path():
    layers = compute_layers(GalacticGraph.lift(path(7)), (0,), (6,))
    assert layers.layer == (0, 1, 2, 3, 2, 1, 0)
    assert layers.layer_set(0) == {0, 6}


def test_unreachable_planets_get_sentinel():
    gal = galactic(path(5), black={2})
    layers = compute_layers(gal, (0,), (0,)).layer
    assert layers[3] == layers[4] == UNREACHABLE


def test_rule1_cases():
    gal = GalacticGraph.lift(path(4))
    assert not rule_adjacent_blackholes(gal).changed
    red = rule_adjacent_blackholes(galactic(path(4), black={1, 2}))
    assert red.changed and red.galactic.vertex_count == 3
    b = red.mapping[1]
    assert red.mapping[2] == b and red.galactic.is_black_hole[b]
    assert set(red.galactic.graph.adjacency[b]) == {red.mapping[0], red.mapping[3]}
    tri = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (0, 4)])
    red = rule_adjacent_blackholes(galactic(tri, black={0, 1, 2}))
    b = red.mapping[0]
    assert red.galactic.vertex_count == 3 and red.galactic.provenance[b] == {0, 1, 2}
    assert set(red.galactic.graph.adjacency[b]) == {red.mapping[3], red.mapping[4]}


def test_rule2_below_threshold_unchanged():
    # n=2, r=1: threshold 7; deepest layer on path(8) from {0, 1} is 6
    g = path(8)
    assert not rule_component_contract(GalacticGraph.lift(g), (0,), (1,), 2, 1).changed
    assert rule_component_contract(GalacticGraph.lift(path(9)), (0,), (1,), 2, 1).changed


def test_rule2_radius_two_threshold():
    # n=1, r=2: threshold 8; a tail whose deepest layer is 7 stays
    g = path(8)
    assert not rule_component_contract(GalacticGraph.lift(g), (0,), (0,), 1, 2).changed
    assert rule_component_contract(GalacticGraph.lift(path(9)), (0,), (0,), 1, 2).changed


def test_rule2_three_components():
    """Core {0,1,2} holds S u T; three tails hang off it, only one reaches layer 7."""
    core = [(0, 1), (1, 2)]
    edges = list(core)
    edges += [(2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9)]   # long tail, depth 7
    edges += [(0, 10), (10, 11), (11, 12)]                                # short tail
    edges += [(1, 13), (13, 14)]                                          # stub
    g = Graph.from_edges(15, edges)
    S, T = (0, 2), (0, 2)
    layers = compute_layers(GalacticGraph.lift(g), S, T).layer
    assert layers[9] == 7
    red = rule_component_contract(GalacticGraph.lift(g), S, T, 2, 1)
    assert red.changed
    kept = red.galactic
    b = red.mapping[4]
    assert kept.is_black_hole[b] and kept.provenance[b] == {4, 5, 6, 7, 8, 9}
    assert sum(kept.is_black_hole) == 1
    assert set(kept.graph.adjacency[b]) == {red.mapping[3]}


def test_kernelize_small_graph_unchanged():
    inst = Instance(cycle(6), (0, 3), (1, 4), 1)
    gal, S, T = kernelize(inst)
    assert gal.vertex_count == 6 and not gal.black_holes
    assert gal.graph.edges() == inst.graph.edges() and (S, T) == (inst.start, inst.target)


def test_long_tail_collapses_and_feasibility_is_kept():
    core_edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
    g = with_tail(core_edges, 4, 1, 9)
    core = Graph.from_edges(4, core_edges)
    rng = random.Random(4)
    checked = 0
    for _ in range(20):
        ci = sample_random_instance(core, 1, 1, rng.randrange(10**6))
        inst = Instance(g, ci.start, ci.target, 1)
        gal, S, T = kernelize(inst)
        assert len(gal.black_holes) == 1 and gal.vertex_count < g.vertex_count
        assert max(compute_layers(gal, S, T).layer[v] for v in gal.planets) < threshold(1, 1)
        assert feasible(lambda: exact_bfs_solve(inst)) == feasible(
            lambda: exact_bfs_solve_galactic(gal.graph, gal.is_black_hole, S, T, 1))
        checked += 1
    assert checked == 20


def tail_instance(seed):
    rng = random.Random(seed)
    r = rng.choice([1, 2])
    n = rng.randint(1, 3) if r == 1 else 1
    core = random_connected_graph(rng, 3, 6)
    c = core.vertex_count
    length = min(14 - c, threshold(n, r) + rng.randint(0, 2))
    g = with_tail(core.edges(), c, rng.randrange(c), length)
    try:
        ci = sample_random_instance(core, n, r, rng.randrange(10**6))
    except GenerationFailed:
        return None
    return Instance(g, ci.start, ci.target, r)


@settings(max_examples=80)
@given(st.integers(0, 2**32 - 1))
def test_kernel_properties(seed):
    inst = tail_instance(seed)
    if inst is None:
        return
    gal, S, T, mapping = kernelize_galactic(GalacticGraph.lift(inst.graph), inst.start, inst.target,
                                            inst.radius)
    assert gal.vertex_count <= inst.graph.vertex_count
    again, S2, T2, _ = kernelize_galactic(gal, S, T, inst.radius)
    assert again.vertex_count == gal.vertex_count and (S2, T2) == (S, T)
    assert again.graph.edges() == gal.graph.edges()
    for b in gal.black_holes:
        assert not any(gal.is_black_hole[u] for u in gal.graph.adjacency[b])
    for v in gal.planets:
        (orig,) = gal.provenance[v]
        assert mapping[orig] == v
        assert len(gal.graph.adjacency[v]) <= len(inst.graph.adjacency[orig])
    limit = threshold(inst.n, inst.radius)
    layers = compute_layers(gal, S, T).layer
    assert all(layers[v] < limit for v in gal.planets)


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1))
def test_kernel_preserves_feasibility(seed):
    inst = tail_instance(seed)
    if inst is None:
        return
    gal, S, T = kernelize(inst)
    assert feasible(lambda: exact_bfs_solve(inst)) == feasible(
        lambda: exact_bfs_solve_galactic(gal.graph, gal.is_black_hole, S, T, inst.radius))


def test_galactic_ilp_agrees_with_galactic_search():
    from riumapf.ilp import build_galactic_model, naive_feasible
    rng = random.Random(11)
    agreed = 0
    for _ in range(30):
        core = random_connected_graph(rng, 3, 5)
        g = with_tail(core.edges(), core.vertex_count, 0, 6)
        try:
            ci = sample_random_instance(core, 1, 1, rng.randrange(10**6))
        except GenerationFailed:
            continue
        gal, S, T = kernelize(Instance(g, ci.start, ci.target, 1))
        try:
            span = len(exact_bfs_solve_galactic(gal.graph, gal.is_black_hole, S, T, 1)) - 1
        except NoPlan:
            span = None
        for tau in range(0, 5):
            model = build_galactic_model(gal, S, T, 1, 1, tau)
            assert (naive_feasible(model) is not None) == (span is not None and span <= tau)
        agreed += 1
    assert agreed >= 20
