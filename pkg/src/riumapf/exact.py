"""Exact breadth-first search over unlabeled configurations.

Serves as the makespan-optimal oracle for small instances. States are
sorted vertex tuples. In galactic mode black holes may hold any number of
agents and independence is measured inside the planet-induced subgraph.
"""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import CapReached, NoPlan
from .graph import Graph, multi_source_distances
from .instance import Instance

DEFAULT_STATE_CAP = 2_000_000


def _planet_balls(graph: Graph, r: int, planet: Optional[Sequence[bool]]) -> list:
    if planet is None:
        return [graph.ball(v, r) for v in range(graph.vertex_count)]
    out = []
    for v in range(graph.vertex_count):
        if not planet[v]:
            out.append(frozenset())
            continue
        dist = multi_source_distances(graph, [v], allowed=planet)
        out.append(frozenset(u for u, d in enumerate(dist) if d <= r))
    return out


def successors(graph: Graph, config: tuple, balls: list,
               planet: Optional[Sequence[bool]] = None) -> set:
    """All sorted configurations one synchronous step from ``config``.

    Agents are branched in ascending vertex order, and a partial assignment
    is cut as soon as two planet positions fall within distance r.
    """
    out = set()
    n = len(config)
    chosen: list = []
    blocked: dict = {}   # planet vertex -> number of chosen planets whose ball covers it

    def rec(k: int):
        if k == n:
            out.add(tuple(sorted(chosen)))
            return
        for v in graph.closed_neighbors(config[k]):
            free = planet is None or planet[v]
            if free:
                if blocked.get(v):
                    continue
                for u in balls[v]:
                    blocked[u] = blocked.get(u, 0) + 1
            chosen.append(v)
            rec(k + 1)
            chosen.pop()
            if free:
                for u in balls[v]:
                    blocked[u] -= 1

    rec(0)
    return out


def _bfs(graph: Graph, start: tuple, target: tuple, r: int, planet, horizon_cap: int,
         state_cap: int) -> list:
    balls = _planet_balls(graph, r, planet)
    s, t = tuple(sorted(start)), tuple(sorted(target))
    parent = {s: None}
    frontier = [s]
    depth = 0
    while frontier:
        if t in parent:
            break
        if depth >= horizon_cap:
            raise CapReached(f"no plan within horizon {horizon_cap}")
        nxt = []
        for q in frontier:
            for c in sorted(successors(graph, q, balls, planet)):
                if c not in parent:
                    parent[c] = q
                    nxt.append(c)
                    if len(parent) > state_cap:
                        raise CapReached(f"more than {state_cap} configurations")
        frontier = nxt
        depth += 1
    if t not in parent:
        raise NoPlan("infeasible: reachable configurations exhausted")
    path = [t]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _label(graph: Graph, start: Sequence[int], path: list) -> list:
    """Turn a sequence of sorted configurations into per-agent moves."""
    cur = tuple(start)
    plan = [cur]
    n = len(cur)
    for q in path[1:]:
        allowed = np.zeros((n, n), dtype=np.int8)
        for i, a in enumerate(cur):
            nbrs = graph.closed_neighbors(a)
            for j, b in enumerate(q):
                if b in nbrs:
                    allowed[i, j] = 1
        match = maximum_bipartite_matching(csr_matrix(allowed), perm_type="column")
        assert np.all(match >= 0), "consecutive oracle states must be matchable"
        cur = tuple(q[j] for j in match)
        plan.append(cur)
    return plan


def exact_bfs_solve(instance: Instance, horizon_cap: Optional[int] = None,
                    state_cap: int = DEFAULT_STATE_CAP) -> list:
    """Makespan-optimal plan, labelled from ``instance.start``.

    Raises:
        NoPlan: every reachable configuration was explored without meeting T.
        CapReached: horizon (default ``10*|V|``) or state budget exhausted.
    """
    graph = instance.graph
    if horizon_cap is None:
        horizon_cap = 10 * graph.vertex_count
    path = _bfs(graph, instance.start, instance.target, instance.radius, None,
                horizon_cap, state_cap)
    return _label(graph, instance.start, path)


def exact_bfs_solve_galactic(graph: Graph, black_hole: Sequence[bool], start: Sequence[int],
                             target: Sequence[int], r: int, horizon_cap: Optional[int] = None,
                             state_cap: int = DEFAULT_STATE_CAP) -> list:
    """Galactic variant: black holes are unbounded, planets obey distance-r spacing in G[P]."""
    planet = [not b for b in black_hole]
    if horizon_cap is None:
        horizon_cap = 10 * graph.vertex_count
    path = _bfs(graph, tuple(start), tuple(target), r, planet, horizon_cap, state_cap)
    return _label(graph, start, path)


def optimal_makespan(instance: Instance, **kwargs) -> Optional[int]:
    """Optimal makespan, or None when the instance is infeasible."""
    try:
        return len(exact_bfs_solve(instance, **kwargs)) - 1
    except NoPlan:
        return None
