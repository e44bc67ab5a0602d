"""Kernelization by contracting far-away parts of the graph into black holes.

A galactic graph splits its vertices into planets (ordinary vertices) and
black holes, which can hold any number of agents and do not count for
distance-r spacing. Two reductions preserve feasibility:

* Rule 1 merges adjacent black holes.
* Rule 2 replaces a component of the planets outside N[S u T] by a single
  black hole when it reaches layer ``(r+1)(n+2)-1`` or deeper, where the
  layer of a planet is its distance from S u T inside the planet subgraph.

Vertex ids are compacted after every contraction, ordered by the smallest
original vertex each new vertex absorbed; ``provenance`` keeps those sets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import PreconditionViolated
from .graph import UNREACHABLE, Graph, components, multi_source_distances
from .instance import Instance


@dataclass(frozen=True, eq=False)
class GalacticGraph:
    graph: Graph
    is_black_hole: tuple
    provenance: tuple   # per vertex: frozenset of original vertex ids

    @classmethod
    def lift(cls, graph: Graph) -> "GalacticGraph":
        return cls(graph, (False,) * graph.vertex_count,
                   tuple(frozenset([v]) for v in range(graph.vertex_count)))

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def planets(self) -> list:
        return [v for v, b in enumerate(self.is_black_hole) if not b]

    @property
    def black_holes(self) -> list:
        return [v for v, b in enumerate(self.is_black_hole) if b]

    def planet_mask(self) -> list:
        return [not b for b in self.is_black_hole]


@dataclass(frozen=True)
class LayerLabels:
    """``layer[v]`` for planets; black holes and unreachable planets hold UNREACHABLE."""

    layer: tuple

    def layer_set(self, i: int) -> set:
        return {v for v, d in enumerate(self.layer) if d == i}

    @property
    def depth(self) -> int:
        finite = [d for d in self.layer if d != UNREACHABLE]
        return max(finite, default=0)


@dataclass(frozen=True)
class Reduction:
    galactic: GalacticGraph
    changed: bool
    mapping: tuple      # old vertex id -> new vertex id


def threshold(n: int, r: int) -> int:
    """Layer depth at which a component becomes contractible; 2n+3 for r=1."""
    return (r + 1) * (n + 2) - 1


def compute_layers(galactic: GalacticGraph, S: Sequence[int], T: Sequence[int]) -> LayerLabels:
    for v in (*S, *T):
        if galactic.is_black_hole[v]:
            raise PreconditionViolated(f"vertex {v} of S or T is a black hole")
    layer = multi_source_distances(galactic.graph, (*S, *T), allowed=galactic.planet_mask())
    return LayerLabels(tuple(layer))


def _contract(galactic: GalacticGraph, groups: list) -> Reduction:
    """Merge each vertex group into one black hole and compact the ids."""
    rep = list(range(galactic.vertex_count))
    for group in groups:
        head = min(group)
        for v in group:
            rep[v] = head
    group_heads = {min(group) for group in groups}
    merged: dict = {}
    for v in range(galactic.vertex_count):
        merged.setdefault(rep[v], []).append(v)
    heads = sorted(merged, key=lambda h: min(min(galactic.provenance[v]) for v in merged[h]))
    new_id = {h: k for k, h in enumerate(heads)}
    mapping = tuple(new_id[rep[v]] for v in range(galactic.vertex_count))
    edges = {(min(mapping[u], mapping[v]), max(mapping[u], mapping[v]))
             for u, v in galactic.graph.edges() if mapping[u] != mapping[v]}
    black = []
    prov = []
    for h in heads:
        members = merged[h]
        black.append(h in group_heads or galactic.is_black_hole[h])
        prov.append(frozenset().union(*(galactic.provenance[v] for v in members)))
    graph = Graph.from_edges(len(heads), sorted(edges))
    return Reduction(GalacticGraph(graph, tuple(black), tuple(prov)), bool(groups), mapping)


def rule_adjacent_blackholes(galactic: GalacticGraph) -> Reduction:
    """Rule 1: contract every connected group of black holes in one go."""
    groups = [c for c in components(galactic.graph, allowed=galactic.is_black_hole) if len(c) > 1]
    if not groups:
        return Reduction(galactic, False, tuple(range(galactic.vertex_count)))
    return _contract(galactic, groups)


def rule_component_contract(galactic: GalacticGraph, S: Sequence[int], T: Sequence[int],
                            n: int, r: int) -> Reduction:
    """Rule 2 for every qualifying component of the planets outside N[S u T]."""
    graph = galactic.graph
    layers = compute_layers(galactic, S, T).layer
    near = set()
    for v in (*S, *T):
        near.update(graph.closed_neighbors(v))
    for v in near:
        if galactic.is_black_hole[v]:
            raise PreconditionViolated(f"black hole {v} lies in N[S u T]")
    outer = [not galactic.is_black_hole[v] and v not in near for v in range(graph.vertex_count)]
    limit = threshold(n, r)
    groups = [comp for comp in components(graph, allowed=outer)
              if max(layers[v] for v in comp) >= limit]
    if not groups:
        return Reduction(galactic, False, tuple(range(graph.vertex_count)))
    return _contract(galactic, groups)


def _compose(a: tuple, b: tuple) -> tuple:
    return tuple(b[x] for x in a)


def kernelize_galactic(galactic: GalacticGraph, S: Sequence[int], T: Sequence[int],
                       r: int) -> tuple:
    """Apply both rules to fixpoint; returns ``(galactic, S, T, mapping)``."""
    n = len(S)
    S, T = tuple(S), tuple(T)
    mapping = tuple(range(galactic.vertex_count))
    while True:
        red2 = rule_component_contract(galactic, S, T, n, r)
        galactic, mapping = red2.galactic, _compose(mapping, red2.mapping)
        S = tuple(red2.mapping[v] for v in S)
        T = tuple(red2.mapping[v] for v in T)
        changed1 = False
        while True:
            red1 = rule_adjacent_blackholes(galactic)
            if not red1.changed:
                break
            changed1 = True
            galactic, mapping = red1.galactic, _compose(mapping, red1.mapping)
            S = tuple(red1.mapping[v] for v in S)
            T = tuple(red1.mapping[v] for v in T)
        if not (red2.changed or changed1):
            return galactic, S, T, mapping


def kernelize(instance: Instance, galactic: Optional[GalacticGraph] = None) -> tuple:
    """Kernel of ``instance``: ``(galactic graph, S, T)`` with relabelled vertex ids."""
    if galactic is None:
        galactic = GalacticGraph.lift(instance.graph)
    gal, S, T, _ = kernelize_galactic(galactic, instance.start, instance.target, instance.radius)
    return gal, S, T
