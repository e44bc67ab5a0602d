"""Graph representation and the distance machinery every planner relies on.

Vertices are dense 0-based integers. Adjacency lists are kept sorted so that
every argmin in the package can break ties by the smallest vertex id, which
makes all planners reproducible across runs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import InvalidGraph

# hop count used for vertices that BFS never reaches
UNREACHABLE = 1 << 40

Configuration = tuple  # tuple[int, ...], index = agent id


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph with sorted adjacency lists.

    Attributes:
        vertex_count: number of vertices.
        adjacency: ``adjacency[v]`` is the sorted tuple of neighbours of ``v``.
        coords: optional ``(row, col)`` per vertex for grid-derived graphs.
    """

    vertex_count: int
    adjacency: tuple
    coords: Optional[tuple] = None
    _balls: dict = field(default_factory=dict, repr=False, compare=False)
    _closed: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        if len(self.adjacency) != self.vertex_count:
            raise InvalidGraph("adjacency length does not match vertex_count")
        if self.coords is not None and len(self.coords) != self.vertex_count:
            raise InvalidGraph("coords length does not match vertex_count")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise InvalidGraph(f"neighbours of {v} must be sorted and unique")
            for u in nbrs:
                if u == v:
                    raise InvalidGraph(f"self-loop at {v}")
                if not 0 <= u < self.vertex_count:
                    raise InvalidGraph(f"edge {v}-{u} leaves the vertex range")
                if v not in self.adjacency[u]:
                    raise InvalidGraph(f"edge {v}-{u} is not symmetric")
        closed = [tuple(sorted((v, *nbrs))) for v, nbrs in enumerate(self.adjacency)]
        self._closed.extend(closed)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]], coords=None,
                   require_connected: bool = False) -> "Graph":
        nbrs = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise InvalidGraph(f"self-loop at {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InvalidGraph(f"edge {u}-{v} leaves the vertex range")
            nbrs[u].add(v)
            nbrs[v].add(u)
        g = cls(vertex_count, tuple(tuple(sorted(s)) for s in nbrs),
                None if coords is None else tuple(tuple(c) for c in coords))
        if require_connected and not is_connected(g):
            raise InvalidGraph("graph is not connected")
        return g

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(n) for n in self.adjacency) // 2

    def closed_neighbors(self, v: int) -> tuple:
        """N[v], sorted ascending."""
        return self._closed[v]

    def ball(self, v: int, r: int) -> frozenset:
        key = (v, r)
        ball = self._balls.get(key)
        if ball is None:
            ball = frozenset(_bfs_within(self, v, r))
            self._balls[key] = ball
        return ball

    def vertex_at(self, row: int, col: int) -> int:
        if self.coords is None:
            raise InvalidGraph("graph has no grid coordinates")
        index = self.__dict__.get("_coord_index")
        if index is None:
            index = {tuple(c): v for v, c in enumerate(self.coords)}
            object.__setattr__(self, "_coord_index", index)
        try:
            return index[(row, col)]
        except KeyError:
            raise InvalidGraph(f"cell ({row}, {col}) is not a passable vertex") from None


@dataclass(frozen=True)
class DistanceTable:
    source: int
    dist: tuple

    def __getitem__(self, v: int) -> int:
        return self.dist[v]


def grid_graph(passable: Sequence[Sequence[bool]], require_connected: bool = True) -> Graph:
    """4-connected graph over passable cells, numbered row-major."""
    ids = {}
    coords = []
    for row, line in enumerate(passable):
        for col, ok in enumerate(line):
            if ok:
                ids[(row, col)] = len(coords)
                coords.append((row, col))
    edges = []
    for (row, col), v in ids.items():
        for nb in ((row + 1, col), (row, col + 1)):
            u = ids.get(nb)
            if u is not None:
                edges.append((v, u))
    return Graph.from_edges(len(coords), edges, coords, require_connected=require_connected)


def _bfs_within(graph: Graph, source: int, radius: int) -> list[int]:
    seen = {source: 0}
    queue = deque([source])
    out = [source]
    while queue:
        v = queue.popleft()
        d = seen[v]
        if d == radius:
            continue
        for u in graph.adjacency[v]:
            if u not in seen:
                seen[u] = d + 1
                out.append(u)
                queue.append(u)
    return out


def multi_source_distances(graph: Graph, sources: Iterable[int],
                           allowed: Optional[Sequence[bool]] = None) -> list[int]:
    """Hop counts from the nearest source; BFS restricted to ``allowed`` vertices."""
    dist = [UNREACHABLE] * graph.vertex_count
    queue = deque()
    for s in sources:
        if allowed is not None and not allowed[s]:
            continue
        if dist[s] != 0:
            dist[s] = 0
            queue.append(s)
    adjacency = graph.adjacency
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        for u in adjacency[v]:
            if dist[u] == UNREACHABLE and (allowed is None or allowed[u]):
                dist[u] = d
                queue.append(u)
    return dist


def bfs_distances(graph: Graph, source: int) -> DistanceTable:
    if not 0 <= source < graph.vertex_count:
        raise IndexError(f"vertex {source} out of range")
    return DistanceTable(source, tuple(multi_source_distances(graph, [source])))


def neighborhood_r(graph: Graph, v: int, r: int) -> frozenset:
    """All vertices within ``r`` hops of ``v`` (the closed r-ball)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return graph.ball(v, r)


def is_distance_r_independent(graph: Graph, config: Sequence[int], r: int) -> bool:
    occupied = set()
    for v in config:
        if v in occupied:
            return False
        occupied.add(v)
    if r == 0:
        return True
    for v in config:
        for u in graph.ball(v, r):
            if u != v and u in occupied:
                return False
    return True


def next_step_r(graph: Graph, s: int, target_dist, r: int) -> int:
    """Follow ``r`` greedy hops from ``s`` towards the target of ``target_dist``.

    Each hop moves to the closed-neighbourhood vertex with the smallest
    distance to the target; ties go to the smallest vertex id.
    """
    dist = target_dist.dist if isinstance(target_dist, DistanceTable) else target_dist
    cur = s
    for _ in range(r):
        best = cur
        best_d = dist[cur]
        for u in graph._closed[cur]:
            d = dist[u]
            if d < best_d or (d == best_d and u < best):
                best, best_d = u, d
        cur = best
    return cur


def check_transition(graph: Graph, q_from: Sequence[int], q_to: Sequence[int]) -> bool:
    if len(q_from) != len(q_to):
        return False
    return all(b == a or b in graph.adjacency[a] for a, b in zip(q_from, q_to))


def components(graph: Graph, allowed: Optional[Sequence[bool]] = None) -> list[list[int]]:
    seen = [False] * graph.vertex_count
    out = []
    for s in range(graph.vertex_count):
        if seen[s] or (allowed is not None and not allowed[s]):
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in graph.adjacency[v]:
                if not seen[u] and (allowed is None or allowed[u]):
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        out.append(sorted(comp))
    return out


def is_connected(graph: Graph) -> bool:
    return graph.vertex_count <= 1 or len(components(graph)) == 1
