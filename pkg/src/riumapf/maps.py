"""Map readers and writers: MovingAI ``.map`` grids and plain edge lists.

MovingAI header::

    type octile
    height H
    width W
    map

followed by H rows of W characters. ``.`` and ``G`` are passable, everything
else (``@``, ``O``, ``T``, ``W``, ...) is blocked.
"""
from __future__ import annotations

import random
from pathlib import Path
from typing import Optional

from .errors import InvalidGraph
from .graph import Graph, components, grid_graph

PASSABLE = frozenset(".G")


def parse_movingai(text: str) -> list[list[bool]]:
    lines = text.splitlines()
    header = {}
    i = 0
    while i < len(lines):
        parts = lines[i].split()
        i += 1
        if not parts:
            continue
        if parts[0] == "map":
            break
        if len(parts) == 2:
            header[parts[0]] = parts[1]
    try:
        height = int(header["height"])
        width = int(header["width"])
    except (KeyError, ValueError):
        raise InvalidGraph("MovingAI header must give integer height and width") from None
    rows = [line.rstrip("\r\n") for line in lines[i:i + height]]
    if len(rows) != height or any(len(row) < width for row in rows):
        raise InvalidGraph(f"expected {height} rows of width {width}")
    return [[ch in PASSABLE for ch in row[:width]] for row in rows]


def load_map(path, keep_largest_component: bool = False) -> Graph:
    """Read a MovingAI map as a 4-connected grid graph.

    Disconnected maps are rejected unless ``keep_largest_component`` is set,
    in which case cells outside the largest component are treated as blocked.
    """
    grid = parse_movingai(Path(path).read_text())
    if keep_largest_component:
        grid = largest_component_only(grid)
    try:
        return grid_graph(grid, require_connected=True)
    except InvalidGraph as exc:
        raise InvalidGraph(f"{path}: {exc} (passable cells form several components)") from None


def largest_component_only(grid: list[list[bool]]) -> list[list[bool]]:
    g = grid_graph(grid, require_connected=False)
    comps = components(g)
    if not comps:
        return grid
    keep = set(max(comps, key=len))
    out = [[False] * len(row) for row in grid]
    for v in keep:
        row, col = g.coords[v]
        out[row][col] = True
    return out


def format_movingai(grid: list[list[bool]]) -> str:
    height = len(grid)
    width = len(grid[0]) if grid else 0
    rows = ["".join("." if ok else "@" for ok in row) for row in grid]
    return "\n".join(["type octile", f"height {height}", f"width {width}", "map", *rows]) + "\n"


def random_grid(height: int, width: int, obstacle_ratio: float, seed: int) -> list[list[bool]]:
    """Seeded random obstacle grid, trimmed to its largest connected component."""
    rng = random.Random(seed)
    cells = [(r, c) for r in range(height) for c in range(width)]
    blocked = set(rng.sample(cells, round(obstacle_ratio * len(cells))))
    grid = [[(r, c) not in blocked for c in range(width)] for r in range(height)]
    return largest_component_only(grid)


def read_edge_list(path) -> tuple[Graph, list[int]]:
    """Parse ``p V E`` / ``e u v`` lines; ``b v`` lines mark black holes.

    Lines with any other leading token are ignored so that a combined
    graph-plus-instance file can be read by both parsers.
    """
    vertex_count: Optional[int] = None
    edges = []
    black = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        parts = line.split()
        if not parts:
            continue
        try:
            if parts[0] == "p":
                vertex_count = int(parts[1])
            elif parts[0] == "e":
                edges.append((int(parts[1]), int(parts[2])))
            elif parts[0] == "b":
                black.append(int(parts[1]))
        except (IndexError, ValueError):
            raise InvalidGraph(f"{path}:{lineno}: malformed line {line!r}") from None
    if vertex_count is None:
        raise InvalidGraph(f"{path}: missing 'p <V> <E>' line")
    return Graph.from_edges(vertex_count, edges, require_connected=True), black


def format_edge_list(graph: Graph, black_holes=()) -> str:
    lines = [f"p {graph.vertex_count} {graph.edge_count}"]
    lines += [f"e {u} {v}" for u, v in graph.edges()]
    lines += [f"b {b}" for b in sorted(black_holes)]
    return "\n".join(lines) + "\n"


def load_graph(path, keep_largest_component: bool = False) -> Graph:
    """Load either a MovingAI map or an edge-list file, sniffing the first token."""
    text = Path(path).read_text()
    first = text.split(maxsplit=1)[0] if text.strip() else ""
    if first == "type" or str(path).endswith(".map"):
        return load_map(path, keep_largest_component)
    return read_edge_list(path)[0]
