"""Static SVG frames of a plan: one file per step, agents drawn with their r-halos."""
from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

from .errors import InvalidPlan
from .graph import Graph
from .instance import Instance, validate_plan

CELL = 24


def _layout(graph: Graph) -> list:
    if graph.coords is not None:
        return [((c + 0.5) * CELL, (r + 0.5) * CELL) for r, c in graph.coords]
    # circular layout for non-grid graphs
    V = max(graph.vertex_count, 1)
    radius = CELL * max(2.0, V / 3)
    return [(radius + CELL + radius * math.cos(2 * math.pi * v / V),
             radius + CELL + radius * math.sin(2 * math.pi * v / V)) for v in range(graph.vertex_count)]


def render_frame(graph: Graph, config: Sequence[int], r: int, step: int, targets=()) -> str:
    pos = _layout(graph)
    width = max((x for x, _ in pos), default=0) + CELL
    height = max((y for _, y in pos), default=0) + CELL + 16
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
           f'data-step="{step}" data-r="{r}">',
           '<rect width="100%" height="100%" fill="#222"/>']
    if graph.coords is None:
        for u, v in graph.edges():
            (x1, y1), (x2, y2) = pos[u], pos[v]
            out.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" stroke="#555"/>')
    for v, (x, y) in enumerate(pos):
        out.append(f'<rect x="{x - CELL / 2 + 1:.1f}" y="{y - CELL / 2 + 1:.1f}" '
                   f'width="{CELL - 2}" height="{CELL - 2}" fill="#eee"/>')
    for t in targets:
        x, y = pos[t]
        out.append(f'<rect class="target" x="{x - 5:.1f}" y="{y - 5:.1f}" width="10" height="10" '
                   f'fill="none" stroke="#c33"/>')
    for i, v in enumerate(config):
        x, y = pos[v]
        out.append(f'<circle class="halo" data-r="{r}" cx="{x:.1f}" cy="{y:.1f}" '
                   f'r="{(r + 0.5) * CELL:.1f}" fill="#39f" fill-opacity="0.15" stroke="#39f"/>')
        out.append(f'<circle class="agent" data-agent="{i}" cx="{x:.1f}" cy="{y:.1f}" '
                   f'r="{CELL * 0.35:.1f}" fill="#17c"/>')
    out.append(f'<text x="4" y="{height - 4:.0f}" fill="#fff" font-size="12">'
               f't={step} r={r}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_trace(instance: Instance, plan: Sequence[Sequence[int]], out_dir) -> list:
    """Validate ``plan`` and write ``frame_0000.svg`` ... into ``out_dir``.

    Raises:
        InvalidPlan: when the plan fails validation.
    """
    violation = validate_plan(instance, plan)
    if violation is not None:
        raise InvalidPlan(violation)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for step, config in enumerate(plan):
        path = out / f"frame_{step:04d}.svg"
        path.write_text(render_frame(instance.graph, config, instance.radius, step, instance.target))
        paths.append(path)
    return paths
