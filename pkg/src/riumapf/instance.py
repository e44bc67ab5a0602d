"""Problem instances, plan validation and plan-quality metrics."""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import GenerationFailed, InvalidInstance, InvalidPlan
from .graph import Graph, bfs_distances, check_transition, is_distance_r_independent

MAX_RESTARTS = 100


@dataclass(frozen=True, eq=False)
class Instance:
    """Move ``n`` anonymous agents from vertex set ``start`` to ``target``.

    Both sets must be distance-``radius`` independent. Agent ``i`` starts on
    ``start[i]``; the order of ``target`` only matters for tie-breaking.
    """

    graph: Graph
    start: tuple
    target: tuple
    radius: int

    def __post_init__(self):
        object.__setattr__(self, "start", tuple(self.start))
        object.__setattr__(self, "target", tuple(self.target))
        if len(self.start) != len(self.target):
            raise InvalidInstance(f"|S|={len(self.start)} differs from |T|={len(self.target)}")
        if self.radius < 0:
            raise InvalidInstance("radius must be nonnegative")
        for name, vs in (("start", self.start), ("target", self.target)):
            if any(not 0 <= v < self.graph.vertex_count for v in vs):
                raise InvalidInstance(f"{name} contains an unknown vertex")
            if len(set(vs)) != len(vs):
                raise InvalidInstance(f"{name} contains duplicate vertices")
            if not is_distance_r_independent(self.graph, vs, self.radius):
                raise InvalidInstance(f"{name} is not distance-{self.radius} independent")

    @property
    def n(self) -> int:
        return len(self.start)


class ViolationKind(str, enum.Enum):
    ENDPOINT = "endpoint"
    REACHABILITY = "reachability"
    INDEPENDENCE = "independence"


@dataclass(frozen=True)
class Violation:
    step: int
    kind: ViolationKind
    detail: str = ""

    def __str__(self):
        return f"step {self.step}: {self.kind.value} violation {self.detail}".rstrip()


@dataclass(frozen=True)
class PlanMetrics:
    makespan: int
    lower_bound: int
    suboptimality: float


def sample_independent_set(graph: Graph, n: int, r: int, rng: random.Random) -> tuple:
    """Greedy pass over a shuffled vertex order; None when the pass falls short."""
    order = list(range(graph.vertex_count))
    rng.shuffle(order)
    blocked = set()
    chosen = []
    for v in order:
        if v in blocked:
            continue
        chosen.append(v)
        if len(chosen) == n:
            return tuple(chosen)
        blocked.update(graph.ball(v, r))
    return None


def sample_random_instance(graph: Graph, n: int, r: int, seed: int) -> Instance:
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    sets = []
    for _ in range(2):
        for _attempt in range(MAX_RESTARTS):
            found = sample_independent_set(graph, n, r, rng)
            if found is not None:
                sets.append(found)
                break
        else:
            raise GenerationFailed(
                f"no distance-{r} independent set of size {n} after {MAX_RESTARTS} restarts")
    return Instance(graph, sets[0], sets[1], r)


def validate_plan(instance: Instance, plan: Sequence[Sequence[int]]) -> Optional[Violation]:
    """Return the first violation in ``plan``, or None when the plan is valid."""
    steps = [tuple(q) for q in plan]
    if not steps:
        return Violation(0, ViolationKind.ENDPOINT, "(empty plan)")
    n = instance.n
    graph = instance.graph
    if sorted(steps[0]) != sorted(instance.start):
        return Violation(0, ViolationKind.ENDPOINT, "(first step is not S)")
    for k, q in enumerate(steps):
        if len(q) != n or any(not 0 <= v < graph.vertex_count for v in q):
            return Violation(k, ViolationKind.REACHABILITY, "(malformed configuration)")
        if k and not check_transition(graph, steps[k - 1], q):
            return Violation(k, ViolationKind.REACHABILITY)
        if not is_distance_r_independent(graph, q, instance.radius):
            return Violation(k, ViolationKind.INDEPENDENCE)
    if sorted(steps[-1]) != sorted(instance.target):
        return Violation(len(steps) - 1, ViolationKind.ENDPOINT, "(last step is not T)")
    return None


def distance_matrix(graph: Graph, sources: Sequence[int], targets: Sequence[int]) -> np.ndarray:
    """``out[i, j] = dist(sources[i], targets[j])``, one BFS per target."""
    out = np.empty((len(sources), len(targets)), dtype=np.int64)
    for j, t in enumerate(targets):
        dist = bfs_distances(graph, t).dist
        out[:, j] = [dist[s] for s in sources]
    return out


def _has_perfect_matching(allowed: np.ndarray) -> bool:
    matching = maximum_bipartite_matching(csr_matrix(allowed.astype(np.int8)), perm_type="column")
    return bool(np.all(matching >= 0))


def bottleneck_lower_bound(instance: Instance) -> int:
    """Smallest d such that some bijection S -> T uses only pairs with dist <= d."""
    if instance.n == 0:
        return 0
    cost = distance_matrix(instance.graph, instance.start, instance.target)
    values = np.unique(cost)
    lo, hi = 0, len(values) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _has_perfect_matching(cost <= values[mid]):
            hi = mid
        else:
            lo = mid + 1
    return int(values[lo])


def plan_metrics(instance: Instance, plan: Sequence[Sequence[int]]) -> PlanMetrics:
    violation = validate_plan(instance, plan)
    if violation is not None:
        raise InvalidPlan(violation)
    makespan = len(plan) - 1
    bound = bottleneck_lower_bound(instance)
    if bound == 0:
        ratio = 1.0 if makespan == 0 else float("inf")
    else:
        ratio = makespan / bound
    return PlanMetrics(makespan, bound, ratio)


# --- file formats -----------------------------------------------------------

def format_instance(instance: Instance, use_coords: Optional[bool] = None) -> str:
    graph = instance.graph
    if use_coords is None:
        use_coords = graph.coords is not None
    lines = [f"r {instance.radius}", f"n {instance.n}"]
    for tag, vs in (("s", instance.start), ("t", instance.target)):
        for v in vs:
            if use_coords:
                row, col = graph.coords[v]
                lines.append(f"{tag} {row} {col}")
            else:
                lines.append(f"{tag} {v}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str, graph: Graph, radius: Optional[int] = None) -> Instance:
    """Read ``r``/``n``/``s``/``t`` lines; ``s``/``t`` carry a vertex id or a row/col pair.

    Unknown leading tokens (edge-list lines) are skipped. ``radius`` overrides
    the file's ``r`` line when given.
    """
    r = None
    n = None
    start, target = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] not in ("r", "n", "s", "t"):
            continue
        try:
            values = [int(x) for x in parts[1:]]
        except ValueError:
            raise InvalidInstance(f"line {lineno}: non-integer field in {line!r}") from None
        key = parts[0]
        if key == "r":
            r = values[0]
        elif key == "n":
            n = values[0]
        else:
            if len(values) == 2:
                v = graph.vertex_at(*values)
            elif len(values) == 1:
                v = values[0]
            else:
                raise InvalidInstance(f"line {lineno}: expected a vertex id or row/col")
            (start if key == "s" else target).append(v)
    if radius is not None:
        r = radius
    if r is None:
        raise InvalidInstance("missing 'r' line")
    if n is not None and not (len(start) == len(target) == n):
        raise InvalidInstance(f"declared n={n} but found {len(start)} starts, {len(target)} targets")
    return Instance(graph, tuple(start), tuple(target), r)


def read_instance(path, graph: Graph, radius: Optional[int] = None) -> Instance:
    return parse_instance(Path(path).read_text(), graph, radius)


def format_plan(plan: Sequence[Sequence[int]]) -> str:
    return "".join(" ".join(str(v) for v in q) + "\n" for q in plan)


def parse_plan(text: str) -> list[tuple]:
    return [tuple(int(x) for x in line.split()) for line in text.splitlines() if line.strip()]


def read_plan(path) -> list[tuple]:
    return parse_plan(Path(path).read_text())
