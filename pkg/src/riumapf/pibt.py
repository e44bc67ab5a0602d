"""IU-PIBT: one-step configuration generator for distance-r unlabeled MAPF.

The generator is a PIBT variant. Agents are planned in priority order, and
an agent whose preferred vertex is crowded by undecided agents asks them to
move first (priority inheritance). Three rules are added on top:

* a move is rejected when it lands within distance r of an agent that is
  waiting on the current agent, which rules out distance-r rotations;
* target swapping: an agent parked on its own target that blocks the greedy
  route of another agent trades targets with it;
* deadlock rotation: cycles of agents whose (r+1)-step greedy routes end on
  each other's vertices rotate their targets before planning starts.
"""
from __future__ import annotations

import math
import sys
import time
from typing import Optional, Sequence

from .errors import Stalled
from .graph import UNREACHABLE, Graph, is_distance_r_independent, multi_source_distances
from .instance import Instance
from .matching import hungarian_assignment

Priorities = dict  # target vertex -> float


def initial_priorities(targets: Sequence[int]) -> Priorities:
    """Distinct fractional priorities in (0, 1), one per target."""
    n = len(targets)
    return {t: (k + 1) / (n + 1) for k, t in enumerate(targets)}


def update_priorities(p: Priorities, q_from: Sequence[int], g: Sequence[int]) -> Priorities:
    """Targets held by their assigned agent drop to their fractional part, others gain 1."""
    out = {}
    for i, t in enumerate(g):
        out[t] = p[t] - math.floor(p[t]) if q_from[i] == t else p[t] + 1
    return out


def agent_order(p: Priorities, g: Sequence[int]) -> list[int]:
    return sorted(range(len(g)), key=lambda i: -p[g[i]])


def resolve_deadlock(cycle: Sequence[int], g: Sequence[int]) -> tuple:
    """Rotate targets along a deadlock cycle.

    ``cycle[k+1]`` sits on the greedy route of ``cycle[k]``, so it is closer
    to that target and inherits it.
    """
    out = list(g)
    m = len(cycle)
    for k in range(m):
        out[cycle[(k + 1) % m]] = g[cycle[k]]
    return tuple(out)


class IUPIBT:
    """Stateful generator over a fixed graph, radius and target set.

    Per-step state (``q_from``, ``q_to``, ``g``) lives on the instance between
    :meth:`begin` and :meth:`end`; :meth:`step` and :meth:`generate` wrap the
    whole cycle. ``calls`` counts funcPIBT invocations since the last begin.
    """

    def __init__(self, graph: Graph, targets: Sequence[int], r: int):
        self.graph = graph
        self.r = r
        self.targets = tuple(targets)
        self.dist = {t: multi_source_distances(graph, [t]) for t in self.targets}
        self._next1: dict = {}
        self._balls: dict = {}
        self._occ_from = [-1] * graph.vertex_count
        self._occ_to = [-1] * graph.vertex_count
        self.q_from: list = []
        self.q_to: list = []
        self.g: list = []
        self._waiting: list = []
        self.calls = 0
        need = 4 * len(self.targets) + 1000
        if sys.getrecursionlimit() < need:
            sys.setrecursionlimit(need)

    # --- lookups ------------------------------------------------------------

    def next_step(self, v: int, t: int, hops: int) -> int:
        """Greedy ``hops``-step walk from ``v`` towards target ``t``."""
        cache = self._next1
        for _ in range(hops):
            key = (v, t)
            nxt = cache.get(key)
            if nxt is None:
                dist = self.dist[t]
                nxt, best = v, UNREACHABLE + 1
                for u in self.graph._closed[v]:
                    if dist[u] < best:
                        nxt, best = u, dist[u]
                cache[key] = nxt
            v = nxt
        return v

    def _ball(self, v: int):
        entry = self._balls.get(v)
        if entry is None:
            s = self.graph.ball(v, self.r)
            entry = (tuple(sorted(s)), s)
            self._balls[v] = entry
        return entry

    # --- per-step state -----------------------------------------------------

    def begin(self, q_from: Sequence[int], g: Sequence[int], pins=()) -> None:
        self.end()
        n = len(q_from)
        self.q_from = list(q_from)
        self.q_to = [None] * n
        self.g = list(g)
        self._waiting = [False] * n
        self.calls = 0
        for i, v in enumerate(self.q_from):
            self._occ_from[v] = i
        for i, v in pins:
            self.q_to[i] = v
            self._occ_to[v] = i

    def end(self) -> None:
        for v in self.q_from:
            self._occ_from[v] = -1
        for v in self.q_to:
            if v is not None:
                self._occ_to[v] = -1

    # --- the rules ----------------------------------------------------------

    def detect_swap(self, i: int, v: int) -> Optional[int]:
        """Agent parked on its own target at the r-step greedy point from ``v``."""
        u = self.next_step(v, self.g[i], self.r)
        j = self._occ_from[u]
        if j != -1 and self.q_to[j] is None and self.g[j] == u:
            return j
        return None

    def detect_deadlock(self, i: int, u: int) -> Optional[list]:
        """Follow (r+1)-step greedy routes from ``i``; return the cycle if it closes at ``i``."""
        q_from, q_to, g, occ = self.q_from, self.q_to, self.g, self._occ_from
        j = occ[self.next_step(u, g[i], self.r)]
        if j == -1 or j == i or q_to[j] is not None:
            return None
        chain = [j]
        while j != i:
            j = occ[self.next_step(q_from[j], g[j], self.r + 1)]
            if j == -1 or q_to[j] is not None:
                return None
            if j in chain:
                return None
            chain.append(j)
        return [i] + chain[:-1]

    def resolve_deadlocks(self, p: Priorities) -> int:
        """Rotate targets until a full scan finds no deadlock; at most n scans."""
        rotations = 0
        for _ in range(len(self.q_from)):
            found = False
            for i in agent_order(p, self.g):
                cycle = self.detect_deadlock(i, self.next_step(self.q_from[i], self.g[i], 1))
                if cycle:
                    self.g = list(resolve_deadlock(cycle, self.g))
                    rotations += 1
                    found = True
            if not found:
                break
        return rotations

    def func_pibt(self, i: int, chain: Sequence[int] = ()) -> bool:
        """Decide ``q_to[i]``; True (VALID) if it found a move, False if forced to stay."""
        for j in chain:
            self._waiting[j] = True
        try:
            return self._func(i)
        finally:
            for j in chain:
                self._waiting[j] = False

    def _func(self, i: int) -> bool:
        self.calls += 1
        q_from, q_to, g = self.q_from, self.q_to, self.g
        occ_from, occ_to, waiting = self._occ_from, self._occ_to, self._waiting
        here = q_from[i]
        dist = self.dist[g[i]]
        for v in sorted(self.graph._closed[here], key=dist.__getitem__):
            ball, ball_set = self._ball(v)
            if any(occ_to[u] != -1 for u in ball):
                continue
            if any(occ_from[u] != -1 and waiting[occ_from[u]] for u in ball):
                continue
            q_to[i] = v
            occ_to[v] = i
            k = self.detect_swap(i, v)
            if k is not None:
                g[i], g[k] = g[k], g[i]
            ok = True
            waiting[i] = True
            for u in ball:
                j = occ_from[u]
                if j == -1 or j == i:
                    continue
                if q_to[j] is None:
                    self._func(j)
                if q_to[j] in ball_set:
                    ok = False
                    break
            waiting[i] = False
            if ok:
                return True
            if k is not None:
                g[i], g[k] = g[k], g[i]
            occ_to[v] = -1
            q_to[i] = None
        q_to[i] = here
        occ_to[here] = i
        return False

    # --- drivers --------------------------------------------------------------

    def _run(self, q_from, g, p, pins):
        self.begin(q_from, g, pins)
        try:
            if not pins:
                self.resolve_deadlocks(p)
            p_next = update_priorities(p, self.q_from, self.g)
            for i in agent_order(p_next, self.g):
                if self.q_to[i] is None:
                    self._func(i)
            return tuple(self.q_to), tuple(self.g), p_next
        finally:
            self.end()

    def step(self, q_from: Sequence[int], g: Sequence[int], p: Priorities):
        """One IU-PIBT step: returns ``(q_to, g', p')``."""
        return self._run(q_from, g, p, ())

    def generate(self, q_from: Sequence[int], g: Sequence[int], p: Priorities,
                 pins: Sequence[tuple] = ()):
        """Constrained generator used by the search.

        ``pins`` is a list of ``(agent, vertex)`` pairs fixed in advance. The
        deadlock preamble only runs without pins so that rotation cannot
        invalidate them. Returns ``(q_to, g', p')`` or None when the pins or
        the result break distance-r independence.
        """
        if pins:
            pinned = [v for _, v in pins]
            if not is_distance_r_independent(self.graph, pinned, self.r):
                return None
        q_to, g2, p2 = self._run(q_from, g, p, pins)
        if pins and not is_distance_r_independent(self.graph, q_to, self.r):
            return None
        return q_to, g2, p2


def iu_pibt_step(graph: Graph, r: int, q_from: Sequence[int], targets: Sequence[int],
                 g: Sequence[int], p: Priorities):
    """Single step without a long-lived generator; see :meth:`IUPIBT.step`."""
    return IUPIBT(graph, targets, r).step(q_from, g, p)


def initial_assignment(instance: Instance, dist: Optional[dict] = None) -> tuple:
    """Hungarian assignment on hop distances; ``g[i]`` is agent i's target vertex."""
    if dist is None:
        dist = {t: multi_source_distances(instance.graph, [t]) for t in instance.target}
    cost = [[dist[t][s] for t in instance.target] for s in instance.start]
    cols = hungarian_assignment(cost)
    return tuple(instance.target[c] for c in cols)


def run_pibt(instance: Instance, max_steps: int = 10_000, timeout: Optional[float] = None) -> list:
    """Iterate IU-PIBT until the agents occupy T.

    Raises:
        Stalled: ``max_steps`` steps (or ``timeout`` seconds) passed first;
            ``exc.last`` holds the configurations produced so far.
    """
    gen = IUPIBT(instance.graph, instance.target, instance.radius)
    g = initial_assignment(instance, gen.dist)
    p = initial_priorities(instance.target)
    q = instance.start
    plan = [q]
    goal = sorted(instance.target)
    deadline = None if timeout is None else time.perf_counter() + timeout
    while sorted(q) != goal:
        if len(plan) > max_steps or (deadline is not None and time.perf_counter() > deadline):
            raise Stalled(f"target not reached after {len(plan) - 1} steps", last=plan)
        q, g, p = gen.step(q, g, p)
        plan.append(q)
    return plan
