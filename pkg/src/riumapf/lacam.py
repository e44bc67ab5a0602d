"""IU-LaCAM: complete search over configurations with IU-PIBT as generator.

High-level nodes are configurations. Each node lazily expands a tree of
low-level constraints, each pinning a prefix of agents (in the node's
priority order) to chosen vertices. Popping a constraint calls the
constrained generator once. A livelock check reassigns targets when the
search keeps producing a configuration it has just seen with the same
assignment.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import InfeasibleAssignment, NoPlan, SearchTimeout
from .instance import Instance
from .matching import reassign_with_bans
from .pibt import IUPIBT, Priorities, agent_order, initial_assignment, initial_priorities, update_priorities


@dataclass(eq=False)
class SearchNode:
    config: tuple
    assignment: tuple          # target vertex per agent
    priorities: Priorities     # priorities handed to the generator
    order: tuple               # agent order used for constraint synthesis
    banned: tuple              # per-agent frozenset of banned target vertices
    parent: Optional["SearchNode"]
    constraints: deque = field(default_factory=lambda: deque([()]))


@dataclass
class SearchStats:
    nodes: int = 0
    generations: int = 0
    rejected: int = 0
    livelocks: int = 0
    reinsertions: int = 0


def _make_node(config, g, p, banned, parent) -> SearchNode:
    order = tuple(agent_order(update_priorities(p, config, g), g))
    return SearchNode(tuple(config), tuple(g), p, order, banned, parent)


def synthesize_constraints(node: SearchNode, constraint: tuple, gen: IUPIBT) -> None:
    """Append the children of ``constraint``: next agent in order pinned to each of N[q]."""
    depth = len(constraint)
    if depth >= len(node.config):
        return
    i = node.order[depth]
    dist = gen.dist[node.assignment[i]]
    for v in sorted(gen.graph.closed_neighbors(node.config[i]), key=dist.__getitem__):
        node.constraints.append(constraint + ((i, v),))


def constrained_generate(gen: IUPIBT, node: SearchNode, constraint: tuple):
    """Run the generator on ``node`` under ``constraint``; None when rejected."""
    return gen.generate(node.config, node.assignment, node.priorities, constraint)


def detect_livelock_and_reassign(gen: IUPIBT, instance: Instance, parent: SearchNode,
                                 config: tuple, g: tuple, p: Priorities,
                                 depth: int) -> Optional[SearchNode]:
    """Look ``depth`` ancestors up from ``parent`` for an identical labelled state.

    On a match, agents that did not move and are off target get their current
    target banned and the assignment is recomputed. Returns the node to
    reinsert, or None.
    """
    anc = parent
    for _ in range(depth):
        if anc is None:
            return None
        if anc.config == config and anc.assignment == g:
            stuck = [i for i, v in enumerate(config) if v == anc.config[i] and v != g[i]]
            if not stuck:
                return None
            column = {t: j for j, t in enumerate(instance.target)}
            banned = [set(b) for b in anc.banned]
            for i in stuck:
                banned[i].add(g[i])
            if sum(map(len, banned)) == sum(map(len, anc.banned)):
                return None     # nothing new learned
            cost = [[gen.dist[t][v] for t in instance.target] for v in config]
            try:
                cols = reassign_with_bans(cost, [{column[t] for t in b} for b in banned])
            except InfeasibleAssignment:
                return None
            g_new = tuple(instance.target[c] for c in cols)
            return _make_node(config, g_new, p, tuple(frozenset(b) for b in banned), anc.parent)
        anc = anc.parent
    return None


def _backtrack(node: SearchNode) -> list:
    plan = []
    while node is not None:
        plan.append(node.config)
        node = node.parent
    plan.reverse()
    return plan


def iu_lacam_solve(instance: Instance, timeout: float = 60.0, livelock_depth: int = 2,
                   stats: Optional[SearchStats] = None) -> list:
    """Return a valid plan (list of configurations) from S to T.

    Raises:
        NoPlan: the search space was exhausted, so no plan exists.
        SearchTimeout: ``timeout`` seconds elapsed first.
    """
    deadline = time.perf_counter() + timeout
    stats = stats if stats is not None else SearchStats()
    n = instance.n
    gen = IUPIBT(instance.graph, instance.target, instance.radius)
    goal = tuple(sorted(instance.target))
    root = _make_node(instance.start, initial_assignment(instance, gen.dist),
                      initial_priorities(instance.target), tuple(frozenset() for _ in range(n)), None)
    stack = [root]
    explored = {tuple(sorted(root.config)): root}
    reinserted = set()
    stats.nodes = 1
    no_bans = root.banned
    while stack:
        if time.perf_counter() > deadline:
            raise SearchTimeout(f"no plan within {timeout:g}s")
        node = stack[-1]
        if tuple(sorted(node.config)) == goal:
            return _backtrack(node)
        if not node.constraints:
            stack.pop()
            continue
        constraint = node.constraints.popleft()
        synthesize_constraints(node, constraint, gen)
        stats.generations += 1
        result = constrained_generate(gen, node, constraint)
        if result is None:
            stats.rejected += 1
            continue
        q, g, p = result
        key = tuple(sorted(q))
        if key in explored:
            again = detect_livelock_and_reassign(gen, instance, node, q, g, p, livelock_depth)
            if again is not None:
                stats.livelocks += 1
                # guards termination: each (config, assignment, bans) re-enters once
                tag = (again.config, again.assignment, again.banned)
                if tag not in reinserted:
                    reinserted.add(tag)
                    stats.reinsertions += 1
                    stack.append(again)
            continue
        child = _make_node(q, g, p, no_bans, node)
        stack.append(child)
        explored[key] = child
        stats.nodes += 1
    raise NoPlan("search space exhausted")
