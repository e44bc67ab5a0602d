"""Time-expanded integer feasibility model for the bounded-horizon problem.

Variables: ``x_v{v}_t{t}`` (agent count on v at step t) and
``f_u{u}_v{v}_t{t}`` (agents moving u -> v between t and t+1, v in N[u]).
Rows fix step 0 to S and step tau to T, balance out- and in-flow at every
vertex, and forbid two occupied vertices within distance r.

The model is written as LP text for any MILP solver. A small exhaustive
checker (:func:`naive_feasible`) decides feasibility without one.
"""
from __future__ import annotations

import io
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import PreconditionViolated
from .graph import Graph, multi_source_distances
from .instance import Instance
from .kernel import GalacticGraph

EQ, LE = "=", "<="


@dataclass(frozen=True)
class Row:
    name: str
    terms: tuple        # ((var index, coefficient), ...)
    sense: str
    rhs: int


@dataclass
class IlpModel:
    names: list = field(default_factory=list)
    lower: list = field(default_factory=list)
    upper: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    index: dict = field(default_factory=dict)

    def add_var(self, name: str, lo: int, hi: int) -> int:
        if name in self.index:
            raise ValueError(f"duplicate variable {name}")
        self.index[name] = len(self.names)
        self.names.append(name)
        self.lower.append(lo)
        self.upper.append(hi)
        return self.index[name]

    def add_row(self, name: str, terms, sense: str, rhs: int) -> None:
        terms = tuple(terms)
        for k, _ in terms:
            if not 0 <= k < len(self.names):
                raise ValueError(f"row {name} references an undeclared variable")
        self.rows.append(Row(name, terms, sense, rhs))

    @property
    def variable_count(self) -> int:
        return len(self.names)

    def satisfied_by(self, values: Sequence[int]) -> bool:
        if any(not lo <= x <= hi for x, lo, hi in zip(values, self.lower, self.upper)):
            return False
        for row in self.rows:
            lhs = sum(c * values[k] for k, c in row.terms)
            if (row.sense == EQ and lhs != row.rhs) or (row.sense == LE and lhs > row.rhs):
                return False
        return True


def x_name(v: int, t: int) -> str:
    return f"x_v{v}_t{t}"


def f_name(u: int, v: int, t: int) -> str:
    return f"f_u{u}_v{v}_t{t}"


def _build(graph: Graph, S, T, tau: int, x_cap, f_cap, close_pairs) -> IlpModel:
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    V = graph.vertex_count
    m = IlpModel()
    for t in range(tau + 1):
        for v in range(V):
            m.add_var(x_name(v, t), 0, x_cap(v))
        if t < tau:
            for u in range(V):
                for v in graph.closed_neighbors(u):
                    m.add_var(f_name(u, v, t), 0, f_cap(u, v))
    x = lambda v, t: m.index[x_name(v, t)]
    f = lambda u, v, t: m.index[f_name(u, v, t)]
    S, T = set(S), set(T)
    for v in range(V):
        m.add_row(f"fix_start_v{v}", [(x(v, 0), 1)], EQ, int(v in S))
    for v in range(V):
        m.add_row(f"fix_goal_v{v}", [(x(v, tau), 1)], EQ, int(v in T))
    for t in range(tau):
        for u in range(V):
            terms = [(f(u, v, t), 1) for v in graph.closed_neighbors(u)] + [(x(u, t), -1)]
            m.add_row(f"out_v{u}_t{t}", terms, EQ, 0)
    for t in range(1, tau + 1):
        for u in range(V):
            terms = [(f(v, u, t - 1), 1) for v in graph.closed_neighbors(u)] + [(x(u, t), -1)]
            m.add_row(f"in_v{u}_t{t}", terms, EQ, 0)
    for t in range(tau + 1):
        for u, v in close_pairs:
            m.add_row(f"sep_u{u}_v{v}_t{t}", [(x(u, t), 1), (x(v, t), 1)], LE, 1)
    return m


def _close_pairs(graph: Graph, r: int, planet: Optional[Sequence[bool]] = None) -> list:
    pairs = []
    for u in range(graph.vertex_count):
        if planet is not None and not planet[u]:
            continue
        dist = multi_source_distances(graph, [u], allowed=planet)
        pairs += [(u, v) for v in range(u + 1, graph.vertex_count) if dist[v] <= r]
    return pairs


def build_bounded_model(instance: Instance, tau: int) -> IlpModel:
    graph = instance.graph
    return _build(graph, instance.start, instance.target, tau,
                  lambda v: 1, lambda u, v: 1, _close_pairs(graph, instance.radius))


def build_galactic_model(galactic: GalacticGraph, S: Sequence[int], T: Sequence[int],
                         n: int, r: int, tau: int) -> IlpModel:
    """Same rows with black holes holding up to ``n`` agents and spacing measured on planets.

    Raises:
        PreconditionViolated: a black hole lies in N[S u T].
    """
    graph, black = galactic.graph, galactic.is_black_hole
    for s in (*S, *T):
        for v in graph.closed_neighbors(s):
            if black[v]:
                raise PreconditionViolated(f"black hole {v} lies in N[S u T]")
    return _build(graph, S, T, tau,
                  lambda v: n if black[v] else 1,
                  lambda u, v: n if black[u] and black[v] else 1,
                  _close_pairs(graph, r, galactic.planet_mask()))


def _format_terms(model: IlpModel, terms) -> str:
    parts = []
    for k, c in terms:
        name = model.names[k]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = name if mag == 1 else f"{mag} {name}"
        parts.append(f"{sign} {body}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def export_lp(model: IlpModel, sink) -> None:
    """Write ``model`` as LP text to the binary stream ``sink``."""
    out = io.StringIO()
    out.write("Minimize\n obj: 0\nSubject To\n")
    for row in model.rows:
        out.write(f" {row.name}: {_format_terms(model, row.terms)} {row.sense} {row.rhs}\n")
    if model.names:
        out.write("Bounds\n")
        for name, lo, hi in zip(model.names, model.lower, model.upper):
            out.write(f" {lo} <= {name} <= {hi}\n")
        out.write("Generals\n")
        for name in model.names:
            out.write(f" {name}\n")
    out.write("End\n")
    sink.write(out.getvalue().encode("ascii"))


def lp_text(model: IlpModel) -> str:
    buf = io.BytesIO()
    export_lp(model, buf)
    return buf.getvalue().decode("ascii")


def naive_feasible(model: IlpModel) -> Optional[list]:
    """Exhaustive integer search over the declared variables; a satisfying vector or None.

    Variables are assigned in declaration order. Each row keeps the running
    sum of its assigned terms and the min/max of the rest, which prunes a
    branch as soon as some row can no longer hold. Dead ends are memoised on
    the running sums of the rows that straddle the current position, since
    those sums are all the remaining search depends on.
    """
    nvar = len(model.names)
    rows = model.rows
    last = [-1] * len(rows)
    first = [nvar] * len(rows)
    by_var = [[] for _ in range(nvar)]
    for ri, row in enumerate(rows):
        for k, c in row.terms:
            by_var[k].append((ri, c))
            last[ri] = max(last[ri], k)
            first[ri] = min(first[ri], k)
    for ri, row in enumerate(rows):
        if not row.terms:
            if (row.sense == EQ and row.rhs != 0) or (row.sense == LE and row.rhs < 0):
                return None
    # rows that straddle the boundary just before variable k
    open_at = [[] for _ in range(nvar + 1)]
    for ri in range(len(rows)):
        if rows[ri].terms:
            for k in range(first[ri] + 1, last[ri] + 1):
                open_at[k].append(ri)
    partial = [0] * len(rows)
    rem_lo = [0] * len(rows)
    rem_hi = [0] * len(rows)
    for ri, row in enumerate(rows):
        for k, c in row.terms:
            lo, hi = c * model.lower[k], c * model.upper[k]
            rem_lo[ri] += min(lo, hi)
            rem_hi[ri] += max(lo, hi)
    values = [0] * nvar
    dead = set()
    if sys.getrecursionlimit() < nvar + 1000:
        sys.setrecursionlimit(nvar + 1000)

    def ok(ri: int) -> bool:
        row = rows[ri]
        lo = partial[ri] + rem_lo[ri]
        if row.sense == EQ:
            return lo <= row.rhs <= partial[ri] + rem_hi[ri]
        return lo <= row.rhs

    def rec(k: int) -> bool:
        if k == nvar:
            return True
        key = (k, tuple(partial[ri] for ri in open_at[k]))
        if key in dead:
            return False
        touched = by_var[k]
        lo_k, hi_k = model.lower[k], model.upper[k]
        for ri, c in touched:
            a, b = c * lo_k, c * hi_k
            rem_lo[ri] -= min(a, b)
            rem_hi[ri] -= max(a, b)
        found = False
        for val in range(lo_k, hi_k + 1):
            for ri, c in touched:
                partial[ri] += c * val
            if all(ok(ri) for ri, _ in touched) and rec(k + 1):
                values[k] = val
                found = True
            for ri, c in touched:
                partial[ri] -= c * val
            if found:
                break
        for ri, c in touched:
            a, b = c * lo_k, c * hi_k
            rem_lo[ri] += min(a, b)
            rem_hi[ri] += max(a, b)
        if not found:
            dead.add(key)
        return found

    if not all(ok(ri) for ri in range(len(rows))):
        return None
    return list(values) if rec(0) else None


def plan_to_assignment(model: IlpModel, plan: Sequence[Sequence[int]], tau: int) -> list:
    """Variable vector encoding ``plan`` padded with waits up to ``tau`` steps."""
    if len(plan) - 1 > tau:
        raise ValueError("plan is longer than the horizon")
    steps = [tuple(q) for q in plan] + [tuple(plan[-1])] * (tau + 1 - len(plan))
    values = [0] * len(model.names)
    for t, q in enumerate(steps):
        for v in q:
            values[model.index[x_name(v, t)]] += 1
        if t < tau:
            for a, b in zip(q, steps[t + 1]):
                values[model.index[f_name(a, b, t)]] += 1
    return values
