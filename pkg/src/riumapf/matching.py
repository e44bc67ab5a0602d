"""Target assignment: min-cost bijections between agents and targets."""
from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InfeasibleAssignment


def hungarian_assignment(cost) -> tuple:
    """Min-total-cost bijection; ``result[i]`` is the column given to row ``i``."""
    cost = np.asarray(cost, dtype=float)
    if cost.ndim != 2 or cost.shape[0] != cost.shape[1]:
        raise ValueError(f"cost matrix must be square, got shape {cost.shape}")
    if cost.size == 0:
        return ()
    rows, cols = linear_sum_assignment(cost)
    out = [0] * len(rows)
    for r, c in zip(rows, cols):
        out[r] = int(c)
    return tuple(out)


def reassign_with_bans(distances, banned: Sequence) -> tuple:
    """Min-cost bijection that never gives row ``i`` a column in ``banned[i]``.

    Raises:
        InfeasibleAssignment: when every perfect matching uses a banned pair.
    """
    cost = np.array(distances, dtype=float)
    if cost.ndim != 2 or cost.shape[0] != cost.shape[1]:
        raise ValueError(f"cost matrix must be square, got shape {cost.shape}")
    for i, cols in enumerate(banned):
        for c in cols:
            cost[i, c] = np.inf
    try:
        result = hungarian_assignment(cost)
    except ValueError as exc:
        raise InfeasibleAssignment(str(exc)) from None
    if any(result[i] in banned[i] for i in range(len(banned))):
        raise InfeasibleAssignment("banned pair is unavoidable")
    return result


def assignment_cost(cost, assignment: Sequence[int]) -> float:
    cost = np.asarray(cost)
    return float(sum(cost[i, j] for i, j in enumerate(assignment)))
