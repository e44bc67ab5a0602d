import itertools

import pytest
from hypothesis import given, strategies as st

from riumapf.errors import InfeasibleAssignment
from riumapf.matching import assignment_cost, hungarian_assignment, reassign_with_bans


def brute_min(cost):
    n = len(cost)
    return min(sum(cost[i][p[i]] for i in range(n)) for p in itertools.permutations(range(n)))


def test_examples():
    assert hungarian_assignment([[0, 1, 1], [1, 0, 1], [1, 1, 0]]) == (0, 1, 2)
    assert hungarian_assignment([[7]]) == (0,)
    a = hungarian_assignment([[4, 1], [2, 0]])
    assert a == (1, 0) and assignment_cost([[4, 1], [2, 0]], a) == 3


def test_bans():
    cost = [[0, 5], [5, 0]]
    assert reassign_with_bans(cost, [set(), set()]) == hungarian_assignment(cost)
    assert reassign_with_bans(cost, [{0}, set()]) == (1, 0)
    with pytest.raises(InfeasibleAssignment):
        reassign_with_bans(cost, [{0, 1}, set()])


def test_non_square():
    with pytest.raises(ValueError):
        hungarian_assignment([[1, 2]])


matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 20), min_size=n, max_size=n), min_size=n, max_size=n))


@given(matrices)
def test_hungarian_is_optimal_bijection(cost):
    a = hungarian_assignment(cost)
    assert sorted(a) == list(range(len(cost)))
    assert assignment_cost(cost, a) == brute_min(cost)


@given(matrices, st.data())
def test_bans_never_returned(cost, data):
    n = len(cost)
    banned = [set(data.draw(st.lists(st.integers(0, n - 1), max_size=n - 1))) for _ in range(n)]
    allowed = [p for p in itertools.permutations(range(n)) if all(p[i] not in banned[i] for i in range(n))]
    if not allowed:
        with pytest.raises(InfeasibleAssignment):
            reassign_with_bans(cost, banned)
        return
    a = reassign_with_bans(cost, banned)
    assert all(a[i] not in banned[i] for i in range(n))
    assert assignment_cost(cost, a) == min(sum(cost[i][p[i]] for i in range(n)) for p in allowed)
