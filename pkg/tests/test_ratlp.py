from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tightham.ratlp import InfeasibleLP, UnboundedLP, check_feasible, solve_lp

F = Fraction


def test_textbook():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
    sol = solve_lp([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert sol.value == 36 and sol.x == (2, 6)


def test_fractional_vertex():
    sol = solve_lp([1, 1], [[2, 1], [1, 2]], [1, 1])
    assert sol.value == F(2, 3) and sol.x == (F(1, 3), F(1, 3))


def test_negative_rhs_phase_one():
    # x + y >= 1 written as -x - y <= -1
    sol = solve_lp([-1, -2], [[-1, -1], [1, 0], [0, 1]], [-1, 1, 1])
    assert sol.value == -1 and sol.x == (1, 0)


def test_infeasible():
    with pytest.raises(InfeasibleLP):
        solve_lp([1], [[1], [-1]], [1, -2])


def test_unbounded():
    with pytest.raises(UnboundedLP):
        solve_lp([1, 0], [[0, 1]], [1])


def test_degenerate_cycling_example():
    # Beale's example cycles under the largest-coefficient rule
    c = [F(3, 4), -150, F(1, 50), -6]
    A = [[F(1, 4), -60, F(-1, 25), 9], [F(1, 2), -90, F(-1, 50), 3], [0, 0, 1, 0]]
    sol = solve_lp(c, A, [0, 0, 1])
    assert sol.value == F(1, 20)


@given(
    st.integers(1, 3),
    st.integers(1, 4),
    st.data(),
)
def test_matches_vertex_enumeration(n, m, data):
    coef = st.integers(-3, 3)
    c = [data.draw(coef) for _ in range(n)]
    A = [[data.draw(st.integers(0, 3)) for _ in range(n)] for _ in range(m)]
    b = [data.draw(st.integers(0, 4)) for _ in range(m)]
    # box the region so it is bounded
    A += [[int(i == j) for j in range(n)] for i in range(n)]
    b += [5] * n
    sol = solve_lp(c, A, b)
    assert check_feasible(A, b, sol.x)
    assert sol.value == sum(F(ci) * xi for ci, xi in zip(c, sol.x))
    # brute force over a fine rational grid never beats the optimum
    grid = [F(k, 2) for k in range(11)]
    for x in product(grid, repeat=n):
        if check_feasible(A, b, x):
            assert sum(F(ci) * xi for ci, xi in zip(c, x)) <= sol.value


def test_weak_duality_bound():
    rng = np.random.default_rng(7)
    for _ in range(25):
        n, m = 4, 5
        A = rng.integers(0, 4, size=(m, n)).tolist()
        b = rng.integers(1, 6, size=m).tolist()
        c = rng.integers(0, 5, size=n).tolist()
        A += np.eye(n, dtype=int).tolist()
        b += [3] * n
        sol = solve_lp(c, A, b)
        # weak duality with the float optimum of a dual-feasible guess
        y = np.zeros(len(b))
        y[m:] = c  # dual of box rows covers the objective
        assert float(sol.value) <= float(np.dot(y, b)) + 1e-9
