"""Exact weight LPs for local configurations.

The weights r on red singletons/pairs and b on blue singletons/pairs obey

    r(u)  + b(v)  <= 1   u in R1, v in B1
    r(vw) + b(v)  <= 1   red pair and blue singleton sharing v
    r(u)  + b(uw) <= 1   red singleton and blue pair sharing u
    r(vw) + b(uw) <= 1   red pair and blue pair sharing w
    b(i_l) <= b(j_l) <= b(k_l),   all weights in [0, 1].

For beta >= 1 we maximise beta^2 q1 + beta q2, i.e. w q1 + q2 with w = beta.
As w varies the optimum moves along finitely many Pareto vertices (q1, q2);
:func:`frontier` finds them all on a w-interval, which makes the supremum
over sigma exact up to the final cubic maximisation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..ratlp import InfeasibleLP, solve_lp
from .config import LocalConfig, block, pos
from .fact import SIGMA_MAX, SIGMA_MIN, max_on_range

# rational upper bound for beta_max = 1/(1 - 2^(-1/3)) - 3 ~ 1.8473
W_HI = Fraction(37, 20)
W_LO = Fraction(1)


@dataclass(frozen=True)
class WeightProblem:
    red1: tuple[int, ...]
    red2: tuple[tuple[int, int], ...]
    blue1: tuple[int, ...]
    blue2: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, cfg: LocalConfig) -> "WeightProblem":
        return cls(
            tuple(cfg.red_singletons),
            tuple(sorted(cfg.R2)),
            tuple(cfg.blue_singletons),
            tuple(sorted(cfg.B2)),
        )

    @property
    def nvars(self) -> int:
        return len(self.red1) + len(self.red2) + len(self.blue1) + len(self.blue2)

    def constraint_rows(self) -> list[tuple[int, ...]]:
        """Sparse rows: (x, y) means x_x + x_y <= 1, (x, y, -1) means x_x - x_y <= 0."""
        nr1, nr2, nb1 = len(self.red1), len(self.red2), len(self.blue1)
        r1 = {u: n for n, u in enumerate(self.red1)}
        r2 = {e: nr1 + n for n, e in enumerate(self.red2)}
        b1 = {v: nr1 + nr2 + n for n, v in enumerate(self.blue1)}
        b2 = {e: nr1 + nr2 + nb1 + n for n, e in enumerate(self.blue2)}
        rows: list[tuple[int, ...]] = []
        for x in r1.values():
            for y in b1.values():
                rows.append((x, y))
        for e, x in r2.items():
            for v in e:
                if v in b1:
                    rows.append((x, b1[v]))
        for e, y in b2.items():
            for u in e:
                if u in r1:
                    rows.append((r1[u], y))
        for er, x in r2.items():
            for eb, y in b2.items():
                if len(set(er) & set(eb)) == 1:
                    rows.append((x, y))
        # monotone chain on the blue singletons present in each triple
        for l in range(3):
            chain = sorted((v for v in b1 if block(v) == l), key=pos)
            for a, c in zip(chain, chain[1:]):
                rows.append((b1[a], b1[c], -1))
        return rows

    def single_flags(self) -> list[bool]:
        nr1, nr2, nb1, nb2 = len(self.red1), len(self.red2), len(self.blue1), len(self.blue2)
        return [True] * nr1 + [False] * nr2 + [True] * nb1 + [False] * nb2


@dataclass(frozen=True)
class WeightAssignment:
    r: dict
    b: dict

    @property
    def q1(self) -> Fraction:
        return sum((v for e, v in self.r.items() if len(e) == 1), Fraction(0)) + sum(
            (v for e, v in self.b.items() if len(e) == 1), Fraction(0)
        )

    @property
    def q2(self) -> Fraction:
        return sum((v for e, v in self.r.items() if len(e) == 2), Fraction(0)) + sum(
            (v for e, v in self.b.items() if len(e) == 2), Fraction(0)
        )

    def feasible(self) -> bool:
        prob = WeightProblem(
            tuple(sorted(e[0] for e in self.r if len(e) == 1)),
            tuple(sorted(e for e in self.r if len(e) == 2)),
            tuple(sorted(e[0] for e in self.b if len(e) == 1)),
            tuple(sorted(e for e in self.b if len(e) == 2)),
        )
        x = _vector(prob, self)
        if any(not 0 <= v <= 1 for v in x):
            return False
        for row in prob.constraint_rows():
            if len(row) == 2 and x[row[0]] + x[row[1]] > 1:
                return False
            if len(row) == 3 and x[row[0]] > x[row[1]]:
                return False
        return True


def _vector(prob: WeightProblem, wa: WeightAssignment) -> list[Fraction]:
    return (
        [wa.r[(u,)] for u in prob.red1]
        + [wa.r[e] for e in prob.red2]
        + [wa.b[(v,)] for v in prob.blue1]
        + [wa.b[e] for e in prob.blue2]
    )


def _assignment(prob: WeightProblem, x: Sequence[Fraction]) -> WeightAssignment:
    it = iter(x)
    r = {(u,): next(it) for u in prob.red1}
    r.update({e: next(it) for e in prob.red2})
    b = {(v,): next(it) for v in prob.blue1}
    b.update({e: next(it) for e in prob.blue2})
    return WeightAssignment(r, b)


@dataclass(frozen=True)
class WeightOptimum:
    q1: Fraction
    q2: Fraction
    assignment: WeightAssignment


def solve_weights(prob: WeightProblem, c1, c2, extra: Sequence[tuple[list, Fraction]] = (),
                  coef: Sequence | None = None) -> WeightOptimum:
    """Maximise c1*q1 + c2*q2 (or a custom linear objective ``coef``).

    ``extra`` holds additional dense rows (a, rhs) meaning a.x <= rhs.
    """
    n = prob.nvars
    flags = prob.single_flags()
    if coef is None:
        coef = [Fraction(c1) if f else Fraction(c2) for f in flags]
    A: list[list[int]] = []
    rhs: list = []
    for row in prob.constraint_rows():
        a = [0] * n
        if len(row) == 2:
            a[row[0]] = 1
            a[row[1]] = 1
            rhs.append(1)
        else:
            a[row[0]] = 1
            a[row[1]] = -1
            rhs.append(0)
        A.append(a)
    for j in range(n):
        a = [0] * n
        a[j] = 1
        A.append(a)
        rhs.append(1)
    for a, bnd in extra:
        A.append(list(a))
        rhs.append(bnd)
    sol = solve_lp(coef, A, rhs)
    q1 = sum((x for x, f in zip(sol.x, flags) if f), Fraction(0))
    q2 = sum((x for x, f in zip(sol.x, flags) if not f), Fraction(0))
    return WeightOptimum(q1, q2, _assignment(prob, sol.x))


def frontier(prob: WeightProblem, lo=W_LO, hi=W_HI, extra=()) -> list[WeightOptimum]:
    """All Pareto vertices (q1, q2) optimal for some w q1 + q2 with w in [lo, hi].

    Returns an empty list when ``extra`` makes the problem infeasible.
    """
    try:
        a = solve_weights(prob, lo, 1, extra)
    except InfeasibleLP:
        return []
    b = solve_weights(prob, hi, 1, extra)
    found = {(a.q1, a.q2): a, (b.q1, b.q2): b}

    def split(x: WeightOptimum, y: WeightOptimum) -> None:
        if (x.q1, x.q2) == (y.q1, y.q2) or y.q1 <= x.q1:
            return
        w = (x.q2 - y.q2) / (y.q1 - x.q1)
        z = solve_weights(prob, w, 1, extra)
        if w * z.q1 + z.q2 > w * x.q1 + x.q2:
            found.setdefault((z.q1, z.q2), z)
            split(x, z)
            split(z, y)

    split(a, b)
    return [found[k] for k in sorted(found)]


@lru_cache(maxsize=None)
def frontier_points(prob: WeightProblem) -> tuple[tuple[Fraction, Fraction], ...]:
    return tuple((o.q1, o.q2) for o in frontier(prob))


def max_weight_lp(cfg: LocalConfig, beta) -> WeightOptimum:
    """Exact maximiser of beta^2 q1 + beta q2 over the weight polytope."""
    beta = Fraction(beta)
    if beta < 1:
        raise ValueError("beta must be at least 1")
    return solve_weights(WeightProblem.of(cfg), beta * beta, beta)


def config_value(cfg: LocalConfig, sigma):
    """sigma^3 (beta^3 + beta^2 q1* + beta q2* + |R3 u B3|), exact for rational sigma."""
    exact = isinstance(sigma, (int, Fraction))
    s = Fraction(sigma)
    if s <= 0:
        raise ValueError("sigma must be positive")
    beta = 1 / s - 3
    opt = max_weight_lp(cfg, beta)
    val = s**3 * (beta**3 + beta**2 * opt.q1 + beta * opt.q2 + cfg.t)
    return val if exact else float(val)


@dataclass(frozen=True)
class SupResult:
    value: float
    sigma: float
    q1: Fraction
    q2: Fraction
    t: int


def sup_over_points(points, t: int) -> SupResult:
    """Max over sigma in range of the upper envelope of the cubics f_{q1,q2,t}."""
    best = None
    for q1, q2 in points:
        v, s = max_on_range(q1, q2, t)
        if best is None or v > best.value:
            best = SupResult(v, s, q1, q2, t)
    return best


def config_sup(cfg: LocalConfig) -> SupResult:
    return sup_over_points(frontier_points(WeightProblem.of(cfg)), cfg.t)


def at_quarter(points, t: int) -> Fraction:
    """Exact value at sigma = 1/4 (beta = 1)."""
    return max((1 + q1 + q2 + t) / Fraction(64) for q1, q2 in points)


def pair_problem(cfg: LocalConfig, i: int, j: int) -> WeightProblem:
    """Singletons of M_i and the crossing pairs between M_i and M_j."""
    between = lambda e: {block(e[0]), block(e[1])} == {i, j}
    return WeightProblem(
        tuple(u for u in cfg.red_singletons if block(u) == i),
        tuple(sorted(e for e in cfg.R2 if between(e))),
        tuple(v for v in cfg.blue_singletons if block(v) == i),
        tuple(sorted(e for e in cfg.B2 if between(e))),
    )


@dataclass(frozen=True)
class PairWeightReport:
    q_max: Fraction
    main_ok: bool
    no_red_at_k: bool
    refined_k_max: Fraction | None
    refined_k_ok: bool
    few_blue: bool
    refined_single_max: Fraction | None
    refined_single_ok: bool
    weighted_q: Fraction | None = None

    @property
    def passed(self) -> bool:
        return self.main_ok and self.refined_k_ok and self.refined_single_ok


def check_pair_weight(cfg: LocalConfig, i: int, j: int, beta=None) -> PairWeightReport:
    """LP checks of q(M_i,M_j) <= 6 and its two refinements for one pair of triples.

    Refinement one: no red pair at k_i or k_j gives q <= 5 + b(k_i k_j).
    Refinement two: at most one blue pair gives q <= 7 - q1(M_i, M_j).
    """
    prob = pair_problem(cfg, i, j)
    q = solve_weights(prob, 1, 1)
    qmax = q.q1 + q.q2
    ki, kj = 3 * i + 2, 3 * j + 2
    no_red_k = not any(set(e) & {ki, kj} for e in prob.red2)
    rk_max = None
    rk_ok = True
    if no_red_k:
        kk = tuple(sorted((ki, kj)))
        coef = [Fraction(1)] * prob.nvars
        if kk in prob.blue2:
            coef[len(prob.red1) + len(prob.red2) + len(prob.blue1) + prob.blue2.index(kk)] = Fraction(0)
        opt = solve_weights(prob, 0, 0, coef=coef)
        rk_max = sum((opt.assignment.r | opt.assignment.b).values(), Fraction(0))
        if kk in prob.blue2:
            rk_max -= opt.assignment.b[kk]
        rk_ok = rk_max <= 5
    few_blue = len(prob.blue2) <= 1
    rs_max = None
    rs_ok = True
    if few_blue:
        opt = solve_weights(prob, 2, 1)
        rs_max = 2 * opt.q1 + opt.q2
        rs_ok = rs_max <= 7
    wq = None
    if beta is not None:
        beta = Fraction(beta)
        opt = solve_weights(prob, beta * beta, beta)
        wq = opt.q1 + opt.q2
    return PairWeightReport(qmax, qmax <= 6, no_red_k, rk_max, rk_ok, few_blue, rs_max, rs_ok, wq)
