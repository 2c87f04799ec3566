"""The cubic f_{s,p,t}(sigma) = sigma^3 (beta^3 + s beta^2 + p beta + t), beta = 1/sigma - 3.

Substituting beta turns f into a cubic polynomial in sigma,

    f = (1-3sig)^3 + s*sig*(1-3sig)^2 + p*sig^2*(1-3sig) + t*sig^3,

so its maximum over an interval is found exactly from the endpoints and the
real roots of the derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

SIGMA_MIN = 1.0 - 2.0 ** (-1.0 / 3.0)
SIGMA_MAX = Fraction(1, 4)
BETA_MAX = 1.0 / SIGMA_MIN - 3.0
TARGET = Fraction(5, 8)

FACT_TRIPLES: tuple[tuple[int, int, int], ...] = (
    (6, 10, 23),
    (6, 11, 22),
    (6, 12, 21),
    (7, 10, 21),
    (8, 10, 19),
    (9, 1, 27),
    (9, 6, 21),
    (9, 6, 23),
    (9, 7, 21),
    (9, 8, 19),
    (9, 9, 17),
)


def f_spt(sigma, s, p, t):
    """Exact when every argument is rational, float otherwise."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    beta = 1 / sigma - 3
    return sigma**3 * (beta**3 + s * beta**2 + p * beta + t)


def cubic_coefficients(s, p, t):
    """(c0, c1, c2, c3) with f(sigma) = c0 + c1 sigma + c2 sigma^2 + c3 sigma^3."""
    return (1, s - 9, 27 - 6 * s + p, -27 + 9 * s - 3 * p + t)


def _eval(coef, x):
    c0, c1, c2, c3 = coef
    return c0 + x * (c1 + x * (c2 + x * c3))


def max_on_range(s, p, t, lo: float = SIGMA_MIN, hi: float = float(SIGMA_MAX)) -> tuple[float, float]:
    """(max, argmax) of f_{s,p,t} over [lo, hi] via the critical points."""
    coef = tuple(float(c) for c in cubic_coefficients(s, p, t))
    cands = [lo, hi]
    a, b, c = 3 * coef[3], 2 * coef[2], coef[1]
    if abs(a) > 1e-300:
        disc = b * b - 4 * a * c
        if disc >= 0:
            r = math.sqrt(disc)
            cands += [(-b - r) / (2 * a), (-b + r) / (2 * a)]
    elif abs(b) > 1e-300:
        cands.append(-c / b)
    best = max((x for x in cands if lo <= x <= hi), key=lambda x: (_eval(coef, x), -x))
    return _eval(coef, best), best


def lipschitz_bound(s, p, t, lo: float = SIGMA_MIN, hi: float = float(SIGMA_MAX)) -> float:
    """Crude bound on |f'| over [lo, hi] from the absolute derivative coefficients."""
    _, c1, c2, c3 = (float(c) for c in cubic_coefficients(s, p, t))
    return abs(c1) + 2 * abs(c2) * hi + 3 * abs(c3) * hi * hi


def grid_max(s, p, t, step: float = 1e-3, lo: float = SIGMA_MIN, hi: float = float(SIGMA_MAX)) -> tuple[float, float]:
    """Grid search followed by golden-section refinement around the best grid point."""
    coef = tuple(float(c) for c in cubic_coefficients(s, p, t))
    npts = max(2, int(math.ceil((hi - lo) / step)) + 1)
    xs = [lo + (hi - lo) * i / (npts - 1) for i in range(npts)]
    vals = [_eval(coef, x) for x in xs]
    i = max(range(npts), key=lambda j: vals[j])
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, npts - 1)]
    g = (math.sqrt(5) - 1) / 2
    for _ in range(80):
        c, d = b - g * (b - a), a + g * (b - a)
        if _eval(coef, c) >= _eval(coef, d):
            b = d
        else:
            a = c
    x = (a + b) / 2
    best = max([(vals[i], xs[i]), (_eval(coef, x), x)])
    return best


@dataclass(frozen=True)
class FactLine:
    triple: tuple[int, int, int]
    max_value: float
    argmax: float
    at_quarter: Fraction
    grid_value: float
    lipschitz: float
    passed: bool


@dataclass(frozen=True)
class FactReport:
    lines: tuple[FactLine, ...]
    tol: float

    @property
    def passed(self) -> bool:
        return all(line.passed for line in self.lines)

    def failures(self) -> list[tuple[int, int, int]]:
        return [line.triple for line in self.lines if not line.passed]


def check_fact(
    triples: Iterable[tuple[int, int, int]] = FACT_TRIPLES, tol: float = 1e-9, grid_step: float = 1e-3
) -> FactReport:
    """Maximise each f_{s,p,t} over the sigma range and compare with 5/8 + tol."""
    lines = []
    for s, p, t in triples:
        mx, arg = max_on_range(s, p, t)
        gv, _ = grid_max(s, p, t, grid_step)
        quarter = f_spt(SIGMA_MAX, s, p, t)
        top = max(mx, gv)
        lines.append(FactLine((s, p, t), mx, arg, quarter, gv, lipschitz_bound(s, p, t),
                              top <= float(TARGET) + tol))
    return FactReport(tuple(lines), tol)


@dataclass(frozen=True)
class MonotonicityReport:
    checked: int
    violations: tuple[tuple, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def rational_sigma_grid(points: int = 1000) -> list[Fraction]:
    lo = Fraction(SIGMA_MIN)
    return [lo + (SIGMA_MAX - lo) * Fraction(i, points - 1) for i in range(points)]


def _monomials(sig: Fraction) -> tuple[int, int, int, int]:
    # sigma = a/b, beta = c/a: f = (c^3 + s c^2 a + p c a^2 + t a^3) / b^3
    a, b = sig.numerator, sig.denominator
    c = b - 3 * a
    return c**3, c * c * a, c * a * a, a**3


def check_monotonicity(s, p, t, xs: Sequence, grid: Sequence | None = None) -> MonotonicityReport:
    """Check f_{s,p+x,t} <= f_{s+x,p,t} pointwise on a sigma grid.

    Both sides share the positive denominator b^3 for sigma = a/b, so with
    rational inputs the comparison is exact on integer numerators.
    """
    grid = rational_sigma_grid() if grid is None else grid
    coeffs = [Fraction(v) for v in (s, p, t)]
    xs = [Fraction(x) for x in xs]
    if any(x < 0 for x in xs):
        raise ValueError("x must be non-negative")
    den = math.lcm(*(v.denominator for v in coeffs + xs))
    S, P, T = (int(v * den) for v in coeffs)
    mons = [(sig, _monomials(Fraction(sig))) for sig in grid]
    bad = []
    checked = 0
    for x, X in zip(xs, (int(x * den) for x in xs)):
        for sig, (c3, c2a, ca2, a3) in mons:
            checked += 1
            lhs = den * c3 + S * c2a + (P + X) * ca2 + T * a3
            rhs = den * c3 + (S + X) * c2a + P * ca2 + T * a3
            if lhs > rhs:
                bad.append((x, sig))
    return MonotonicityReport(checked, tuple(bad))
