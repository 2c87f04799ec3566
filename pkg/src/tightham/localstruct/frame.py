from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fact import SIGMA_MAX, SIGMA_MIN


@dataclass(frozen=True)
class SigmaFrame:
    """sigma in [1 - 2^(-1/3), 1/4] with beta = 1/sigma - 3 and the weight sums."""

    sigma: Fraction
    q1: Fraction = Fraction(0)
    q2: Fraction = Fraction(0)

    def __post_init__(self):
        s = Fraction(self.sigma)
        if not SIGMA_MIN <= s <= SIGMA_MAX:
            raise ValueError(f"sigma={float(s)} outside [{SIGMA_MIN:.6f}, 1/4]")
        object.__setattr__(self, "sigma", s)

    @property
    def beta(self) -> Fraction:
        return 1 / self.sigma - 3

    def value(self, t: int) -> Fraction:
        b = self.beta
        return self.sigma**3 * (b**3 + b * b * self.q1 + b * self.q2 + t)
