"""Shifting a coloured pair until red is left-shifted and blue right-shifted.

Run: python demos/shifting_tour.py
"""

import random
from itertools import combinations

from tightham import ColouredPair, Hypergraph, canonicalize_pair, is_left_shifted, is_right_shifted
from tightham.io import emit_pair
from tightham.matchcycle import matching_number


def random_pair(rng: random.Random, n: int) -> ColouredPair:
    red = [e for e in combinations(range(1, n + 1), 3) if rng.random() < 0.2]
    used = {p for e in red for p in combinations(e, 2)}
    blue = [e for e in combinations(range(1, n + 1), 3) if rng.random() < 0.3 and not used & set(combinations(e, 2))]
    return ColouredPair(Hypergraph.from_edges(3, n, red), Hypergraph.from_edges(3, n, blue))


def main() -> None:
    rng = random.Random(3)
    P = random_pair(rng, 8)
    print("Input pair:")
    print(emit_pair(P))
    can = canonicalize_pair(P)
    Q = can.pair
    print(f"After {can.rounds} rounds of simultaneous shifts:")
    print(emit_pair(Q))
    print(f"edges kept:        red {P.R.e} -> {Q.R.e}, blue {P.B.e} -> {Q.B.e}")
    print(f"red matching:      {matching_number(P.R)} -> {matching_number(Q.R)}")
    print(f"still distinguishable: {Q.is_distinguishable()}")
    print(f"red left-shifted: {is_left_shifted(Q.R)}, blue right-shifted: {is_right_shifted(Q.B)}")


if __name__ == "__main__":
    main()
