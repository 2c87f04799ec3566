"""(i,j)-shifts, shiftedness tests and shift closures.

``shift(G, i, j)`` moves edges from vertex i to vertex j.  A graph is
left-shifted when no shift towards a smaller label changes it and
right-shifted when no shift towards a larger label does.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ColouredPair, ContractViolation, Edge, Hypergraph, HypergraphError, distinguishable


def _shift_edges(edges: frozenset[Edge], i: int, j: int) -> frozenset[Edge]:
    out = set()
    for e in edges:
        if i in e and j not in e:
            f = tuple(sorted([v for v in e if v != i] + [j]))
            if f not in edges:
                out.add(f)
                continue
        out.add(e)
    return frozenset(out)


def shift(G: Hypergraph, i: int, j: int) -> Hypergraph:
    """The (i,j)-shift of G: replace i by j wherever the image is new."""
    if i == j:
        raise HypergraphError("shift needs i != j")
    for v in (i, j):
        if not 1 <= v <= G.n:
            raise HypergraphError(f"vertex {v} outside 1..{G.n}")
    return G.with_edges(_shift_edges(G.edges, i, j))


def is_left_shifted(G: Hypergraph) -> bool:
    return all(
        _shift_edges(G.edges, j, i) == G.edges
        for i in range(1, G.n + 1)
        for j in range(i + 1, G.n + 1)
    )


def is_right_shifted(G: Hypergraph) -> bool:
    return all(
        _shift_edges(G.edges, i, j) == G.edges
        for i in range(1, G.n + 1)
        for j in range(i + 1, G.n + 1)
    )


def _closure(G: Hypergraph, left: bool) -> tuple[Hypergraph, int]:
    edges = G.edges
    sweeps = 0
    while True:
        sweeps += 1
        changed = False
        for i in range(1, G.n + 1):
            for j in range(i + 1, G.n + 1):
                new = _shift_edges(edges, j, i) if left else _shift_edges(edges, i, j)
                if new != edges:
                    edges, changed = new, True
        if not changed:
            return G.with_edges(edges), sweeps


def left_shift_closure(G: Hypergraph) -> Hypergraph:
    """Iterate shifts towards smaller labels until nothing moves."""
    return _closure(G, left=True)[0]


def right_shift_closure(G: Hypergraph) -> Hypergraph:
    return _closure(G, left=False)[0]


def shift_pair(P: ColouredPair, i: int, j: int) -> ColouredPair:
    """Shift red down from j to i and blue up from i to j simultaneously (i < j)."""
    if i > j:
        i, j = j, i
    if i == j:
        raise HypergraphError("shift needs i != j")
    if not distinguishable(P.R, P.B):
        raise ContractViolation("shift_pair requires a distinguishable pair")
    return ColouredPair(shift(P.R, j, i), shift(P.B, i, j))


@dataclass(frozen=True)
class CanonicalPair:
    pair: ColouredPair
    rounds: int


def canonicalize_pair(P: ColouredPair) -> CanonicalPair:
    """Apply simultaneous pair shifts over all i < j until a joint fixed point.

    Every intermediate pair stays distinguishable, which is why red and blue
    are never swept separately.
    """
    if not distinguishable(P.R, P.B):
        raise ContractViolation("canonicalize_pair requires a distinguishable pair")
    R, B = P.R.edges, P.B.edges
    rounds = 0
    while True:
        rounds += 1
        changed = False
        for i in range(1, P.n + 1):
            for j in range(i + 1, P.n + 1):
                newR = _shift_edges(R, j, i)
                newB = _shift_edges(B, i, j)
                if newR != R or newB != B:
                    R, B, changed = newR, newB, True
        if not changed:
            break
    return CanonicalPair(ColouredPair(P.R.with_edges(R), P.B.with_edges(B)), rounds)
