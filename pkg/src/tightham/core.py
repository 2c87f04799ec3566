"""k-uniform hypergraphs on {1..n} and their basic invariants.

Edges are stored as strictly increasing tuples.  For n <= 64 every edge also
has a bitmask form (bit v-1 set for vertex v); the enumeration-heavy modules
work on those masks directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

Edge = tuple[int, ...]

MASK_LIMIT = 64


class HypergraphError(ValueError):
    """Raised for malformed hypergraphs or out-of-range arguments."""


class ContractViolation(HypergraphError):
    """Raised when an input breaks a documented precondition."""


def to_mask(edge: Iterable[int]) -> int:
    m = 0
    for v in edge:
        m |= 1 << (v - 1)
    return m


def from_mask(mask: int) -> Edge:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform edge family on the vertex set {1..n}."""

    k: int
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.k < 1:
            raise HypergraphError(f"uniformity must be positive, got {self.k}")
        if self.n < 0:
            raise HypergraphError(f"vertex count must be non-negative, got {self.n}")
        canon = set()
        for e in self.edges:
            t = tuple(sorted(e))
            if len(t) != self.k or len(set(t)) != self.k:
                raise HypergraphError(f"edge {e} does not have {self.k} distinct vertices")
            if t[0] < 1 or t[-1] > self.n:
                raise HypergraphError(f"edge {e} leaves the vertex range 1..{self.n}")
            canon.add(t)
        object.__setattr__(self, "edges", frozenset(canon))

    @classmethod
    def from_edges(cls, k: int, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        edges = [tuple(sorted(e)) for e in edges]
        if len(set(edges)) != len(edges):
            raise HypergraphError("duplicate edge")
        return cls(k, n, frozenset(edges))

    @classmethod
    def complete(cls, n: int, k: int) -> "Hypergraph":
        return cls(k, n, frozenset(combinations(range(1, n + 1), k)))

    @classmethod
    def from_masks(cls, k: int, n: int, masks: Iterable[int]) -> "Hypergraph":
        return cls(k, n, frozenset(from_mask(m) for m in masks))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.sorted_edges)

    def __contains__(self, edge: object) -> bool:
        if not isinstance(edge, (tuple, list, set, frozenset)):
            return False
        return tuple(sorted(edge)) in self.edges

    @property
    def e(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def masks(self) -> frozenset[int]:
        if self.n > MASK_LIMIT:
            raise HypergraphError(f"bitmask form needs n <= {MASK_LIMIT}")
        return frozenset(to_mask(e) for e in self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def covered(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def with_edges(self, edges: Iterable[Edge]) -> "Hypergraph":
        return Hypergraph(self.k, self.n, frozenset(edges))

    def union(self, other: "Hypergraph") -> "Hypergraph":
        _check_compatible(self, other)
        return self.with_edges(self.edges | other.edges)


@dataclass(frozen=True)
class ColouredPair:
    """Edge-disjoint red/blue hypergraphs on a shared vertex set."""

    R: Hypergraph
    B: Hypergraph

    def __post_init__(self) -> None:
        _check_compatible(self.R, self.B)
        if self.R.edges & self.B.edges:
            raise HypergraphError("red and blue graphs share an edge")

    @property
    def k(self) -> int:
        return self.R.k

    @property
    def n(self) -> int:
        return self.R.n

    def is_distinguishable(self) -> bool:
        return distinguishable(self.R, self.B)


@dataclass(frozen=True)
class Matching:
    """Pairwise vertex-disjoint edges of a host hypergraph."""

    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for e in self.edges:
            if seen.intersection(e):
                raise HypergraphError("matching edges are not disjoint")
            seen.update(e)

    def __len__(self) -> int:
        return len(self.edges)

    def vertices(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def uncovered(self, n: int) -> set[int]:
        return set(range(1, n + 1)) - self.vertices()

    def classes(self) -> tuple[tuple[int, ...], ...]:
        """Coordinate classes: position p holds the p-th smallest vertex of every edge."""
        if not self.edges:
            return ()
        k = len(self.edges[0])
        return tuple(tuple(sorted(e)[p] for e in self.edges) for p in range(k))

    def is_in(self, host: Hypergraph) -> bool:
        return all(e in host.edges for e in self.edges)


def _check_compatible(G: Hypergraph, H: Hypergraph) -> None:
    if G.k != H.k or G.n != H.n:
        raise HypergraphError(
            f"incompatible hypergraphs: (k={G.k}, n={G.n}) vs (k={H.k}, n={H.n})"
        )


def degree(G: Hypergraph, S: Iterable[int], W: Iterable[int] | None = None) -> int:
    """Number of Y inside W with S | Y an edge of G (W defaults to the complement of S)."""
    S = frozenset(S)
    if len(S) > G.k:
        raise HypergraphError(f"|S| = {len(S)} exceeds uniformity {G.k}")
    if any(v < 1 or v > G.n for v in S):
        raise HypergraphError("S leaves the vertex range")
    W = frozenset(G.vertices) - S if W is None else frozenset(W)
    if W & S:
        raise HypergraphError("W must be disjoint from S")
    count = 0
    for e in G.edges:
        es = set(e)
        if S <= es and (es - S) <= W:
            count += 1
    return count


def min_d_degree(G: Hypergraph, d: int) -> int:
    if not 1 <= d <= G.k - 1:
        raise HypergraphError(f"d must lie in 1..{G.k - 1}, got {d}")
    counts = dict.fromkeys(combinations(G.vertices, d), 0)
    if not counts:
        return 0
    for e in G.edges:
        for S in combinations(e, d):
            counts[S] += 1
    return min(counts.values())


def shadow(G: Hypergraph) -> Hypergraph:
    if G.k < 2:
        raise HypergraphError("shadow needs k >= 2")
    return Hypergraph(G.k - 1, G.n, frozenset(s for e in G.edges for s in combinations(e, G.k - 1)))


def tight_adjacent(e: Iterable[int], f: Iterable[int]) -> bool:
    e, f = set(e), set(f)
    return len(e) == len(f) and len(e & f) == len(e) - 1


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def tight_components(G: Hypergraph) -> list[Hypergraph]:
    """Connected components of the line graph, largest first.

    Edges are bucketed by their (k-1)-subsets, so the cost is linear in k * e(G)
    rather than quadratic.  Ties in size are broken by the smallest edge.
    """
    edges = G.sorted_edges
    uf = UnionFind(len(edges))
    first: dict[Edge, int] = {}
    for idx, e in enumerate(edges):
        for sub in combinations(e, G.k - 1):
            j = first.setdefault(sub, idx)
            if j != idx:
                uf.union(j, idx)
    groups: dict[int, list[Edge]] = {}
    for idx, e in enumerate(edges):
        groups.setdefault(uf.find(idx), []).append(e)
    parts = [G.with_edges(es) for es in groups.values()]
    parts.sort(key=lambda H: (-H.e, H.sorted_edges[0]))
    return parts


def is_tightly_connected(G: Hypergraph, covered_only: bool = False) -> bool:
    """One tight component and no isolated vertex (unless ``covered_only``)."""
    if G.e == 0:
        return False
    if not covered_only and len(G.covered()) != G.n:
        return False
    return len(tight_components(G)) == 1


def distinguishable(R: Hypergraph, B: Hypergraph) -> bool:
    """True iff every red and blue edge share at most one vertex."""
    _check_compatible(R, B)
    if R.k <= 2:
        return all(len(set(e) & set(f)) <= 1 for e in R.edges for f in B.edges)
    red_pairs = {p for e in R.edges for p in combinations(e, 2)}
    return not any(p in red_pairs for f in B.edges for p in combinations(f, 2))


def crossing_sets(M: Matching, r: int) -> list[tuple[int, ...]]:
    """All r-sets of V(M) meeting every matching edge at most once, in lex order."""
    if not 1 <= r <= len(M):
        raise HypergraphError(f"r must lie in 1..{len(M)}, got {r}")
    out = []
    for chosen in combinations(M.edges, r):
        out.extend(_product_sorted(chosen))
    return sorted(out)


def _product_sorted(edges: tuple[Edge, ...]) -> Iterator[tuple[int, ...]]:
    if not edges:
        yield ()
        return
    for v in edges[0]:
        for rest in _product_sorted(edges[1:]):
            yield tuple(sorted((v,) + rest))


def binom_total(G: Hypergraph) -> int:
    return comb(G.n, G.k)
