"""Brute-force extremal numbers at desk scale.

* ``mu_bruteforce``: largest e(R | B) over distinguishable pairs with
  m(R) <= s and e(R) > t, searched over left-shifted R only.
* ``emc_max_edges``: largest 3-graph with matching number <= s.
* ``mono_triangle_extremum``: red/blue colourings of K_n with many
  monochromatic triangles in both colours.
* ``connection_partition``: split the tight components of a 3-graph into
  two distinguishable halves.

Left-shifted 3-graphs on {1..n} are exactly the down-sets of the
componentwise order on sorted triples, which is what the enumerators walk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator, Optional

import numpy as np

from .core import Hypergraph, HypergraphError, distinguishable, tight_components, to_mask
from .matchcycle import _Clock, _matching_search


class ShiftPoset:
    """Triples of {1..n} in lex order with their lower covers."""

    def __init__(self, n: int):
        self.n = n
        self.triples = list(combinations(range(1, n + 1), 3))
        index = {t: i for i, t in enumerate(self.triples)}
        self.covers = []
        for a, b, c in self.triples:
            cs = []
            if a > 1:
                cs.append(index[(a - 1, b, c)])
            if b - 1 > a:
                cs.append(index[(a, b - 1, c)])
            if c - 1 > b:
                cs.append(index[(a, b, c - 1)])
            self.covers.append(cs)
        self.vmask = [to_mask(t) for t in self.triples]
        pairs = list(combinations(range(1, n + 1), 2))
        pidx = {p: i for i, p in enumerate(pairs)}
        self.pmask = [sum(1 << pidx[p] for p in combinations(t, 2)) for t in self.triples]

    def free_triples(self, shadow_mask: int) -> int:
        """Triples with no pair in the given pair set."""
        return sum(1 for pm in self.pmask if not pm & shadow_mask)


@dataclass
class ShiftedFamily:
    edges: tuple[int, ...]  # triple indices
    shadow: int
    matching: int


def iter_left_shifted(n: int, s: Optional[int] = None, prefix: tuple[bool, ...] = ()) -> Iterator[ShiftedFamily]:
    """All left-shifted 3-graphs on {1..n} (optionally with m <= s).

    ``prefix`` fixes the include/exclude decisions for the first triples, which
    is how work is split between tasks.
    """
    P = ShiftPoset(n)
    T = len(P.triples)
    chosen: list[int] = []
    included = [False] * T

    def rec(i: int, shadow: int, m: int) -> Iterator[ShiftedFamily]:
        if i == T:
            yield ShiftedFamily(tuple(chosen), shadow, m)
            return
        options = (prefix[i],) if i < len(prefix) else (False, True)
        for take in options:
            if not take:
                yield from rec(i + 1, shadow, m)
                continue
            if not all(included[c] for c in P.covers[i]):
                continue
            new_m = _grow(P, chosen, i, m)
            if s is not None and new_m > s:
                continue
            included[i] = True
            chosen.append(i)
            yield from rec(i + 1, shadow | P.pmask[i], new_m)
            chosen.pop()
            included[i] = False

    yield from rec(0, 0, 0)


def _grow(P: ShiftPoset, chosen: list[int], i: int, m: int) -> int:
    """Matching number after adding triple i to a family with matching number m.

    It grows exactly when m edges avoid the new triple.
    """
    e = P.vmask[i]
    rest = [P.vmask[j] for j in chosen if not P.vmask[j] & e]
    found, _ = _matching_search(rest, 3, m, _Clock(None))
    return m + 1 if len(found) >= m else m


@dataclass(frozen=True)
class MuResult:
    n: int
    s: int
    t: int
    value: Optional[int]  # None when the family G(n,s,t) is empty
    witnesses: tuple[tuple[Hypergraph, Hypergraph], ...]
    families_scanned: int

    @property
    def empty(self) -> bool:
        return self.value is None


def _tasks(n: int, depth: int) -> list[tuple[bool, ...]]:
    depth = min(depth, comb(n, 3))
    return [tuple(bool(b >> (depth - 1 - d) & 1) for d in range(depth)) for b in range(1 << depth)]


def _mu_task(args):
    n, s, t, prefix = args
    P = ShiftPoset(n)
    best, wit, scanned = None, [], 0
    for fam in iter_left_shifted(n, s, prefix):
        scanned += 1
        eR = len(fam.edges)
        if eR <= t:
            continue
        val = eR + P.free_triples(fam.shadow)
        if best is None or val > best:
            best, wit = val, [fam.edges]
        elif val == best:
            wit.append(fam.edges)
    return best, wit, scanned


def _merge(results):
    best, wit, scanned = None, [], 0
    for b, w, c in results:
        scanned += c
        if b is None:
            continue
        if best is None or b > best:
            best, wit = b, list(w)
        elif b == best:
            wit.extend(w)
    return best, wit, scanned


def run_tasks(func, tasks, workers: int = 1):
    """Map ``func`` over ``tasks`` in order; results do not depend on ``workers``."""
    if workers <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, tasks))


def mu_bruteforce(n: int, s: int, t: int, workers: int = 1, uncertified: bool = False) -> MuResult:
    """mu(n,s,t) with every extremal pair (R left-shifted, B the largest compatible family).

    Given R, the blue graph may be any family of triples avoiding the red
    shadow, so the best B is all of them; it is right-shifted whenever R is
    left-shifted.
    """
    if n > 8 and not uncertified:
        raise HypergraphError("certified search is limited to n <= 8 (pass uncertified=True)")
    if s < 0 or t < 0:
        raise HypergraphError("s and t must be non-negative")
    tasks = [(n, s, t, p) for p in _tasks(n, 3)]
    best, wit, scanned = _merge(run_tasks(_mu_task, tasks, workers))
    P = ShiftPoset(n)
    pairs = []
    for edges in sorted(wit):
        R = Hypergraph(3, n, frozenset(P.triples[i] for i in edges))
        shadow = 0
        for i in edges:
            shadow |= P.pmask[i]
        B = Hypergraph(3, n, frozenset(P.triples[j] for j in range(len(P.triples)) if not P.pmask[j] & shadow))
        pairs.append((R, B))
    return MuResult(n, s, t, best, tuple(pairs), scanned)


def mu_unrestricted_table(n: int) -> dict[tuple[int, int], Optional[int]]:
    """Oracle: mu(n,s,t) for all s, t by enumerating every red graph R.

    For n <= 5 every blue graph is enumerated too; for n = 6 the blue side is
    the largest family avoiding the red shadow.  Supports n <= 6.
    """
    if n > 6:
        raise HypergraphError("unrestricted enumeration supports n <= 6")
    triples = list(combinations(range(1, n + 1), 3))
    T = len(triples)
    pairs = list(combinations(range(1, n + 1), 2))
    pidx = {p: i for i, p in enumerate(pairs)}
    pm = np.array([sum(1 << pidx[p] for p in combinations(t, 2)) for t in triples], dtype=np.int64)
    masks = np.arange(1 << T, dtype=np.int64)
    shadow = np.zeros(1 << T, dtype=np.int64)
    size = np.zeros(1 << T, dtype=np.int64)
    for i in range(T):
        bit = (masks >> i) & 1
        shadow |= bit * pm[i]
        size += bit
    # matching number: at most 2 when n < 9
    m = (size > 0).astype(np.int64)
    for a, b in combinations(range(T), 2):
        if not set(triples[a]) & set(triples[b]):
            both = ((masks >> a) & 1) & ((masks >> b) & 1)
            m = np.maximum(m, 2 * both)
    if n <= 5:
        blue_best = np.zeros(1 << T, dtype=np.int64)
        for B in range(1 << T):
            ok = (shadow & shadow[B]) == 0
            ok &= (masks & B) == 0
            blue_best = np.where(ok, np.maximum(blue_best, size[B]), blue_best)
    else:
        blue_best = np.zeros(1 << T, dtype=np.int64)
        for j in range(T):
            blue_best += ((shadow & pm[j]) == 0).astype(np.int64)
    total = size + blue_best
    table: dict[tuple[int, int], Optional[int]] = {}
    max_s = n // 3
    for s_ in range(0, max_s + 2):
        for t_ in range(0, T + 1):
            sel = (m <= s_) & (size > t_)
            table[(s_, t_)] = int(total[sel].max()) if sel.any() else None
    return table


@dataclass(frozen=True)
class EMCResult:
    n: int
    s: int
    value: int
    formula: int
    witness: Hypergraph
    families_scanned: int

    @property
    def matches_formula(self) -> bool:
        return self.value == self.formula


def _emc_task(args):
    n, s, prefix = args
    best, wit, scanned = -1, None, 0
    for fam in iter_left_shifted(n, s, prefix):
        scanned += 1
        if len(fam.edges) > best:
            best, wit = len(fam.edges), fam.edges
    return best, wit, scanned


def emc_max_edges(n: int, s: int, workers: int = 1, uncertified: bool = False) -> EMCResult:
    """Largest 3-graph on n vertices with no matching of size s+1."""
    if n > 10 and not uncertified:
        raise HypergraphError("certified search is limited to n <= 10 (pass uncertified=True)")
    if s < 0:
        raise HypergraphError("s must be non-negative")
    results = run_tasks(_emc_task, [(n, s, p) for p in _tasks(n, 3)], workers)
    best, wit, scanned = -1, None, 0
    for b, w, c in results:
        scanned += c
        if b > best:
            best, wit = b, w
    P = ShiftPoset(n)
    G = Hypergraph(3, n, frozenset(P.triples[i] for i in wit))
    formula = max(comb(3 * s + 2, 3), comb(n, 3) - comb(n - s, 3))
    return EMCResult(n, s, best, formula, G, scanned)


@dataclass(frozen=True)
class EdgeColouring2:
    """Red and blue edges of a subgraph of K_n; pairs outside both are absent."""

    n: int
    red: frozenset[tuple[int, int]]
    blue: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        red = frozenset(tuple(sorted(p)) for p in self.red)
        blue = frozenset(tuple(sorted(p)) for p in self.blue)
        for p in red | blue:
            if len(set(p)) != 2 or p[0] < 1 or p[1] > self.n:
                raise HypergraphError(f"bad pair {p}")
        if red & blue:
            raise HypergraphError("a pair cannot be both red and blue")
        object.__setattr__(self, "red", red)
        object.__setattr__(self, "blue", blue)


def count_mono_triangles(c: EdgeColouring2) -> tuple[int, int]:
    red = blue = 0
    for x, y, z in combinations(range(1, c.n + 1), 3):
        tri = ((x, y), (x, z), (y, z))
        if all(p in c.red for p in tri):
            red += 1
        elif all(p in c.blue for p in tri):
            blue += 1
    return red, blue


@dataclass(frozen=True)
class TriangleExtremum:
    n: int
    tmin: int
    value: Optional[int]  # None when no colouring reaches tmin in both colours
    witness: Optional[EdgeColouring2]
    red: Optional[int]
    blue: Optional[int]
    colourings_scanned: int


def mono_triangle_extremum(n: int, tmin: int, allow_large: bool = False, chunk: int = 1 << 22) -> TriangleExtremum:
    """Max number of monochromatic triangles with at least ``tmin`` of each colour.

    Colouring an absent pair red never destroys a monochromatic triangle, so
    only complete 2-colourings are scanned; swapping colours is a symmetry, so
    the first pair is fixed red.
    """
    if n > 7 and not allow_large:
        raise HypergraphError("n > 7 needs allow_large=True")
    if n < 2:
        raise HypergraphError("n must be at least 2")
    pairs = list(combinations(range(1, n + 1), 2))
    P = len(pairs)
    pidx = {p: i for i, p in enumerate(pairs)}
    tris = [sum(1 << pidx[p] for p in combinations(t, 2)) for t in combinations(range(1, n + 1), 3)]
    free_bits = P - 1
    total_masks = 1 << free_bits
    best, best_mask, best_rb = -1, None, None
    for start in range(0, total_masks, chunk):
        x = (np.arange(start, min(start + chunk, total_masks), dtype=np.int64) << 1) | 1
        red = np.zeros(len(x), dtype=np.int32)
        blue = np.zeros(len(x), dtype=np.int32)
        for tm in tris:
            hit = x & tm
            red += hit == tm
            blue += hit == 0
        ok = (red >= tmin) & (blue >= tmin)
        if not ok.any():
            continue
        tot = np.where(ok, red + blue, -1)
        i = int(np.argmax(tot))
        if tot[i] > best:
            best, best_mask, best_rb = int(tot[i]), int(x[i]), (int(red[i]), int(blue[i]))
    if best < 0:
        return TriangleExtremum(n, tmin, None, None, None, None, total_masks)
    redset = frozenset(p for p, i in pidx.items() if best_mask >> i & 1)
    blueset = frozenset(pairs) - redset
    col = EdgeColouring2(n, redset, blueset)
    return TriangleExtremum(n, tmin, best, col, best_rb[0], best_rb[1], total_masks)


@dataclass(frozen=True)
class PartitionDiagnostics:
    total: Fraction  # e(G) / binom(n,3)
    largest: Fraction
    index: int  # 1-based i where the prefix first reaches the threshold; l+1 if never
    hyp_lower: bool  # e(G) >= (5/8+eps) binom(n,3)
    hyp_largest: bool  # largest component < (1/2+eps) binom(n,3)
    hyp_upper: bool  # e(G) <= (5/8+2eps) binom(n,3)
    eps_small: bool  # eps < 1/16
    concl_max: bool  # max(|R|,|B|) < (1/2+eps) binom(n,3)
    concl_min: bool  # min(|R|,|B|) >= binom(n,3)/8

    @property
    def hypotheses(self) -> bool:
        return self.hyp_lower and self.hyp_largest and self.hyp_upper and self.eps_small

    @property
    def hypothesis_failed(self) -> bool:
        return not self.hypotheses

    @property
    def conclusions(self) -> bool:
        return self.concl_max and self.concl_min


@dataclass(frozen=True)
class ConnectionPartition:
    R: Hypergraph
    B: Hypergraph
    diagnostics: PartitionDiagnostics


def partition_by_sizes(sizes: list[int], n: int, eps: Fraction) -> tuple[int, PartitionDiagnostics]:
    """Cut a size-sorted component list where the prefix first reaches (1/2+eps) binom(n,3).

    Returns the number of components placed on the red side.
    """
    eps = Fraction(eps)
    N = comb(n, 3)
    sizes = sorted(sizes, reverse=True)
    total = sum(sizes)
    threshold = (Fraction(1, 2) + eps) * N
    acc, i = 0, len(sizes) + 1
    for idx, c in enumerate(sizes, start=1):
        acc += c
        if acc >= threshold:
            i = idx
            break
    red = sum(sizes[: i - 1])
    blue = total - red
    largest = sizes[0] if sizes else 0
    diag = PartitionDiagnostics(
        total=Fraction(total, N),
        largest=Fraction(largest, N),
        index=i,
        hyp_lower=total >= (Fraction(5, 8) + eps) * N,
        hyp_largest=largest < threshold,
        hyp_upper=total <= (Fraction(5, 8) + 2 * eps) * N,
        eps_small=0 < eps < Fraction(1, 16),
        concl_max=max(red, blue) < threshold,
        concl_min=8 * min(red, blue) >= N,
    )
    return i - 1, diag


def connection_partition(G: Hypergraph, eps: Fraction) -> ConnectionPartition:
    """Group tight components (largest first) into red and blue halves."""
    if G.k != 3:
        raise HypergraphError("connection_partition needs a 3-graph")
    comps = tight_components(G)
    cut, diag = partition_by_sizes([C.e for C in comps], G.n, Fraction(eps))
    red = frozenset().union(*(C.edges for C in comps[:cut]))
    blue = frozenset().union(*(C.edges for C in comps[cut:]))
    R, B = G.with_edges(red), G.with_edges(blue)
    assert distinguishable(R, B)
    return ConnectionPartition(R, B, diag)
