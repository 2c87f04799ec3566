"""Generators for the extremal constructions and their density witnesses."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional

from .core import Hypergraph, HypergraphError, tight_components
from .matchcycle import DEFAULT_TIME_LIMIT, SearchTimeout, longest_tight_cycle


def gen_split_kgraph(k: int, nx: int, ny: int, a: int) -> Hypergraph:
    """All k-subsets of X | Y except those with exactly ``a`` vertices in X.

    X = {1..nx} and Y = {nx+1..nx+ny}.
    """
    if k < 2:
        raise HypergraphError("k must be at least 2")
    if nx < 0 or ny < 0 or nx + ny < k:
        raise HypergraphError("need nx, ny >= 0 and nx + ny >= k")
    if not 0 <= a <= k:
        raise HypergraphError(f"a must lie in 0..{k}, got {a}")
    n = nx + ny
    return Hypergraph(k, n, frozenset(e for e in combinations(range(1, n + 1), k) if sum(v <= nx for v in e) != a))


def split_edge_count(k: int, nx: int, ny: int, a: int) -> int:
    return comb(nx + ny, k) - comb(nx, a) * comb(ny, k - a)


@dataclass(frozen=True)
class ComponentProfile:
    count: int
    sizes: tuple[int, ...]
    profiles: tuple[dict, ...]  # per component: {(|e&X|, |e&Y|): count}
    ok: bool
    message: str = ""


def split_component_profile(G: Hypergraph, nx: int, a: int) -> ComponentProfile:
    """Tight components of a split graph with their (|e&X|, |e&Y|) histograms.

    ``ok`` is False (with a message) unless there are exactly two components,
    one above the forbidden class a and one below it.
    """
    comps = tight_components(G)
    profiles = []
    for C in comps:
        hist = Counter((sum(v <= nx for v in e), G.k - sum(v <= nx for v in e)) for e in C.edges)
        profiles.append(dict(sorted(hist.items(), reverse=True)))
    sizes = tuple(C.e for C in comps)
    msg = ""
    ok = len(comps) == 2
    if ok:
        sides = [{x for x, _ in p} for p in profiles]
        above = [s for s in sides if min(s) > a]
        below = [s for s in sides if max(s) < a]
        ok = len(above) == 1 and len(below) == 1
        if not ok:
            msg = "components do not separate the classes above and below a"
    else:
        msg = f"expected 2 tight components, found {len(comps)}"
    return ComponentProfile(len(comps), sizes, tuple(profiles), ok, msg)


def gen_emc_clique(n: int, s: int, k: int) -> Hypergraph:
    """Complete k-graph on {1..(s+1)k-1} inside n vertices."""
    size = (s + 1) * k - 1
    if s < 0 or size > n:
        raise HypergraphError(f"clique on {size} vertices does not fit into n={n}")
    return Hypergraph(k, n, frozenset(combinations(range(1, size + 1), k)))


def gen_emc_cover(n: int, s: int, k: int) -> Hypergraph:
    """All k-sets meeting {1..s}."""
    if not 0 <= s <= n:
        raise HypergraphError("need 0 <= s <= n")
    return Hypergraph(k, n, frozenset(e for e in combinations(range(1, n + 1), k) if e[0] <= s))


def emc_bound(n: int, s: int, k: int) -> int:
    return max(comb((s + 1) * k - 1, k), comb(n, k) - comb(n - s, k))


@dataclass(frozen=True)
class DensityWitness:
    edge_density: Fraction
    max_component_density: Fraction


def ck_witness(k: int, nx: int, ny: int) -> DensityWitness:
    """Exact densities of the split graph with forbidden class floor(k/2)."""
    if min(nx, ny) < k:
        raise HypergraphError("both parts need at least k vertices")
    a = k // 2
    n = nx + ny
    total = comb(n, k)
    above = sum(comb(nx, x) * comb(ny, k - x) for x in range(a + 1, k + 1))
    below = sum(comb(nx, x) * comb(ny, k - x) for x in range(0, a))
    return DensityWitness(Fraction(above + below, total), Fraction(max(above, below), total))


def ck_witness_graph(k: int, nx: int, ny: int) -> DensityWitness:
    """Same as ``ck_witness`` but measured on the generated graph."""
    G = gen_split_kgraph(k, nx, ny, k // 2)
    comps = tight_components(G)
    total = comb(G.n, k)
    return DensityWitness(Fraction(G.e, total), Fraction(max(C.e for C in comps), total))


@dataclass(frozen=True)
class CycleWitness:
    edge_density: Fraction
    longest: Optional[int]
    ratio: Optional[Fraction]
    cycle: Optional[tuple[int, ...]]
    optimal: bool
    per_component: tuple[Optional[int], ...]


def eg3_witness(nx: int, ny: int, time_limit: Optional[float] = DEFAULT_TIME_LIMIT) -> CycleWitness:
    """Edge density and longest tight cycle ratio of the split 3-graph."""
    G = gen_split_kgraph(3, nx, ny, 1)
    optimal = True
    per = []
    best = None
    for C in tight_components(G):
        try:
            res = longest_tight_cycle(C, time_limit=time_limit)
        except SearchTimeout as exc:
            res, optimal = exc.best, False
        per.append(res.length)
        if res.length is not None and (best is None or res.length > best.length):
            best = res
    density = Fraction(G.e, comb(G.n, 3))
    if best is None:
        return CycleWitness(density, None, None, None, optimal, tuple(per))
    return CycleWitness(density, best.length, Fraction(best.length, G.n), best.cycle, optimal, tuple(per))
