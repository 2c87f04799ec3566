"""Exact maximum matchings and tight-cycle search for small hypergraphs.

Both searches run on bitmask edges, so they need n <= 64.  A ``time_limit``
(seconds) turns them into anytime searches: on expiry a ``SearchTimeout``
carrying the best object found so far is raised.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .core import Hypergraph, HypergraphError, Matching, from_mask, tight_components, to_mask

DEFAULT_TIME_LIMIT = 60.0


class SearchTimeout(RuntimeError):
    """The time limit expired; ``best`` holds the best result found (not certified optimal)."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class _Clock:
    def __init__(self, limit: Optional[float]):
        self.deadline = None if limit is None else time.monotonic() + limit
        self.ticks = 0

    def expired(self) -> bool:
        self.ticks += 1
        if self.deadline is None or self.ticks & 1023:
            return False
        return time.monotonic() > self.deadline


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _matching_search(masks: list[int], k: int, target: Optional[int], clock: _Clock) -> tuple[list[int], bool]:
    """Branch and bound on a vertex of minimum positive degree.

    Returns (best edge list, finished) where finished is False on timeout.
    """
    best: list[int] = []
    cover = 0
    for m in masks:
        cover |= m
    ceiling = _popcount(cover) // k
    if target is not None:
        ceiling = min(ceiling, target)

    def rec(avail: list[int], chosen: list[int]) -> bool:
        nonlocal best
        if clock.expired():
            raise _Expired
        if len(chosen) > len(best):
            best = list(chosen)
            if len(best) >= ceiling:
                return True
        if not avail:
            return False
        union = 0
        for m in avail:
            union |= m
        if len(chosen) + min(len(avail), _popcount(union) // k) <= len(best):
            return False
        # vertex of minimum positive degree
        deg: dict[int, int] = {}
        for m in avail:
            x = m
            while x:
                low = x & -x
                deg[low] = deg.get(low, 0) + 1
                x ^= low
        v = min(deg, key=lambda b: (deg[b], b))
        for m in avail:
            if m & v:
                chosen.append(m)
                if rec([f for f in avail if not f & m], chosen):
                    return True
                chosen.pop()
        return rec([f for f in avail if not f & v], chosen)

    try:
        rec(sorted(masks), [])
    except _Expired:
        return best, False
    return best, True


class _Expired(Exception):
    pass


def _require_masks(G: Hypergraph) -> list[int]:
    if G.n > 64:
        raise HypergraphError("exact search supports n <= 64 only")
    return sorted(G.masks)


def max_matching(G: Hypergraph, time_limit: Optional[float] = DEFAULT_TIME_LIMIT) -> Matching:
    """A maximum matching of G; raises SearchTimeout(best=Matching) when out of time."""
    best, finished = _matching_search(_require_masks(G), G.k, None, _Clock(time_limit))
    result = Matching(tuple(sorted(from_mask(m) for m in best)))
    if not finished:
        raise SearchTimeout(f"matching search exceeded {time_limit}s", best=result)
    return result


def matching_number(G: Hypergraph, time_limit: Optional[float] = DEFAULT_TIME_LIMIT) -> int:
    return len(max_matching(G, time_limit))


def has_matching_of_size(G: Hypergraph, s: int, time_limit: Optional[float] = DEFAULT_TIME_LIMIT) -> bool:
    if s < 0:
        raise HypergraphError("s must be non-negative")
    if s == 0:
        return True
    best, finished = _matching_search(_require_masks(G), G.k, s, _Clock(time_limit))
    if len(best) >= s:
        return True
    if not finished:
        raise SearchTimeout(f"matching search exceeded {time_limit}s", best=len(best))
    return False


def matching_number_masks(masks, k: int) -> int:
    """Matching number of a bitmask edge family (no time limit)."""
    return len(_matching_search(list(masks), k, None, _Clock(None))[0])


def is_tight_cycle(G: Hypergraph, cycle: tuple[int, ...] | list[int]) -> bool:
    """Check all cyclic windows of k consecutive vertices against E(G)."""
    ell, k = len(cycle), G.k
    if ell < k + 1 or len(set(cycle)) != ell:
        return False
    return all(
        tuple(sorted(cycle[(s + t) % ell] for t in range(k))) in G.edges for s in range(ell)
    )


@dataclass(frozen=True)
class CycleResult:
    length: Optional[int]
    cycle: Optional[tuple[int, ...]]
    optimal: bool = True


@dataclass(frozen=True)
class HamiltonResult:
    status: Optional[bool]  # None means the search timed out
    certificate: Optional[tuple[int, ...]]
    note: str = ""


class _CycleSearch:
    """DFS over vertex sequences; states are the last k-1 vertices.

    Each search is confined to the edges of one tight component, since every
    window of a tight cycle is tightly connected to the next one.
    """

    def __init__(self, G: Hypergraph, edges: list[tuple[int, ...]], min_length: int, clock: _Clock):
        self.k = G.k
        self.n = G.n
        self.min_length = min_length
        self.clock = clock
        self.edge_masks = {to_mask(e) for e in edges}
        self.ext: dict[int, int] = {}
        for e in edges:
            em = to_mask(e)
            for v in e:
                sub = em & ~(1 << (v - 1))
                self.ext[sub] = self.ext.get(sub, 0) | (1 << (v - 1))
        self.cover = 0
        for m in self.edge_masks:
            self.cover |= m
        self.best_len = 0
        self.best: Optional[tuple[int, ...]] = None
        self.target: Optional[int] = None

    def _closes(self, seq: list[int]) -> bool:
        ell, k = len(seq), self.k
        for s in range(ell - k + 1, ell):
            m = 0
            for t in range(k):
                m |= 1 << (seq[(s + t) % ell] - 1)
            if m not in self.edge_masks:
                return False
        return True

    def run(self, target: Optional[int] = None) -> None:
        self.target = target
        verts = [v for v in range(1, self.n + 1) if self.cover >> (v - 1) & 1]
        for v0 in verts:
            allowed = 0
            for v in verts:
                if v > v0:
                    allowed |= 1 << (v - 1)
            if 1 + _popcount(allowed) <= self.best_len:
                break
            if target is not None and 1 + _popcount(allowed) < target:
                break
            # all ordered (k-1)-prefixes starting with v0 that lie in some edge
            self._start(v0, allowed)
            if self.target is not None and self.best_len >= self.target:
                return

    def _start(self, v0: int, allowed: int) -> None:
        k = self.k
        others = [v for v in range(1, self.n + 1) if allowed >> (v - 1) & 1]
        for rest in combinations(others, k - 2):
            for perm in _perms(rest):
                seq = [v0, *perm]
                m = to_mask(seq)
                if m not in self.ext:
                    continue
                self._dfs(seq, allowed & ~m)
                if self.target is not None and self.best_len >= self.target:
                    return

    def _dfs(self, seq: list[int], free: int) -> None:
        if self.clock.expired():
            raise _Expired
        ell = len(seq)
        if ell >= self.min_length and ell > self.best_len and self._closes(seq):
            self.best_len, self.best = ell, tuple(seq)
            if self.target is not None and ell >= self.target:
                return
        if ell + _popcount(free) <= self.best_len:
            return
        if self.target is not None and ell + _popcount(free) < self.target:
            return
        tail = 0
        for v in seq[ell - self.k + 1:]:
            tail |= 1 << (v - 1)
        cand = self.ext.get(tail, 0) & free
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length()
            seq.append(w)
            self._dfs(seq, free & ~low)
            seq.pop()
            if self.target is not None and self.best_len >= self.target:
                return


def _perms(items):
    if len(items) <= 1:
        yield tuple(items)
        return
    for idx, x in enumerate(items):
        for rest in _perms(items[:idx] + items[idx + 1:]):
            yield (x,) + rest


def _components_for_search(G: Hypergraph) -> list[Hypergraph]:
    return [C for C in tight_components(G) if C.e >= 1]


def longest_tight_cycle(
    G: Hypergraph,
    time_limit: Optional[float] = DEFAULT_TIME_LIMIT,
    min_length: Optional[int] = None,
) -> CycleResult:
    """Longest tight cycle (at least k+1 vertices by default) with a certificate."""
    if G.n > 64:
        raise HypergraphError("exact search supports n <= 64 only")
    min_length = G.k + 1 if min_length is None else min_length
    clock = _Clock(time_limit)
    best_len, best = 0, None
    for C in _components_for_search(G):
        if len(C.covered()) <= best_len:
            continue
        search = _CycleSearch(G, list(C.edges), min_length, clock)
        search.best_len = best_len
        try:
            search.run()
        except _Expired:
            if search.best is not None and search.best_len > best_len:
                best_len, best = search.best_len, search.best
            raise SearchTimeout(
                f"cycle search exceeded {time_limit}s",
                best=CycleResult(best_len or None, best, optimal=False),
            )
        if search.best is not None and search.best_len > best_len:
            best_len, best = search.best_len, search.best
    if best is None:
        return CycleResult(None, None)
    assert is_tight_cycle(G, best)
    return CycleResult(best_len, best)


def has_tight_hamilton(G: Hypergraph, time_limit: Optional[float] = DEFAULT_TIME_LIMIT) -> HamiltonResult:
    """Tri-state Hamiltonicity: True with certificate, False after exhaustion, None on timeout."""
    if G.n < G.k + 1:
        raise HypergraphError("a tight Hamilton cycle needs n >= k+1")
    if G.n > 64:
        raise HypergraphError("exact search supports n <= 64 only")
    clock = _Clock(time_limit)
    spanning = [C for C in _components_for_search(G) if len(C.covered()) == G.n]
    if not spanning:
        return HamiltonResult(False, None, "no tight component covers every vertex")
    for C in spanning:
        search = _CycleSearch(G, list(C.edges), G.n, clock)
        try:
            search.run(target=G.n)
        except _Expired:
            return HamiltonResult(None, None, f"timed out after {time_limit}s")
        if search.best_len == G.n:
            cert = search.best
            assert is_tight_cycle(G, cert)
            windows = {tuple(sorted(cert[(s + t) % G.n] for t in range(G.k))) for s in range(G.n)}
            assert windows <= C.edges, "certificate spans two tight components"
            return HamiltonResult(True, cert)
    return HamiltonResult(False, None, "exhaustive search found no spanning tight cycle")
