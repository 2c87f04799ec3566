"""Enumeration of admissible local configurations and the global bound check.

Configurations are grouped by their key (R1, R2, B2).  For a fixed key the
blue triples are forced (every crossing triple whose three pairs lie in B2)
and only |R3| matters beyond the weights, so each key needs the largest
admissible R3 and one exact weight frontier.  Keys are bounded first by a
relaxation that splits the weights into the three cyclic pairs of triples;
only keys whose bound reaches the running maximum get the exact LP.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from ..extremal import run_tasks
from .config import (
    CROSS_PAIRS,
    CROSS_TRIPLES,
    I_MASK,
    LocalConfig,
    TripleSystem,
    mask_of,
    steadiness_witness,
)
from .fact import TARGET, max_on_range
from .weights import WeightProblem, frontier, sup_over_points

BLOCKS = ((0, 1), (0, 2), (1, 2))
# cyclic pairs (M_a, M_b) and the block holding their crossing pairs
CYCLIC = ((0, 1, 0), (1, 2, 2), (2, 0, 1))
PAIR_BIT = {pr: n for n, pr in enumerate(CROSS_PAIRS)}
TIE = 1e-12


def _grid_downsets(limit: int) -> list[frozenset]:
    cells = [(a, b) for a in range(3) for b in range(3)]
    out = []
    for r in range(limit + 1):
        for sub in combinations(cells, r):
            s = set(sub)
            if all((a2, b2) in s for a, b in s for a2 in range(a + 1) for b2 in range(b + 1)):
                out.append(frozenset(s))
    return out


HOOK = frozenset({(0, 0), (0, 1), (0, 2), (1, 0), (2, 0)})
R2_OPTIONS: tuple[frozenset, ...] = tuple(
    d for d in _grid_downsets(5) if len(d) < 5 or d == HOOK
)


def _cells_to_pairs(cells, l: int, p: int) -> list[tuple[int, int]]:
    return [(3 * l + a, 3 * p + b) for a, b in sorted(cells)]


def _b2_options(system: TripleSystem, l: int, p: int) -> list[tuple[tuple[int, int], ...]]:
    """Up-sets of the positional grid forming a star at the larger k."""
    centre = system.star_centre(l, p)
    out = []
    for lowest in (3, 2, 1, 0):
        if centre == 3 * p + 2:
            pairs = [(3 * l + a, centre) for a in range(lowest, 3)]
        else:
            pairs = [(centre, 3 * p + b) for b in range(lowest, 3)]
        out.append(tuple(sorted(tuple(sorted(e)) for e in pairs)))
    return out


def _triple_downsets() -> list[int]:
    """The 980 order ideals of the 3x3x3 grid as 27-bit masks over CROSS_TRIPLES."""
    idx = {(a, b, c): 9 * a + 3 * b + c for a, b, c in product(range(3), repeat=3)}
    order = sorted(idx, key=lambda x: (sum(x), x))
    out = []

    def rec(n: int, mask: int) -> None:
        if n == len(order):
            out.append(mask)
            return
        rec(n + 1, mask)
        a, b, c = order[n]
        lower = [(a - 1, b, c), (a, b - 1, c), (a, b, c - 1)]
        if all(min(x) < 0 or mask >> idx[x] & 1 for x in lower):
            rec(n + 1, mask | 1 << idx[(a, b, c)])

    rec(0, 0)
    return sorted(out)


@dataclass
class Tables:
    downsets: np.ndarray
    sizes: np.ndarray
    disjoint_pairs: list[tuple[int, int]]
    pair_contains: np.ndarray
    tri_vmask: list[int]
    tri_pairbits: list[int]
    b2_combos: list[tuple[int, int, int]]
    b2_pairs: list[tuple[tuple[int, int], ...]]
    b2_bits: np.ndarray
    b2_size: np.ndarray
    b2_forbid: list[int]
    b2_ok: np.ndarray
    b2_cands: list[tuple[int, ...]]
    b2_options: list[list[tuple]]


@lru_cache(maxsize=None)
def tables() -> Tables:
    system = TripleSystem()
    ds = _triple_downsets()
    downsets = np.array(ds, dtype=np.int64)
    sizes = np.array([bin(m).count("1") for m in ds], dtype=np.int64)
    tri_vmask = [mask_of(t) for t in CROSS_TRIPLES]
    disjoint = [(a, b) for a, b in combinations(range(27), 2) if not tri_vmask[a] & tri_vmask[b]]
    pm = np.array([(1 << a) | (1 << b) for a, b in disjoint], dtype=np.int64)
    pair_contains = (downsets[None, :] & pm[:, None]) == pm[:, None]
    tri_pairbits = [sum(1 << PAIR_BIT[pr] for pr in combinations(t, 2)) for t in CROSS_TRIPLES]
    b2opt = [_b2_options(system, l, p) for l, p in BLOCKS]
    combos = list(product(range(4), repeat=3))
    b2_pairs, b2_bits, b2_forbid, b2_cands = [], [], [], []
    for combo in combos:
        pairs = tuple(sorted(e for blk, o in enumerate(combo) for e in b2opt[blk][o]))
        bits = sum(1 << PAIR_BIT[e] for e in pairs)
        b2_pairs.append(pairs)
        b2_bits.append(bits)
        b2_forbid.append(sum(1 << n for n, pb in enumerate(tri_pairbits) if pb & bits))
        b2_cands.append(tuple(n for n, pb in enumerate(tri_pairbits) if pb & bits == pb))
    forb = np.array(b2_forbid, dtype=np.int64)
    b2_ok = (downsets[None, :] & forb[:, None]) == 0
    return Tables(
        downsets, sizes, disjoint, pair_contains, tri_vmask, tri_pairbits, combos, b2_pairs,
        np.array(b2_bits, dtype=np.int64), np.array([len(p) for p in b2_pairs]), b2_forbid, b2_ok,
        b2_cands, b2opt,
    )


def forbidden_from(edges: list[int], tab: Tables) -> tuple[int, list[int]]:
    """Red triples and disjoint red triple pairs that complete a steadiness violation.

    ``edges`` are the vertex masks of the singletons and pairs of R.  Returns a
    27-bit mask of forbidden triples and the indices (into ``disjoint_pairs``)
    of forbidden pairs.  Three crossing triples always cover I, and the triples
    of T meet every crossing triple, so nothing else can occur.
    """
    pop = lambda m: bin(m).count("1")
    f1 = 0
    disj = [(e | f) for e, f in combinations(edges, 2) if not e & f]
    for n, tv in enumerate(tab.tri_vmask):
        for ef in disj:
            if not ef & tv and pop((ef | tv) & I_MASK) <= 2:
                f1 |= 1 << n
                break
    f2 = []
    for n, (a, b) in enumerate(tab.disjoint_pairs):
        if f1 >> a & 1 or f1 >> b & 1:
            continue
        u = tab.tri_vmask[a] | tab.tri_vmask[b]
        for e in edges:
            if not e & u and pop((e | u) & I_MASK) <= 2:
                f2.append(n)
                break
    return f1, f2


def _mis(allowed: int, adj: tuple[int, ...], memo: dict) -> tuple[int, int]:
    """Maximum independent set inside ``allowed`` (bitmask); returns (size, set)."""
    if not allowed:
        return 0, 0
    hit = memo.get(allowed)
    if hit is not None:
        return hit
    v = (allowed & -allowed).bit_length() - 1
    rest = allowed & ~(1 << v)
    if not adj[v] & rest:
        s, m = _mis(rest, adj, memo)
        res = (s + 1, m | 1 << v)
    else:
        s1, m1 = _mis(rest, adj, memo)
        s2, m2 = _mis(rest & ~adj[v], adj, memo)
        res = (s2 + 1, m2 | 1 << v) if s2 + 1 > s1 else (s1, m1)
    memo[allowed] = res
    return res


def _cap_mask(mask: int, cap: int) -> int:
    """Drop the highest bits so that at most ``cap`` remain (hereditary constraints)."""
    while bin(mask).count("1") > cap:
        mask &= ~(1 << (mask.bit_length() - 1))
    return mask


@dataclass(frozen=True)
class Key:
    r1: int
    r2: tuple[int, int, int]
    b2: int
    r3max: int
    r3mask: int
    nb3: int
    configs: int

    @property
    def t(self) -> int:
        return self.r3max + self.nb3

    def pair_ids(self, tab: Tables) -> tuple[tuple, tuple, tuple]:
        combo = tab.b2_combos[self.b2]
        return tuple((a, self.r1 >> a & 1, self.r2[blk], combo[blk]) for a, _, blk in CYCLIC)

    def config(self, tab: Tables) -> LocalConfig:
        r2 = [e for blk, (l, p) in enumerate(BLOCKS) for e in _cells_to_pairs(R2_OPTIONS[self.r2[blk]], l, p)]
        r3 = [CROSS_TRIPLES[n] for n in range(27) if self.r3mask >> n & 1]
        b3 = [CROSS_TRIPLES[n] for n in tab.b2_cands[self.b2]]
        return LocalConfig(
            R1=[(3 * a,) for a in range(3) if self.r1 >> a & 1],
            R2=r2,
            R3=r3,
            B1=[(v,) for v in range(9)],
            B2=list(tab.b2_pairs[self.b2]),
            B3=b3,
        )


def _red_cap(r2: tuple[int, int, int]) -> int:
    """Largest |R3| permitted by the many-red-triples assumption."""
    counts = [len(R2_OPTIONS[o]) for o in r2]
    if max(counts) > 4:
        return 19
    if all(c == 4 for c in counts):
        if any(any(a == 2 or b == 2 for a, b in R2_OPTIONS[o]) for o in r2):
            return 21
    return 27


def enumerate_keys(r1: int, r2_first: int, exhaustive: bool = False) -> tuple[list[Key], int]:
    """All admissible keys with the given red singletons and first red block.

    Returns the keys and the number of (R1, R2) choices rejected as expanding.
    """
    tab = tables()
    t_masks = [0b111, 0b111000, 0b111000000]
    r1_masks = [1 << (3 * a) for a in range(3) if r1 >> a & 1]
    keys: list[Key] = []
    expanding = 0
    for rest in product(range(len(R2_OPTIONS)), repeat=2):
        r2 = (r2_first,) + rest
        r2_pairs = [e for blk, (l, p) in enumerate(BLOCKS) for e in _cells_to_pairs(R2_OPTIONS[r2[blk]], l, p)]
        red_small = r1_masks + [mask_of(e) for e in r2_pairs]
        if steadiness_witness(t_masks + red_small) is not None:
            expanding += 1
            continue
        f1, f2 = forbidden_from(red_small, tab)
        r2_bits = sum(1 << PAIR_BIT[e] for e in r2_pairs)
        cap = _red_cap(r2)
        compat = [b for b in range(len(tab.b2_combos)) if not tab.b2_bits[b] & r2_bits]
        if exhaustive:
            adj = [0] * 27
            for n in f2:
                a, b = tab.disjoint_pairs[n]
                adj[a] |= 1 << b
                adj[b] |= 1 << a
            adj_t = tuple(adj)
            memo: dict = {}
            for b in compat:
                allowed = ((1 << 27) - 1) & ~f1 & ~tab.b2_forbid[b]
                size, m = _mis(allowed, adj_t, memo)
                m = _cap_mask(m, cap)
                nb3 = len(tab.b2_cands[b])
                keys.append(Key(r1, r2, b, min(size, cap), m, nb3, 0))
            continue
        steady = (tab.downsets & f1) == 0
        if f2:
            steady &= ~tab.pair_contains[f2].any(axis=0)
        steady &= tab.sizes <= cap
        valid = tab.b2_ok[compat] & steady[None, :]
        counts = valid.sum(axis=1)
        best = np.where(valid, tab.sizes[None, :], -1)
        arg = best.argmax(axis=1)
        for row, b in enumerate(compat):
            if not counts[row]:
                continue
            nb3 = len(tab.b2_cands[b])
            col = int(arg[row])
            keys.append(Key(r1, r2, b, int(tab.sizes[col]), int(tab.downsets[col]), nb3,
                            int(counts[row]) << nb3))
    return keys, expanding


@lru_cache(maxsize=None)
def pair_points(pid: tuple) -> tuple[tuple[Fraction, Fraction], ...]:
    """Pareto frontier of one cyclic pair relaxation."""
    return tuple((o.q1, o.q2) for o in frontier(pair_problem_of(pid)))


def pair_problem_of(pid: tuple) -> WeightProblem:
    tab = tables()
    a, r1bit, r2opt, b2opt = pid
    b, blk = next((y, k) for x, y, k in CYCLIC if x == a)
    l, p = BLOCKS[blk]
    return WeightProblem(
        (3 * a,) if r1bit else (),
        tuple(sorted(tuple(sorted(e)) for e in _cells_to_pairs(R2_OPTIONS[r2opt], l, p))),
        (3 * a, 3 * a + 1, 3 * a + 2),
        tab.b2_options[blk][b2opt],
    )


@lru_cache(maxsize=None)
def combined_points(pids: tuple) -> tuple[tuple[float, float], ...]:
    """Sums of pair frontier points, in floats (only used for bounding)."""
    pts = set()
    for combo in product(*(pair_points(p) for p in pids)):
        pts.add((float(sum(c[0] for c in combo)), float(sum(c[1] for c in combo))))
    return tuple(sorted(pts))


@lru_cache(maxsize=None)
def pair_bound(pids: tuple, t: int) -> float:
    return max(max_on_range(q1, q2, t)[0] for q1, q2 in combined_points(pids))


@lru_cache(maxsize=None)
def key_frontier(r1: int, r2: tuple, b2: int):
    tab = tables()
    prob = WeightProblem(
        tuple(3 * a for a in range(3) if r1 >> a & 1),
        tuple(sorted(e for blk, (l, p) in enumerate(BLOCKS) for e in _cells_to_pairs(R2_OPTIONS[r2[blk]], l, p))),
        tuple(range(9)),
        tab.b2_pairs[b2],
    )
    full = tuple((o.q1, o.q2) for o in frontier(prob))
    extra = ([-1 if f else 0 for f in prob.single_flags()], -6)
    rich = tuple((o.q1, o.q2) for o in frontier(prob, extra=[extra]))
    return full, rich


@dataclass
class TaskResult:
    task: tuple
    keys: int = 0
    configs: int = 0
    expanding: int = 0
    candidates: list = field(default_factory=list)  # (bound, key) with bound >= floor
    below_floor_max: float = 0.0
    red_nonempty_r3max: int = 0
    b2_two_r3max: int = 0
    b2_two_22_ok: bool = True
    b2_three_tmax: int = 0
    b2_four_tmax: int = 0
    b2_six_kk_tmax: int = 0
    b3_max: int = 0
    b3_contain_k2k3: bool = True
    b2_four_bound: float = 0.0
    pair_ids: set = field(default_factory=set)


KK = frozenset({(2, 5), (2, 8), (5, 8)})


def run_task(task: tuple) -> TaskResult:
    """Enumerate one slice of keys, collect claim statistics and bound every key.

    Keys whose bound falls below ``floor`` (the exact value of a known
    configuration) cannot carry the maximum and are only summarised.
    """
    r1, r2_first, exhaustive, floor = task
    tab = tables()
    keys, expanding = enumerate_keys(r1, r2_first, exhaustive)
    res = TaskResult(task=task[:2], keys=len(keys), expanding=expanding)
    res.configs = sum(k.configs for k in keys)
    for k in keys:
        pids = k.pair_ids(tab)
        res.pair_ids.update(pids)
        bound = pair_bound(pids, k.t)
        if bound >= floor - TIE:
            res.candidates.append((bound, k))
        else:
            res.below_floor_max = max(res.below_floor_max, bound)
        pairs = tab.b2_pairs[k.b2]
        nb2 = len(pairs)
        if k.r1 or any(k.r2):
            res.red_nonempty_r3max = max(res.red_nonempty_r3max, k.r3max)
        if nb2 == 2:
            res.b2_two_r3max = max(res.b2_two_r3max, k.r3max)
            if k.r3max == 22 and not set(pairs) <= KK:
                res.b2_two_22_ok = False
        elif nb2 == 3:
            res.b2_three_tmax = max(res.b2_three_tmax, k.t)
        if nb2 >= 4:
            res.b2_four_tmax = max(res.b2_four_tmax, k.t)
            res.b2_four_bound = max(res.b2_four_bound, bound)
        if nb2 >= 6 and KK <= set(pairs):
            res.b2_six_kk_tmax = max(res.b2_six_kk_tmax, k.t)
        res.b3_max = max(res.b3_max, k.nb3)
        if any(not {5, 8} <= set(CROSS_TRIPLES[n]) for n in tab.b2_cands[k.b2]):
            res.b3_contain_k2k3 = False
    return res


SEED_KEY = Key(0, (0, 0, 0), 0, 27, (1 << 27) - 1, 0, 0)


def seed_value() -> float:
    """Exact value of the configuration with all 27 red triples and nothing else."""
    full, _ = key_frontier(SEED_KEY.r1, SEED_KEY.r2, SEED_KEY.b2)
    return sup_over_points(full, SEED_KEY.t).value


@dataclass(frozen=True)
class SubReport:
    name: str
    value: object
    bound: object
    passed: bool


@dataclass
class VerificationReport:
    mode: str
    tol: float
    max_value: float
    max_sigma: float
    max_q1: Fraction
    max_q2: Fraction
    max_t: int
    witness: LocalConfig
    keys: int
    configs: int
    expanding: int
    exact_evaluations: int
    pruned: int
    pruned_bound_max: float
    over_tol: int
    subreports: list[SubReport]
    pair_configs: int

    @property
    def attained(self) -> bool:
        return abs(self.max_value - float(TARGET)) <= 1e-6

    @property
    def passed(self) -> bool:
        return (
            self.max_value <= float(TARGET) + self.tol
            and self.over_tol == 0
            and self.attained
            and all(s.passed for s in self.subreports)
        )

    def lines(self) -> list[str]:
        out = [
            f"mode={self.mode}",
            f"tol={self.tol:g}",
            f"max={self.max_value:.12f}",
            f"target={float(TARGET):.12f}",
            f"sigma*={self.max_sigma:.12f}",
            f"witness_q1={self.max_q1}",
            f"witness_q2={self.max_q2}",
            f"witness_t={self.max_t}",
            f"keys={self.keys}",
        ]
        if self.mode == "primary":
            out.append(f"configurations={self.configs}")
        out += [
            f"expanding_red_rejected={self.expanding}",
            f"exact_evaluations={self.exact_evaluations}",
            f"pruned_keys={self.pruned}",
            f"pruned_bound_max={self.pruned_bound_max:.12f}",
            f"over_tol={self.over_tol}",
            f"pair_configurations={self.pair_configs}",
        ]
        for s in self.subreports:
            out.append(f"claim.{s.name}={s.value} bound={s.bound} {'pass' if s.passed else 'fail'}")
        out.append(f"result={'pass' if self.passed else 'fail'}")
        return out


def _pair_claims(pids: set) -> list[SubReport]:
    from .weights import solve_weights

    qmax = Fraction(0)
    k_ok, s_ok = True, True
    k_max, s_max = Fraction(0), Fraction(0)
    for pid in sorted(pids):
        prob = pair_problem_of(pid)
        opt = solve_weights(prob, 1, 1)
        qmax = max(qmax, opt.q1 + opt.q2)
        a = pid[0]
        b = next(y for x, y, _ in CYCLIC if x == a)
        ki, kj = 3 * a + 2, 3 * b + 2
        if not any(set(e) & {ki, kj} for e in prob.red2):
            kk = tuple(sorted((ki, kj)))
            coef = [Fraction(1)] * prob.nvars
            if kk in prob.blue2:
                coef[len(prob.red1) + len(prob.red2) + len(prob.blue1) + prob.blue2.index(kk)] = Fraction(0)
            o = solve_weights(prob, 0, 0, coef=coef)
            val = sum(c * x for c, x in zip(coef, _flat(prob, o)))
            k_max = max(k_max, val)
            k_ok &= val <= 5
        if len(prob.blue2) <= 1:
            o = solve_weights(prob, 2, 1)
            val = 2 * o.q1 + o.q2
            s_max = max(s_max, val)
            s_ok &= val <= 7
    return [
        SubReport("pair_weight_max", qmax, 6, qmax == 6),
        SubReport("pair_weight_no_red_at_k", k_max, "5+b(kk)", k_ok),
        SubReport("pair_weight_few_blue", s_max, "7-q1", s_ok),
    ]


def _flat(prob: WeightProblem, opt) -> list[Fraction]:
    wa = opt.assignment
    return (
        [wa.r[(u,)] for u in prob.red1]
        + [wa.r[e] for e in prob.red2]
        + [wa.b[(v,)] for v in prob.blue1]
        + [wa.b[e] for e in prob.blue2]
    )


def verify_local_structure(tol: float = 1e-9, workers: int = 1, exhaustive: bool = False) -> VerificationReport:
    """Maximise the local bound over every admissible configuration.

    Workers enumerate and bound fixed slices of keys; the main process then
    evaluates the surviving keys exactly in decreasing order of their bound,
    so the result does not depend on the number of workers.
    """
    tab = tables()
    floor = seed_value()
    tasks = [(r1, o, exhaustive, floor) for r1 in range(8) for o in range(len(R2_OPTIONS))]
    results: list[TaskResult] = run_tasks(run_task, tasks, workers)
    limit = float(TARGET) + tol
    cands = sorted(
        (c for r in results for c in r.candidates),
        key=lambda x: (-x[0], x[1].r1, x[1].r2, x[1].b2),
    )
    best = None
    incumbent = -1.0
    exact = over = 0
    rich = 0.0
    rest_max = max(r.below_floor_max for r in results)
    for n, (bound, k) in enumerate(cands):
        if bound < incumbent + TIE and bound <= limit:
            rest_max = max(rest_max, bound)
            break
        exact += 1
        full, rich_pts = key_frontier(k.r1, k.r2, k.b2)
        sup = sup_over_points(full, k.t)
        over += sup.value > limit
        if rich_pts:
            rich = max(rich, sup_over_points(rich_pts, k.t).value)
        if sup.value > incumbent:
            incumbent = sup.value
            best = (sup.value, sup.sigma, sup.q1, sup.q2, k.t, k)
    pruned = sum(r.keys for r in results) - exact
    rich = max(rich, rest_max)
    value, sigma, q1, q2, t, key = best
    pids: set = set()
    for r in results:
        pids |= r.pair_ids
    target = float(TARGET)
    subs = _pair_claims(pids)
    b3max = max(r.b3_max for r in results)
    subs.append(SubReport("blue_triples_contain_k2_k3", b3max,
                          3, all(r.b3_contain_k2k3 for r in results) and b3max <= 3))
    red = max(r.red_nonempty_r3max for r in results)
    subs.append(SubReport("red_triples_with_red_singletons_or_pairs", red, 23, red <= 23))
    two = max(r.b2_two_r3max for r in results)
    subs.append(SubReport("two_blue_pairs_red_triples", two, 22,
                          two <= 22 and all(r.b2_two_22_ok for r in results)))
    three = max(r.b2_three_tmax for r in results)
    subs.append(SubReport("three_blue_pairs_triples", three, 21, three <= 21))
    four = max(r.b2_four_tmax for r in results)
    subs.append(SubReport("four_blue_pairs_triples", four, 19, four <= 19))
    six = max(r.b2_six_kk_tmax for r in results)
    subs.append(SubReport("six_blue_pairs_all_kk_triples", six, 17, six <= 17))
    b4 = max(r.b2_four_bound for r in results)
    subs.append(SubReport("four_blue_pairs_value", f"{b4:.12f}", "5/8", b4 <= target + tol))
    subs.append(SubReport("singleton_weight_over_6_value", f"{rich:.12f}", "5/8", rich <= target + tol))
    return VerificationReport(
        mode="exhaustive" if exhaustive else "primary",
        tol=tol,
        max_value=value,
        max_sigma=sigma,
        max_q1=q1,
        max_q2=q2,
        max_t=t,
        witness=key.config(tab),
        keys=sum(r.keys for r in results),
        configs=sum(r.configs for r in results),
        expanding=sum(r.expanding for r in results),
        exact_evaluations=exact,
        pruned=pruned,
        pruned_bound_max=rest_max,
        over_tol=over,
        subreports=subs,
        pair_configs=len(pids),
    )
