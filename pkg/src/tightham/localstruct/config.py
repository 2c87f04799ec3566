"""Local configurations on three disjoint triples and their structural assumptions.

Vertex ``3*l + pos`` is the ``pos``-th element (i, j, k) of the ``l``-th
triple, so i1, j1, k1, i2, ... are 0, 1, 2, 3, ...  Pairs and triples are
stored as sorted tuples of these ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable

from ..core import HypergraphError

POS = "ijk"
VERTICES = tuple(range(9))
I_SET = frozenset({0, 3, 6})
J_SET = frozenset({1, 4, 7})
K_SET = frozenset({2, 5, 8})
I_MASK = sum(1 << v for v in I_SET)


def vname(v: int) -> str:
    return f"{POS[v % 3]}{v // 3 + 1}"


def vid(name: str) -> int:
    name = name.strip()
    if len(name) != 2 or name[0] not in POS or name[1] not in "123":
        raise HypergraphError(f"bad vertex name {name!r}")
    return 3 * (int(name[1]) - 1) + POS.index(name[0])


def block(v: int) -> int:
    return v // 3


def pos(v: int) -> int:
    return v % 3


def is_crossing(edge: Iterable[int]) -> bool:
    blocks = [block(v) for v in edge]
    return len(blocks) == len(set(blocks))


CROSS_PAIRS: tuple[tuple[int, int], ...] = tuple(
    (u, v) for u, v in combinations(VERTICES, 2) if block(u) != block(v)
)
CROSS_TRIPLES: tuple[tuple[int, int, int], ...] = tuple(
    (a, 3 + b, 6 + c) for a, b, c in product(range(3), repeat=3)
)
TRIPLE_INDEX = {t: n for n, t in enumerate(CROSS_TRIPLES)}


def mask_of(edge: Iterable[int]) -> int:
    m = 0
    for v in edge:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class TripleSystem:
    """Three disjoint triples (i_l, j_l, k_l) plus the order of k1, k2, k3.

    ``k_rank[l]`` is the rank of k_l among the three k-vertices.
    """

    k_rank: tuple[int, int, int] = (0, 1, 2)

    def __post_init__(self):
        if sorted(self.k_rank) != [0, 1, 2]:
            raise ValueError("k_rank must be a permutation of 0, 1, 2")

    @property
    def triples(self) -> tuple[tuple[int, int, int], ...]:
        return tuple((3 * l, 3 * l + 1, 3 * l + 2) for l in range(3))

    def star_centre(self, l: int, p: int) -> int:
        """The k-vertex at which blue pairs between M_l and M_p must meet."""
        top = l if self.k_rank[l] > self.k_rank[p] else p
        return 3 * top + 2


def _norm(edges, arity: int) -> frozenset:
    out = set()
    for e in edges:
        if isinstance(e, str):
            e = [vid(x) for x in e.replace(",", " ").split()]
        elif isinstance(e, int):
            e = (e,)
        e = tuple(sorted(vid(x) if isinstance(x, str) else int(x) for x in e))
        if len(e) != arity or len(set(e)) != arity:
            raise HypergraphError(f"expected {arity} distinct vertices, got {e}")
        if any(not 0 <= v < 9 for v in e):
            raise HypergraphError(f"vertex out of range in {e}")
        out.add(e if arity > 1 else e)
    return frozenset(out)


@dataclass(frozen=True)
class LocalConfig:
    """Red and blue singletons, pairs and triples on the nine vertices.

    Edges may be given as id tuples or as names ("i1", "i1 j2"); everything
    is normalised to sorted id tuples.  Singletons are 1-tuples.
    """

    R1: frozenset = frozenset()
    R2: frozenset = frozenset()
    R3: frozenset = frozenset()
    B1: frozenset = frozenset()
    B2: frozenset = frozenset()
    B3: frozenset = frozenset()
    system: TripleSystem = field(default_factory=TripleSystem)

    def __post_init__(self):
        for name, arity in (("R1", 1), ("R2", 2), ("R3", 3), ("B1", 1), ("B2", 2), ("B3", 3)):
            object.__setattr__(self, name, _norm(getattr(self, name), arity))

    @classmethod
    def full_blue_singletons(cls, **parts) -> "LocalConfig":
        parts.setdefault("B1", [(v,) for v in VERTICES])
        return cls(**parts)

    @property
    def red_singletons(self) -> list[int]:
        return sorted(e[0] for e in self.R1)

    @property
    def blue_singletons(self) -> list[int]:
        return sorted(e[0] for e in self.B1)

    @property
    def t(self) -> int:
        return len(self.R3 | self.B3)

    def __str__(self) -> str:
        return format_config(self)


def format_config(cfg: LocalConfig) -> str:
    lines = []
    for name in ("R1", "R2", "R3", "B1", "B2", "B3"):
        edges = sorted(getattr(cfg, name))
        lines.append(f"{name}:")
        lines.extend(" ".join(vname(v) for v in e) for e in edges)
    return "\n".join(lines) + "\n"


def parse_config(text: str) -> LocalConfig:
    """Inverse of :func:`format_config`; ``#`` starts a comment."""
    parts: dict[str, list] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.endswith(":") and line[:-1] in ("R1", "R2", "R3", "B1", "B2", "B3"):
            current = line[:-1]
            parts.setdefault(current, [])
            continue
        if current is None:
            raise HypergraphError(f"line {lineno}: edge outside a section")
        try:
            edge = tuple(vid(x) for x in line.split())
        except HypergraphError as exc:
            raise HypergraphError(f"line {lineno}: {exc}") from None
        if len(edge) != int(current[1]):
            raise HypergraphError(f"line {lineno}: section {current} needs {current[1]} vertices")
        parts[current].append(edge)
    return LocalConfig(**parts)


def steadiness_witness(edge_masks: Iterable[int]) -> tuple[int, int, int] | None:
    """Three pairwise disjoint edges whose union meets I in at most two vertices."""
    es = sorted(set(edge_masks))
    for a in range(len(es)):
        ea = es[a]
        for b in range(a + 1, len(es)):
            eb = es[b]
            if ea & eb:
                continue
            ab = ea | eb
            for c in range(b + 1, len(es)):
                ec = es[c]
                if ab & ec:
                    continue
                if bin((ab | ec) & I_MASK).count("1") <= 2:
                    return ea, eb, ec
    return None


def _grid_downset(cells: set[tuple[int, int]]) -> bool:
    return all((a2, b2) in cells for a, b in cells for a2 in range(a + 1) for b2 in range(b + 1))


HOOK = frozenset({(0, 0), (0, 1), (0, 2), (1, 0), (2, 0)})


def _pairs_between(edges, l: int, p: int) -> set[tuple[int, int]]:
    """Positional cells (pos in M_l, pos in M_p) of the pairs between M_l and M_p."""
    out = set()
    for u, v in edges:
        if {block(u), block(v)} == {l, p}:
            if block(u) != l:
                u, v = v, u
            out.add((pos(u), pos(v)))
    return out


def validate_config(cfg: LocalConfig) -> tuple[bool, list[str]]:
    """Check each structural assumption separately; returns (ok, violated labels)."""
    bad: list[str] = []
    sysm = cfg.system
    # (a) down-closure of B
    b1 = set(cfg.blue_singletons)
    a_ok = all(set(e) <= b1 for e in cfg.B2)
    a_ok = a_ok and all(all(pr in cfg.B2 for pr in combinations(t, 2)) for t in cfg.B3)
    if not a_ok:
        bad.append("a")
    # (b) distinguishability
    b_ok = not (cfg.R2 & cfg.B2)
    b_ok = b_ok and all(len(set(r) & set(b)) <= 1 for r in cfg.R3 for b in cfg.B3)
    b_ok = b_ok and not any(pr in cfg.B2 for r in cfg.R3 for pr in combinations(r, 2))
    if not b_ok:
        bad.append("b")
    # (c) steadiness over T and all red edges
    masks = [mask_of(t) for t in sysm.triples]
    masks += [mask_of(e) for part in (cfg.R1, cfg.R2, cfg.R3) for e in part]
    if steadiness_witness(masks) is not None:
        bad.append("c")
    # (d) crossing
    if not all(is_crossing(e) for part in (cfg.R2, cfg.R3, cfg.B2, cfg.B3) for e in part):
        bad.append("d")
    pairs_ok = "d" not in bad
    # (e) shiftedness of the pairs
    if pairs_ok:
        e_ok = True
        for l, p in ((0, 1), (0, 2), (1, 2)):
            if not _grid_downset(_pairs_between(cfg.R2, l, p)):
                e_ok = False
            flipped = {(2 - a, 2 - b) for a, b in _pairs_between(cfg.B2, l, p)}
            if not _grid_downset(flipped):
                e_ok = False
        if not e_ok:
            bad.append("e")
        # (g) blue stars
        if not all(sysm.star_centre(block(u), block(v)) in (u, v) for u, v in cfg.B2):
            bad.append("g")
    # (h) red singletons in I, at most five pairs per block, five only as the hook
    h_ok = all(e[0] in I_SET for e in cfg.R1)
    if pairs_ok:
        for l, p in ((0, 1), (0, 2), (1, 2)):
            cells = _pairs_between(cfg.R2, l, p)
            if len(cells) > 5 or (len(cells) == 5 and cells != HOOK):
                h_ok = False
    if not h_ok:
        bad.append("h")
    # (j) many red triples force few red pairs
    if pairs_ok:
        counts = [len(_pairs_between(cfg.R2, l, p)) for l, p in ((0, 1), (0, 2), (1, 2))]
        r3 = len(cfg.R3)
        j_ok = not (r3 >= 20 and max(counts) > 4)
        if r3 >= 22 and all(c == 4 for c in counts):
            if any(set(e) & K_SET for e in cfg.R2):
                j_ok = False
        if not j_ok:
            bad.append("j")
    return not bad, bad
