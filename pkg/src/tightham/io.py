"""Text formats.

``.hg``: first non-comment line "k n", then one edge per line as k strictly
increasing 1-based vertex ids.  ``.hgp``: the same header, then a line "R:",
the red edges, a line "B:", the blue edges.  ``#`` starts a comment.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .core import ColouredPair, Hypergraph, HypergraphError


class ParseError(HypergraphError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _ints(lineno: int, line: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {line!r}") from None


def _header(it) -> tuple[int, int]:
    try:
        n, line = next(it)
    except StopIteration:
        raise ParseError(0, "missing 'k n' header") from None
    vals = _ints(n, line)
    if len(vals) != 2 or vals[0] < 1 or vals[1] < 0:
        raise ParseError(n, "header must be 'k n' with k >= 1, n >= 0")
    return vals[0], vals[1]


def _edge(lineno: int, line: str, k: int, n: int, seen: set) -> tuple[int, ...]:
    e = _ints(lineno, line)
    if len(set(e)) != k:
        raise ParseError(lineno, f"arity error: edge has {len(set(e))} distinct vertices, expected {k}")
    if any(v < 1 or v > n for v in e):
        raise ParseError(lineno, f"vertex out of range 1..{n}")
    if any(a >= b for a, b in zip(e, e[1:])):
        raise ParseError(lineno, "vertices must be strictly increasing")
    t = tuple(e)
    if t in seen:
        raise ParseError(lineno, f"duplicate edge {' '.join(map(str, t))}")
    seen.add(t)
    return t


def parse_hypergraph(text: str) -> Hypergraph:
    it = _lines(text)
    k, n = _header(it)
    seen: set = set()
    for lineno, line in it:
        _edge(lineno, line, k, n, seen)
    return Hypergraph(k, n, frozenset(seen))


def emit_hypergraph(G: Hypergraph) -> str:
    out = [f"{G.k} {G.n}"]
    out += [" ".join(map(str, e)) for e in G.sorted_edges]
    return "\n".join(out) + "\n"


def parse_pair(text: str) -> ColouredPair:
    it = _lines(text)
    k, n = _header(it)
    parts: dict[str, set] = {}
    current = None
    for lineno, line in it:
        if line in ("R:", "B:"):
            if line[0] in parts:
                raise ParseError(lineno, f"section {line} repeated")
            current = line[0]
            parts[current] = set()
            continue
        if current is None:
            raise ParseError(lineno, "edge before the 'R:' section")
        t = _edge(lineno, line, k, n, parts[current])
        other = parts.get("B" if current == "R" else "R", ())
        if t in other:
            raise ParseError(lineno, "edge is both red and blue")
    R = Hypergraph(k, n, frozenset(parts.get("R", ())))
    B = Hypergraph(k, n, frozenset(parts.get("B", ())))
    return ColouredPair(R, B)


def emit_pair(P: ColouredPair) -> str:
    out = [f"{P.R.k} {P.R.n}", "R:"]
    out += [" ".join(map(str, e)) for e in P.R.sorted_edges]
    out.append("B:")
    out += [" ".join(map(str, e)) for e in P.B.sorted_edges]
    return "\n".join(out) + "\n"


def read_hypergraph(path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def read_pair(path) -> ColouredPair:
    return parse_pair(Path(path).read_text())


def looks_like_pair(text: str) -> bool:
    return any(line in ("R:", "B:") for _, line in _lines(text))
