"""Command-line front end.

Every subcommand prints a human-readable summary of ``key=value`` lines and,
with --report-out, writes the deterministic part of it to a file.  Exit
codes: 0 success, 1 verification failure, 2 usage or input error, 3 timeout.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .core import ColouredPair, HypergraphError, tight_components
from .io import emit_hypergraph, emit_pair, looks_like_pair, parse_hypergraph, parse_pair

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3


class Report:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.extra: list[str] = []  # shown on stdout only (timings)

    def add(self, key: str, value) -> None:
        self.lines.append(f"{key}={_fmt(value)}")

    def raw(self, line: str) -> None:
        self.lines.append(line)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    return str(v)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1/100, got {text!r}") from None


def _tol(text: str) -> float:
    return float(_rational(text))


def _read_text(path: Optional[str]) -> str:
    if path is None:
        raise HypergraphError("--input is required")
    return Path(path).read_text()


def _graph(args):
    return parse_hypergraph(_read_text(args.input))


def _cycle(seq) -> str:
    return " ".join(map(str, seq))


# -- subcommands -------------------------------------------------------------

def cmd_components(args, rep: Report) -> int:
    G = _graph(args)
    comps = tight_components(G)
    rep.raw(f"components={len(comps)} sizes={','.join(str(C.e) for C in comps)}")
    return EXIT_OK


def cmd_shift(args, rep: Report) -> int:
    from .shifting import (
        canonicalize_pair,
        is_left_shifted,
        is_right_shifted,
        left_shift_closure,
        right_shift_closure,
        shift,
        shift_pair,
    )

    text = _read_text(args.input)
    single = args.i is not None and args.j is not None
    if args.direction == "pair" or looks_like_pair(text):
        P = parse_pair(text)
        if single:
            out = shift_pair(P, args.i, args.j)
            rounds = 1
        else:
            can = canonicalize_pair(P)
            out, rounds = can.pair, can.rounds
        rep.add("red_edges", out.R.e)
        rep.add("blue_edges", out.B.e)
        rep.add("rounds", rounds)
        rep.add("distinguishable", out.is_distinguishable())
        rep.add("red_left_shifted", is_left_shifted(out.R))
        rep.add("blue_right_shifted", is_right_shifted(out.B))
        text_out = emit_pair(out)
    else:
        G = parse_hypergraph(text)
        if single:
            H = shift(G, args.i, args.j)
        elif args.direction == "left":
            H = left_shift_closure(G)
        else:
            H = right_shift_closure(G)
        rep.add("edges", H.e)
        rep.add("left_shifted", is_left_shifted(H))
        rep.add("right_shifted", is_right_shifted(H))
        text_out = emit_hypergraph(H)
    if args.output:
        Path(args.output).write_text(text_out)
        rep.add("output", args.output)
    else:
        rep.extra.append(text_out.rstrip("\n"))
    return EXIT_OK


def cmd_matching(args, rep: Report) -> int:
    from .matchcycle import max_matching

    M = max_matching(_graph(args), args.time_limit)
    rep.add("matching", len(M.edges))
    rep.add("certificate", ";".join(_cycle(e) for e in sorted(M.edges)))
    _write_cert(args, "\n".join(_cycle(e) for e in sorted(M.edges)))
    return EXIT_OK


def _write_cert(args, text: str) -> None:
    if getattr(args, "certificate_out", None):
        Path(args.certificate_out).write_text(text + "\n")


def cmd_hamilton(args, rep: Report) -> int:
    from .matchcycle import has_tight_hamilton

    res = has_tight_hamilton(_graph(args), args.time_limit)
    if res.status is None:
        rep.add("hamilton", "unknown")
        rep.add("note", res.note or "time limit reached")
        return EXIT_TIMEOUT
    if res.status:
        rep.raw(f"hamilton=true certificate={_cycle(res.certificate)}")
        _write_cert(args, _cycle(res.certificate))
    else:
        rep.add("hamilton", False)
        if res.note:
            rep.add("note", res.note)
    return EXIT_OK


def cmd_longest_cycle(args, rep: Report) -> int:
    from .matchcycle import longest_tight_cycle

    res = longest_tight_cycle(_graph(args), args.time_limit)
    rep.add("longest_cycle", res.length)
    rep.add("optimal", res.optimal)
    rep.add("certificate", _cycle(res.cycle) if res.cycle else "none")
    if res.cycle:
        _write_cert(args, _cycle(res.cycle))
    return EXIT_OK if res.optimal else EXIT_TIMEOUT


def cmd_construct(args, rep: Report) -> int:
    from .constructions import gen_emc_clique, gen_emc_cover, gen_split_kgraph

    if args.family == "split":
        a = args.a if args.a is not None else args.k // 2
        G = gen_split_kgraph(args.k, args.nx, args.ny, a)
    else:
        if args.n is None or args.s is None:
            raise HypergraphError("--n and --s are required for this family")
        gen = gen_emc_clique if args.family == "emc-clique" else gen_emc_cover
        G = gen(args.n, args.s, args.k)
    rep.add("family", args.family)
    rep.add("k", G.k)
    rep.add("n", G.n)
    rep.add("edges", G.e)
    if args.output:
        Path(args.output).write_text(emit_hypergraph(G))
        rep.add("output", args.output)
    else:
        rep.extra.append(emit_hypergraph(G).rstrip("\n"))
    return EXIT_OK


def cmd_mu(args, rep: Report) -> int:
    from .extremal import mu_bruteforce

    res = mu_bruteforce(args.n, args.s, args.t, workers=args.workers, uncertified=args.uncertified)
    rep.add("n", args.n)
    rep.add("s", args.s)
    rep.add("t", args.t)
    rep.add("mu", res.value if not res.empty else "empty")
    rep.add("witnesses", len(res.witnesses))
    rep.add("families_scanned", res.families_scanned)
    if res.witnesses:
        R, B = res.witnesses[0]
        text = emit_pair(ColouredPair(R, B))
        if args.output:
            Path(args.output).write_text(text)
            rep.add("witness_file", args.output)
    return EXIT_OK


def cmd_emc(args, rep: Report) -> int:
    from .extremal import emc_max_edges

    res = emc_max_edges(args.n, args.s, workers=args.workers, uncertified=args.uncertified)
    rep.add("n", args.n)
    rep.add("s", args.s)
    rep.add("emc", res.value)
    rep.add("formula", res.formula)
    rep.add("matches_formula", res.matches_formula)
    rep.add("families_scanned", res.families_scanned)
    if args.output:
        Path(args.output).write_text(emit_hypergraph(res.witness))
        rep.add("witness_file", args.output)
    return EXIT_OK


def cmd_mono_triangles(args, rep: Report) -> int:
    from math import comb

    from .extremal import mono_triangle_extremum

    tmin = args.tmin if args.tmin is not None else -(-comb(args.n, 3) // 8)
    res = mono_triangle_extremum(args.n, tmin, allow_large=args.uncertified)
    rep.add("n", args.n)
    rep.add("tmin", tmin)
    rep.add("value", res.value)
    rep.add("red", res.red)
    rep.add("blue", res.blue)
    rep.add("reference", f"{Fraction(5, 8) * comb(args.n, 3)}")
    rep.add("colourings_scanned", res.colourings_scanned)
    if res.witness is not None:
        rep.add("red_pairs", ";".join(f"{a} {b}" for a, b in sorted(res.witness.red)))
    return EXIT_OK


def cmd_connect_partition(args, rep: Report) -> int:
    from .extremal import connection_partition

    G = _graph(args)
    res = connection_partition(G, args.epsilon)
    d = res.diagnostics
    rep.add("red_edges", res.R.e)
    rep.add("blue_edges", res.B.e)
    rep.add("density", d.total)
    rep.add("largest_component", d.largest)
    rep.add("cut_index", d.index)
    rep.add("hypotheses_hold", d.hypotheses)
    rep.add("hypothesis_failed", d.hypothesis_failed)
    rep.add("conclusion_max", d.concl_max)
    rep.add("conclusion_min", d.concl_min)
    rep.add("distinguishable", ColouredPair(res.R, res.B).is_distinguishable())
    if args.output:
        Path(args.output).write_text(emit_pair(ColouredPair(res.R, res.B)))
        rep.add("output", args.output)
    return EXIT_OK


def cmd_verify_fact(args, rep: Report) -> int:
    from .localstruct.fact import check_fact

    res = check_fact(tol=args.tol, grid_step=args.sigma_grid)
    for line in res.lines:
        s, p, t = line.triple
        rep.raw(
            f"triple=({s},{p},{t}) max={line.max_value:.12f} sigma*={line.argmax:.12f} "
            f"{'pass' if line.passed else 'fail'}"
        )
    rep.add("result", "pass" if res.passed else "fail")
    return EXIT_OK if res.passed else EXIT_FAIL


def _local(args):
    from .localstruct.verify import verify_local_structure

    return verify_local_structure(tol=args.tol, workers=args.workers, exhaustive=args.exhaustive)


def cmd_verify_local(args, rep: Report) -> int:
    from .localstruct.fact import grid_max
    from .localstruct.config import format_config

    res = _local(args)
    for line in res.lines():
        rep.raw(line)
    gv, _ = grid_max(res.max_q1, res.max_q2, res.max_t, args.sigma_grid)
    rep.add("witness_grid_max", f"{gv:.12f}")
    rep.raw("witness:")
    rep.raw(format_config(res.witness).rstrip("\n"))
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_verify_claims(args, rep: Report) -> int:
    res = _local(args)
    for s in res.subreports:
        rep.raw(f"claim.{s.name}={s.value} bound={s.bound} {'pass' if s.passed else 'fail'}")
    ok = all(s.passed for s in res.subreports)
    rep.add("result", "pass" if ok else "fail")
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report-out", help="write key=value report lines to this path")
    common.add_argument("--seed", type=int, default=0, help="reserved for randomised drivers; every current subcommand is deterministic")

    parser = argparse.ArgumentParser(prog="tightham", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *, io=False, timed=False, workers=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if io:
            p.add_argument("--input", required=True, help=".hg or .hgp file")
            p.add_argument("--output", help="output file")
        if timed:
            p.add_argument("--time-limit", type=float, default=60.0, help="seconds; 0 disables")
            p.add_argument("--certificate-out", help="write the certificate here")
        if workers:
            p.add_argument("--workers", type=int, default=1)
            p.add_argument("--uncertified", action="store_true", help="lift the size limits")
        p.set_defaults(func=func)
        return p

    add("components", cmd_components, "tight components of a k-graph", io=True)
    p = add("shift", cmd_shift, "shift a graph or a coloured pair", io=True)
    p.add_argument("--direction", choices=("left", "right", "pair"), default="left")
    p.add_argument("--i", type=int, help="single (i,j)-shift instead of the closure")
    p.add_argument("--j", type=int)
    add("matching", cmd_matching, "maximum matching", io=True, timed=True)
    add("hamilton", cmd_hamilton, "tight Hamilton cycle search", io=True, timed=True)
    add("longest-cycle", cmd_longest_cycle, "longest tight cycle", io=True, timed=True)

    p = add("construct", cmd_construct, "generate an extremal construction")
    p.add_argument("--family", choices=("split", "emc-clique", "emc-cover"), required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--nx", type=int, default=3)
    p.add_argument("--ny", type=int, default=3)
    p.add_argument("--a", type=int, help="forbidden |e & X| (default floor(k/2))")
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--output")

    p = add("mu", cmd_mu, "mu(n,s,t) by shifted brute force", workers=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--output", help="witness pair file")

    p = add("emc", cmd_emc, "largest 3-graph without an (s+1)-matching", workers=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--output", help="witness graph file")

    p = add("mono-triangles", cmd_mono_triangles, "monochromatic triangle extremum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tmin", type=int, help="default ceil(binom(n,3)/8)")
    p.add_argument("--uncertified", action="store_true", help="allow n = 8")

    p = add("connect-partition", cmd_connect_partition, "split tight components into two halves", io=True)
    p.add_argument("--epsilon", type=_rational, default=Fraction(1, 100))

    p = add("verify-fact", cmd_verify_fact, "check the cubic bound for the listed triples")
    p.add_argument("--tol", type=_tol, default=1e-9)
    p.add_argument("--sigma-grid", type=float, default=1e-3)

    for name, func, text in (
        ("verify-local", cmd_verify_local, "maximise the local bound over all configurations"),
        ("verify-claims", cmd_verify_claims, "re-check the intermediate claims"),
    ):
        p = add(name, func, text)
        p.add_argument("--tol", type=_tol, default=1e-9)
        p.add_argument("--sigma-grid", type=float, default=1e-3)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--exhaustive", action="store_true", help="arbitrary red triple sets")
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    from .matchcycle import SearchTimeout

    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "time_limit", None) == 0:
        args.time_limit = None
    rep = Report()
    start = time.perf_counter()
    try:
        code = args.func(args, rep)
    except SearchTimeout as exc:
        rep.add("status", "timeout")
        best = getattr(exc, "best", None)
        if best is not None:
            rep.add("partial", best)
        code = EXIT_TIMEOUT
    except (HypergraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for line in rep.lines + rep.extra:
        print(line, file=out)
    print(f"elapsed={time.perf_counter() - start:.3f}s", file=out)
    if args.report_out:
        Path(args.report_out).write_text("\n".join(rep.lines) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
