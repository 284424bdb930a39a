"""Command-line front end: ``dissoc <command> ...``.

Exit codes: 0 success or pass, 1 verification failure, 2 usage or parse error.

Family specs (``--family``) use ``kind:key=value,...`` with positional
shorthand, for example ``path:9``, ``F:6,i=1``, ``U:10``, ``T:9``,
``units:s=2,t=1``, ``spider:1,2,5``, ``star-product:r=1,parts=2,2,2,2``.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from dataclasses import asdict
from typing import Iterable, Optional

from . import verify as V
from .counting import component_factors, count_recursive, dissociation_polynomial
from .families import FamilySpec
from .graph import Graph, emit_graph6, is_connected, parse_graph6
from .iso import canonical_code, generate_graphs, generate_trees, generate_unicyclic, read_graph6_stream

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _add_input(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--g6", help="a graph in graph6 form")
    src.add_argument("--family", metavar="SPEC", help="a named family member, e.g. path:9")
    src.add_argument("--file", help="file of graph6 lines")
    src.add_argument("--stdin", action="store_true", help="read graph6 lines from standard input")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")


def _read_input(args, stdin) -> list[Graph]:
    if args.g6 is not None:
        return [parse_graph6(args.g6)]
    if args.family is not None:
        return [FamilySpec.parse(args.family).build()]
    if args.file is not None:
        with open(args.file, encoding="ascii") as fh:
            return list(read_graph6_stream(fh, strict=True))
    return list(read_graph6_stream(stdin, strict=True))


def _has_input(args) -> bool:
    return any(getattr(args, k, None) for k in ("g6", "family", "file", "stdin"))


def _csv(rows: Iterable[Iterable], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_count(args, out, stdin) -> int:
    graphs = _read_input(args, stdin)
    rows = []
    for g in graphs:
        d = count_recursive(g)
        rows.append((emit_graph6(g), d, component_factors(g) if args.factors else None))
    if args.format == "json":
        out.write(json.dumps([{"g6": c, "d": d, **({"factors": f} if f is not None else {})}
                              for c, d, f in rows], indent=2) + "\n")
    elif args.format == "csv":
        out.write(_csv(((c, d) for c, d, _ in rows), ["g6", "d"]))
    else:
        for _, d, f in rows:
            out.write(f"{d} = {' * '.join(map(str, f)) or '1'}\n" if f is not None else f"{d}\n")
    return EXIT_OK


def cmd_poly(args, out, stdin) -> int:
    polys = [(emit_graph6(g), dissociation_polynomial(g)) for g in _read_input(args, stdin)]
    if args.format == "json":
        out.write(json.dumps([{"g6": c, "coeffs": list(p), "sum": p.total()} for c, p in polys],
                             indent=2) + "\n")
    elif args.format == "csv":
        out.write(_csv(((c, " ".join(map(str, p)), p.total()) for c, p in polys), ["g6", "coeffs", "sum"]))
    else:
        for _, p in polys:
            out.write(f"{p} (sum {p.total()})\n")
    return EXIT_OK


def _generate(kind: str, n: int) -> Iterable[Graph]:
    if kind == "trees":
        return generate_trees(n)
    if kind == "unicyclic":
        return generate_unicyclic(n)
    return generate_graphs(n)


def cmd_gen(args, out, stdin, err) -> int:
    total = 0
    for g in _generate(args.kind, args.n):
        if args.connected and args.kind == "graphs" and not is_connected(g):
            continue
        out.write(canonical_code(g) + "\n")
        total += 1
    err.write(f"{total} graphs\n")
    return EXIT_OK


def _workers(args) -> int:
    return args.workers if args.workers else V.default_workers()


def cmd_rank(args, out, stdin) -> int:
    if args.trees is not None:
        universe = list(generate_trees(args.trees))
    elif args.unicyclic is not None:
        universe = list(generate_unicyclic(args.unicyclic))
    elif _has_input(args):
        universe = _read_input(args, stdin)
    else:
        raise UsageError("rank needs a universe: --trees N, --unicyclic N, or a graph input")
    entries = V.rank_graphs(universe, args.k, workers=_workers(args))
    if args.format == "json":
        out.write(json.dumps([asdict(e) for e in entries], indent=2) + "\n")
    elif args.format == "csv":
        out.write(_csv(((e.rank, e.count, e.graph) for e in entries), ["rank", "d", "g6"]))
    else:
        for rank, (count, codes) in V.tiers(entries).items():
            out.write(f"{rank}\t{count}\t{len(codes)}\t{' '.join(codes)}\n")
    return EXIT_OK


CLAIMS = ("lemma2.1", "lemma2.2", "lemma2.3", "lemma2.6", "cor2.7", "thm2.4", "thm2.5",
          "thm3.1", "lemma3.1", "main", "main-reduced")


def _need_n(args, default: Optional[int] = None) -> int:
    if args.n is None:
        if default is None:
            raise UsageError(f"{args.claim} needs --n")
        return default
    return args.n


def run_claim(args, stdin) -> V.VerificationReport:
    c = args.claim
    w = _workers(args)
    if c == "lemma2.1":
        return V.verify_upper_bound_all(args.max_n or 7)
    if c == "lemma2.2":
        return V.verify_recurrence_all(args.max_n or 6)
    if c == "lemma2.3":
        if _has_input(args):
            return V.verify_edge_deletion_all(_read_input(args, stdin))
        return V.verify_edge_deletion_all(max_n=args.max_n or 7)
    if c == "lemma2.6":
        return V.verify_rewiring_random(args.samples or 500, args.max_n or 12, args.seed)
    if c == "cor2.7":
        return V.verify_quasi_pendant(_need_n(args, 9))
    if c == "thm2.4":
        n = _need_n(args)
        return V.verify_connected_maximum(n) if n <= 7 else V.verify_tree_theorems(n, w)
    if c == "thm2.5":
        return V.verify_unicyclic_theorem(_need_n(args), w)
    if c == "thm3.1":
        n = _need_n(args)
        if n < 9:
            raise UsageError("thm3.1 needs --n >= 9")
        return V.verify_tree_theorems(n, w)
    if c == "lemma3.1":
        return V.reproduce_appendix(_need_n(args, 9), w)[1]
    if c == "main-reduced":
        return V.verify_second_largest_reduced(_need_n(args, 9))
    n = _need_n(args, 9)
    if _has_input(args):
        return V.verify_second_largest(n, _read_input(args, stdin), partial=args.partial, workers=w)
    return V.verify_dense_sampled(n, args.samples or 10_000, args.seed)


def cmd_verify(args, out, stdin) -> int:
    report = run_claim(args, stdin)
    if args.format == "json":
        out.write(report.to_json() + "\n")
    elif args.format == "csv":
        out.write(_csv([(report.claim, report.verdict, report.checked, " ".join(report.witnesses))],
                       ["claim", "verdict", "checked", "witnesses"]))
    else:
        out.write(report.to_text() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_appendix(args, out, stdin) -> int:
    rows, report = V.reproduce_appendix(args.n, _workers(args))
    if args.format == "json":
        out.write(json.dumps({"rows": rows, "report": report.to_dict()}, indent=2) + "\n")
    elif args.format == "csv":
        out.write(_csv(((r["g6"], r["d"], r["tier"]) for r in rows), ["g6", "d", "tier"]))
    else:
        for r in rows:
            out.write(f"{r['tier']:>3}  {r['d']:>6}  {r['g6']}\n")
        out.write(report.to_text() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def _appendix_n(text: str) -> int:
    n = int(text)
    if n not in (9, 10):
        raise argparse.ArgumentTypeError("appendix tables exist for n = 9 and 10 only")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dissoc", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact number of dissociation sets")
    _add_input(p)
    p.add_argument("--factors", action="store_true", help="also print per-component factors")
    _add_format(p)

    p = sub.add_parser("poly", help="dissociation polynomial coefficients d(G,0..n)")
    _add_input(p)
    _add_format(p)

    p = sub.add_parser("gen", help="canonical graph6 lines, one per isomorphism class")
    p.add_argument("kind", choices=("trees", "unicyclic", "graphs"))
    p.add_argument("n", type=int)
    p.add_argument("--emit", choices=("g6",), default="g6")
    p.add_argument("--connected", action="store_true", help="with 'graphs': connected only")

    p = sub.add_parser("rank", help="top-k tiers of a graph universe by dissociation count")
    uni = p.add_argument_group("universe")
    uni.add_argument("--trees", type=int, metavar="N")
    uni.add_argument("--unicyclic", type=int, metavar="N")
    _add_input(p, required=False)
    p.add_argument("-k", type=int, default=2)
    p.add_argument("--workers", type=int, default=0)
    _add_format(p)

    p = sub.add_parser("verify", help="check a lemma or theorem statement")
    p.add_argument("claim", choices=CLAIMS)
    p.add_argument("--n", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--partial", action="store_true", help="the supplied stream is not exhaustive")
    p.add_argument("--workers", type=int, default=0)
    _add_input(p, required=False)
    _add_format(p)

    p = sub.add_parser("appendix", help="all trees of order 9 or 10 with counts and tiers")
    p.add_argument("n", type=_appendix_n)
    p.add_argument("--workers", type=int, default=0)
    _add_format(p)
    return ap


def main(argv: Optional[list[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        # argparse writes usage and help straight to sys streams
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "k", 1) < 1:
        err.write("dissoc: error: -k must be >= 1\n")
        return EXIT_USAGE
    try:
        if args.command == "count":
            return cmd_count(args, out, stdin)
        if args.command == "poly":
            return cmd_poly(args, out, stdin)
        if args.command == "gen":
            return cmd_gen(args, out, stdin, err)
        if args.command == "rank":
            return cmd_rank(args, out, stdin)
        if args.command == "verify":
            return cmd_verify(args, out, stdin)
        return cmd_appendix(args, out, stdin)
    except (UsageError, ValueError, OSError) as exc:
        err.write(f"dissoc: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
