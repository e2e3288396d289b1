"""Command line: ``p5decomp generate | run | verify``.

Exit codes: 0 ok, 2 parse error, 3 violated precondition, 4 exhausted
search, 5 failed verification.
"""

from __future__ import annotations

import argparse
import sys

from . import generators
from .errors import EXIT_OK, EXIT_PARSE, EXIT_VERIFICATION, P5Error
from .io import format_graph, parse_decomposition, parse_graph
from .pipeline import STAGES, run_pipeline
from .verify import verify_decomposition


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _finish(report, args) -> int:
    sys.stderr.write(report.to_text())
    if args.report:
        _write(args.report, report.to_kv())
    return EXIT_OK if report.overall else EXIT_VERIFICATION


def cmd_generate(args) -> int:
    p = args.params
    if args.kind == "complete_bipartite":
        if len(p) != 2:
            raise SystemExit("complete_bipartite takes nA nB")
        g = generators.complete_bipartite(p[0], p[1])
    elif args.kind == "random_regular_bipartite":
        if len(p) != 2:
            raise SystemExit("random_regular_bipartite takes n d")
        g = generators.random_regular_bipartite(p[0], p[1], seed=args.seed,
                                                min_connectivity=args.min_connectivity)
    else:
        if len(p) < 2:
            raise SystemExit("circulant_bipartite takes n offset [offset ...]")
        g = generators.circulant_bipartite(p[0], p[1:])
    _write(args.output, format_graph(g))
    return EXIT_OK


def cmd_run(args) -> int:
    g = parse_graph(_read(args.input))
    res = run_pipeline(g, args.stage, seed=args.seed, trust_connectivity=args.trust_connectivity,
                       assert_level=args.assert_level, a_side=args.a_side)
    _write(args.output, res.artifact)
    return _finish(res.report, args)


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.graph))
    els = parse_decomposition(_read(args.decomposition))
    rep = verify_decomposition(g, els, expect_kind="P5")
    rep.add("count", [] if 5 * len(els) == g.m else [len(els)], lambda c: f"{c} elements")
    return _finish(rep, args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="p5decomp",
                                 description="Decompose highly edge-connected bipartite graphs into paths of length 5.")
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a bipartite instance")
    gen.add_argument("kind", choices=["complete_bipartite", "random_regular_bipartite", "circulant_bipartite"])
    gen.add_argument("params", type=int, nargs="+")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--min-connectivity", type=int, default=None)
    gen.add_argument("-o", "--output", default=None)
    gen.set_defaults(func=cmd_generate)

    run = sub.add_parser("run", help="run a pipeline stage on a graph file")
    run.add_argument("input")
    run.add_argument("--stage", choices=STAGES, default="decompose")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--trust-connectivity", action="store_true",
                     help="skip the input edge-connectivity certification")
    run.add_argument("--assert-level", choices=["fast", "full"], default="full")
    run.add_argument("--a-side", type=int, choices=[0, 1], default=0,
                     help="class used as A by the factorize and canonical stages")
    run.add_argument("--report", default=None, help="write key=value verification report here")
    run.add_argument("-o", "--output", default=None)
    run.set_defaults(func=cmd_run)

    ver = sub.add_parser("verify", help="check a decomposition file against a graph file")
    ver.add_argument("graph")
    ver.add_argument("decomposition")
    ver.add_argument("--report", default=None)
    ver.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except P5Error as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
