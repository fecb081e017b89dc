"""Command-line entry point: ``collapse-lab <subcommand>``.

Machine-readable output goes to stdout as JSON lines; diagnostics go to
stderr.  Exit status 2 signals a parse or capacity error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Iterator

from . import contract
from .contract import MoveScript, ScriptError
from .enumeration import FILTERS, CensusSpec, ingest_graph6_stream, run_census
from .graph import CapacityError, Graph, Graph6Error, parse_edge_list
from .homology import homology


class InputError(Exception):
    pass


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("COLLAPSE_LAB_WORKERS", "1")))
    except ValueError:
        return 1


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def detect_format(data: bytes) -> str:
    stripped = data.lstrip()
    if not stripped:
        return "graph6"
    first = stripped[0]
    if first == ord("#") or chr(first).isdigit():
        return "edgelist"
    return "graph6"


def read_graphs(paths: list[str], fmt: str = "auto") -> Iterator[Graph]:
    for path in paths or ["-"]:
        data = _read(path)
        kind = detect_format(data) if fmt == "auto" else fmt
        try:
            if kind == "edgelist":
                yield parse_edge_list(data.decode("ascii"))
            else:
                yield from ingest_graph6_stream(data.splitlines())
        except (Graph6Error, CapacityError, ValueError) as exc:
            raise InputError(f"{path}: {exc}") from None


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_classify(args) -> int:
    for g in read_graphs(args.inputs, args.format):
        _emit(contract.classify(g, canonical=args.canonical).to_json())
    return 0


def cmd_homology(args) -> int:
    for g in read_graphs(args.inputs, args.format):
        _emit(homology(g).to_json())
    return 0


def cmd_axiom_check(args) -> int:
    for g in read_graphs(args.inputs, args.format):
        ok, _ = contract.sic_exact(g)
        rep = contract.check_axiom(g, strict_pseudocode=args.strict_pseudocode)
        _emit({
            "n": g.n,
            "m": g.m,
            "sic_exact": ok,
            "holds": rep.holds,
            "failing_vertex": rep.failing_vertex,
            "checked_pairs": rep.checked_pairs,
            "strict_pseudocode": args.strict_pseudocode,
        })
    return 0


def cmd_verify_script(args) -> int:
    try:
        script = MoveScript.from_text(_read(args.script).decode("ascii"))
    except (ValueError, CapacityError) as exc:
        raise InputError(f"{args.script}: {exc}") from None
    try:
        final = contract.verify_script(script)
    except ScriptError as exc:
        _emit({"legal": False, "error": str(exc), "index": exc.index})
        return 1
    reached = final.n == 1
    _emit({"legal": True, "final_n": final.n, "final_m": final.m, "reaches_k1": reached})
    if args.to_k1 and not reached:
        return 1
    return 0


def cmd_search(args) -> int:
    filters = list(args.filter or [])
    if args.strict_pseudocode:
        filters = ["axiom-fails-strict" if f in ("axiom-fails", "axiom_fails") else f for f in filters]
    if args.generate == (args.input is not None):
        print("search: give exactly one of --generate or --input", file=sys.stderr)
        return 2
    try:
        spec = CensusSpec(
            n=args.n,
            source="generate" if args.generate else args.input,
            filters=filters,
            workers=args.workers,
            quiet=args.quiet,
        )
        result = run_census(spec)
    except (Graph6Error, CapacityError) as exc:
        print(f"search: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"search: {exc}", file=sys.stderr)
        return 2
    if args.out:
        jsonl, g6 = result.write(args.out)
        if not args.quiet:
            print(f"wrote {jsonl} and {g6}", file=sys.stderr)
        _emit({"summary": {"total_scanned": result.total_scanned, "pass_counts": result.pass_counts, "matched": len(result.matched)}})
    else:
        sys.stdout.write(result.to_jsonl())
    return 0


def cmd_i_search(args) -> int:
    for g in read_graphs(args.inputs, args.format):
        out = contract.bounded_i_search_outcome(g, args.max_edge_glues, args.max_states)
        _emit({
            "found": out.script is not None,
            "states": out.states,
            "exhausted": out.exhausted,
            "moves": [str(m) for m in out.script.moves] if out.script else None,
            "edge_glues": sum(isinstance(m, contract.GlueEdge) for m in out.script.moves) if out.script else None,
        })
    return 0


def cmd_reproduce(args) -> int:
    from .reproduce import CRITERIA, run_criterion

    if args.target not in CRITERIA:
        print(f"reproduce: unknown criterion {args.target!r}; choose from {', '.join(CRITERIA)}", file=sys.stderr)
        return 2
    checks = run_criterion(args.target, workers=args.workers, input_path=args.input, max_n=args.max_n)
    ok = True
    for check in checks:
        print(check.line())
        ok &= check.passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="collapse-lab", description="Contractibility classes of graphs and their clique complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_inputs(sp):
        sp.add_argument("inputs", nargs="*", help="graph files (graph6 lines or one edge list); '-' or none for stdin")
        sp.add_argument("--format", choices=["auto", "graph6", "edgelist"], default="auto")

    sp = sub.add_parser("classify", help="all class memberships of each input graph")
    graph_inputs(sp)
    sp.add_argument("--canonical", action="store_true", help="relabel canonically before classifying")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("homology", help="reduced integral homology of the clique complex")
    graph_inputs(sp)
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("axiom-check", help="test the common-neighborhood axiom")
    graph_inputs(sp)
    sp.add_argument("--strict-pseudocode", action="store_true", help="only try partners later in vertex order (pairwise loop)")
    sp.set_defaults(func=cmd_axiom_check)

    sp = sub.add_parser("verify-script", help="replay a move script")
    sp.add_argument("script", help="edge-list block followed by DV/GV/DE/GE lines")
    sp.add_argument("--to-k1", action="store_true", help="also require the script to end at one vertex")
    sp.set_defaults(func=cmd_verify_script)

    sp = sub.add_parser("search", help="census over connected graphs")
    sp.add_argument("--n", type=int, help="vertex count (required with --generate)")
    sp.add_argument("--input", help="graph6 stream file, or '-' for stdin")
    sp.add_argument("--generate", action="store_true", help="use the internal generator (n <= 10)")
    sp.add_argument("--filter", action="append", metavar="NAME", help=f"repeatable, applied in order: {', '.join(sorted(FILTERS))}")
    sp.add_argument("--workers", type=int, default=_default_workers(), help="worker processes (default $COLLAPSE_LAB_WORKERS or 1)")
    sp.add_argument("--out", metavar="PREFIX", help="append results to PREFIX.jsonl and PREFIX.g6")
    sp.add_argument("--strict-pseudocode", action="store_true", help="axiom-fails only tries partners later in vertex order")
    sp.add_argument("--quiet", action="store_true", help="no progress reports on stderr")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("i-search", help="bounded search for a reduction using edge gluings")
    graph_inputs(sp)
    sp.add_argument("--max-edge-glues", type=int, default=2)
    sp.add_argument("--max-states", type=int, default=10**6)
    sp.set_defaults(func=cmd_i_search)

    sp = sub.add_parser("reproduce", help="run one acceptance criterion (A1..A6)")
    sp.add_argument("target", help="criterion id, e.g. A3")
    sp.add_argument("--workers", type=int, default=_default_workers())
    sp.add_argument("--input", help="graph6 stream of 11-vertex graphs (A6)")
    sp.add_argument("--max-n", type=int, default=None, help="largest n to sweep where a criterion allows it")
    sp.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"collapse-lab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
