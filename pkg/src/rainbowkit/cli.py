"""``rainbowkit`` command line: JSON results on stdout, diagnostics on stderr.

Exit codes: 0 success, 1 for a "no" answer (or a failed verification or
equivalence run), 2 for usage, input and solver-limit errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import equivalence
from .exact_solver import (
    SolverLimitError,
    UnsatisfiablePairError,
    decide_subset_rc,
    maxpairs2_exact,
    rc_directed_exact,
    rc_exact,
    src_exact,
    subset_rc_exact,
)
from .fileio import (
    ParseError,
    coloring_to_json,
    format_graph,
    format_pairs,
    parse_cnf,
    parse_coloring,
    parse_graph,
    parse_pairs,
    provenance_to_json,
)
from .fpt_kernel import decide_maxpairs2, kernelize
from .graph_core import GraphError, PairSet
from .rainbow_check import ColorCapError, count_rainbow_pairs, verify_pairs
from .reductions import (
    GadgetParams,
    reduce_3sat_to_dir_rc2,
    reduce_3sat_to_dir_subset_rc2,
    reduce_dir_subset_to_dir_rc2,
    reduce_subset_rc_to_rc_odd,
    reduce_subset_src_to_src,
    reduce_vc_to_subset_src,
)

SCHEMA = 1
EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2

REDUCE_KINDS = (
    "vc-to-subset-src",
    "subset-src-to-src",
    "subset-rc-to-rc",
    "sat-to-dir-subset",
    "sat-to-dir-rc2",
    "dir-subset-to-dir-rc2",
)


@dataclass
class RunReport:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    result: dict = field(default_factory=dict)
    wall_time: float = 0.0
    exit_code: int = EXIT_OK

    def payload(self) -> dict:
        return {"schema": SCHEMA, "command": self.command, "inputs": self.inputs, **self.result}

    def to_json(self) -> str:
        return json.dumps(self.payload(), indent=1) + "\n"


class _Inputs:
    """Reads input files and remembers their digests for the report."""

    def __init__(self) -> None:
        self.digests: dict[str, str] = {}

    def read(self, path: str) -> str:
        data = Path(path).read_bytes()
        self.digests[path] = hashlib.sha256(data).hexdigest()
        return data.decode()

    def graph(self, path: str):
        return parse_graph(self.read(path))

    def pairs(self, path: str | None, g) -> PairSet | None:
        return None if path is None else parse_pairs(self.read(path), g.n)


def _solve_payload(key: str, res) -> dict:
    return {key: res.value, "k": res.witness.k, "witness": coloring_to_json(res.witness)}


def _decision(answer, k: int, **extra) -> tuple[dict, int]:
    out = {"k": k, "answer": answer is not None, **extra}
    if answer is not None:
        out["witness"] = coloring_to_json(answer)
    return out, EXIT_OK if answer is not None else EXIT_NO


def _cmd_optimum(args, io: _Inputs) -> tuple[dict, int]:
    g = io.graph(args.graph)
    solver = {"rc": rc_exact, "src": src_exact, "rc-directed": rc_directed_exact}[args.command]
    res = solver(g, prune=not args.no_prune, max_edges=args.max_edges)
    return _solve_payload(args.command.replace("-", "_"), res), EXIT_OK


def _cmd_subset(args, io: _Inputs) -> tuple[dict, int]:
    g = io.graph(args.graph)
    p = io.pairs(args.pairs, g)
    mode = "geodesic" if args.command == "subset-src" else args.mode
    if mode is None:
        mode = "directed" if g.directed else "plain"
    kw = dict(prune=not args.no_prune, max_edges=args.max_edges)
    if args.k is None:
        res = subset_rc_exact(g, p, mode, **kw)
        return {"mode": mode, **_solve_payload(args.command.replace("-", "_"), res)}, EXIT_OK
    try:
        witness = decide_subset_rc(g, p, args.k, mode, **kw)
    except UnsatisfiablePairError as exc:
        u, v = exc.pair
        return {"mode": mode, "k": args.k, "answer": False,
                "reason": f"no path joins {u + 1} and {v + 1}"}, EXIT_NO
    return _decision(witness, args.k, mode=mode)


def _cmd_maxpairs2(args, io: _Inputs) -> tuple[dict, int]:
    g = io.graph(args.graph)
    res = maxpairs2_exact(g, max_edges=args.max_edges)
    return {"maxpairs2": res.value, "edges": g.m, "witness": coloring_to_json(res.witness)}, EXIT_OK


def _cmd_decide_maxpairs2(args, io: _Inputs) -> tuple[dict, int]:
    g = io.graph(args.graph)
    d = decide_maxpairs2(g, args.k, max_edges=args.max_edges)
    out = {"k": args.k, "target": g.m + args.k, "answer": d.answer, "kernel_result": d.result.to_json()}
    if d.exact_value is not None:
        out["kernel_optimum"] = d.exact_value
    if d.witness is not None:
        out["certified_count"] = count_rainbow_pairs(g, d.witness)
        out["witness"] = coloring_to_json(d.witness)
    return out, EXIT_OK if d.answer else EXIT_NO


def _cmd_kernelize(args, io: _Inputs) -> tuple[dict, int]:
    res = kernelize(io.graph(args.graph), args.k)
    return res.to_json(), EXIT_NO if res.outcome == "no" else EXIT_OK


def _cmd_verify(args, io: _Inputs) -> tuple[dict, int]:
    g = io.graph(args.graph)
    c = parse_coloring(io.read(args.coloring), g)
    p = io.pairs(args.pairs, g) or PairSet.all_pairs(g.n)
    mode = args.mode or ("directed" if g.directed else "plain")
    rep = verify_pairs(g, c, p, mode)
    out = {
        "mode": mode,
        "ok": rep.ok,
        "pairs": len(p),
        "satisfied": rep.count_satisfied,
        "unsatisfied": [[u + 1, v + 1] for u, v in rep.unsatisfied],
    }
    return out, EXIT_OK if rep.ok else EXIT_NO


def _reduce(args, io: _Inputs):
    kind = args.kind
    if kind in ("sat-to-dir-subset", "sat-to-dir-rc2"):
        f = parse_cnf(io.read(args.input))
        return (reduce_3sat_to_dir_subset_rc2 if kind == "sat-to-dir-subset" else reduce_3sat_to_dir_rc2)(f)
    g = io.graph(args.input)
    if kind == "vc-to-subset-src":
        return reduce_vc_to_subset_src(g, args.k or 3)
    if args.pairs is None:
        raise GraphError(f"{kind} needs --pairs")
    p = io.pairs(args.pairs, g)
    if kind == "subset-src-to-src":
        return reduce_subset_src_to_src(g, p, args.k or 3)
    if kind == "subset-rc-to-rc":
        return reduce_subset_rc_to_rc_odd(g, p, GadgetParams(args.k or 3))
    return reduce_dir_subset_to_dir_rc2(g, p)


def _cmd_reduce(args, io: _Inputs) -> tuple[dict, int]:
    red = _reduce(args, io)
    g = red.graph
    out = {
        "reduction": red.kind,
        "k": red.k,
        "graph": {"n": g.n, "m": g.m, "directed": g.directed, "edges": [[u + 1, v + 1] for u, v in g.edges]},
        "pairs": None if red.pairs is None else [[u + 1, v + 1] for u, v in red.pairs],
        "provenance": json.loads(provenance_to_json(red.provenance)),
    }
    if args.out:
        written = [f"{args.out}.col", f"{args.out}.prov.json"]
        Path(written[0]).write_text(format_graph(g))
        Path(written[1]).write_text(provenance_to_json(red.provenance))
        if red.pairs is not None:
            written.insert(1, f"{args.out}.pairs")
            Path(written[1]).write_text(format_pairs(red.pairs))
        out["files"] = written
    return out, EXIT_OK


def _cmd_oracle_equiv(args, io: _Inputs) -> tuple[dict, int]:
    rep = equivalence.run(args.reduction, args.trials, args.seed)
    return {**rep.to_json(), "seed": args.seed}, EXIT_OK if rep.ok else EXIT_NO


def _solver_flags(sp: argparse.ArgumentParser, prune: bool = True) -> None:
    if prune:
        sp.add_argument("--no-prune", action="store_true", help="plain enumeration of canonical colourings")
    sp.add_argument("--max-edges", type=int, default=None,
                    help="refuse graphs with more edges (default 24 for exhaustive enumeration)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rainbowkit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    for name, what in (("rc", "rainbow connection number"),
                       ("src", "strong rainbow connection number"),
                       ("rc-directed", "rainbow connection number of a directed graph")):
        sp = sub.add_parser(name, help=what)
        sp.add_argument("graph")
        _solver_flags(sp)
        sp.set_defaults(func=_cmd_optimum)

    for name in ("subset-rc", "subset-src"):
        sp = sub.add_parser(name, help=f"{name.replace('-', ' ')}: optimum, or a decision with --k")
        sp.add_argument("graph")
        sp.add_argument("--pairs", required=True)
        if name == "subset-rc":
            sp.add_argument("--mode", choices=("plain", "geodesic", "directed"), default=None)
        sp.add_argument("--k", type=int, default=None)
        _solver_flags(sp)
        sp.set_defaults(func=_cmd_subset)

    sp = sub.add_parser("maxpairs2", help="most pairs a 2-colouring rainbow-connects")
    sp.add_argument("graph")
    _solver_flags(sp, prune=False)
    sp.set_defaults(func=_cmd_maxpairs2)

    sp = sub.add_parser("decide-maxpairs2", help="at least |E|+k rainbow-connected pairs with 2 colours?")
    sp.add_argument("graph")
    sp.add_argument("--k", type=int, required=True)
    _solver_flags(sp, prune=False)
    sp.set_defaults(func=_cmd_decide_maxpairs2)

    sp = sub.add_parser("kernelize", help="run the 2-colour max-pairs kernel cascade")
    sp.add_argument("graph")
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=_cmd_kernelize)

    sp = sub.add_parser("verify", help="check a colouring against a pair set")
    sp.add_argument("graph")
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--pairs", default=None, help="default: all vertex pairs")
    sp.add_argument("--mode", choices=("plain", "geodesic", "directed"), default=None)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("reduce", help="build a reduction target")
    sp.add_argument("kind", choices=REDUCE_KINDS)
    sp.add_argument("input", help="graph file, or DIMACS CNF for the sat-* reductions")
    sp.add_argument("--pairs", default=None)
    sp.add_argument("--k", type=int, default=None, help="colour budget (default 3)")
    sp.add_argument("--out", default=None, help="write PREFIX.col, PREFIX.pairs and PREFIX.prov.json")
    sp.set_defaults(func=_cmd_reduce)

    sp = sub.add_parser("oracle-equiv", help="brute-force both sides of a reduction on small instances")
    sp.add_argument("reduction", choices=equivalence.REDUCTIONS)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_oracle_equiv)
    return ap


_INPUT_ERRORS = (ParseError, GraphError, ValueError, SolverLimitError, ColorCapError, OSError)


def cli_dispatch(argv: list[str] | None = None) -> RunReport:
    """Parse ``argv`` and run the command. Usage errors raise ``SystemExit(2)``."""
    args = build_parser().parse_args(argv)
    io = _Inputs()
    start = time.perf_counter()
    try:
        result, code = args.func(args, io)
    except _INPUT_ERRORS as exc:
        result, code = {"error": f"{type(exc).__name__}: {exc}"}, EXIT_ERROR
    return RunReport(args.command, io.digests, result, time.perf_counter() - start, code)


def main(argv: list[str] | None = None) -> int:
    report = cli_dispatch(argv)
    if report.exit_code == EXIT_ERROR:
        print(f"rainbowkit {report.command}: {report.result['error']}", file=sys.stderr)
    else:
        sys.stdout.write(report.to_json())
    print(f"wall time {report.wall_time:.3f}s", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
