"""Command line front door: graphs, encoding, solving, verification, proofs.

Exit codes
----------
0  completed with a conclusive verdict (UNSAT / PROVED / valid drawing / done)
1  completed, no conclusion: the instance is satisfiable or the drawing is invalid
2  usage error (bad flags, unknown graph name)
3  budget exhausted before a verdict
4  I/O error or malformed input file
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import platform
import re
import shlex
import subprocess
import sys
import tempfile
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .cnf import CnfInstance, DimacsError, eval_model, model_to_literals, parse_dimacs, parse_model, write_dimacs
from .encode import encode
from .graphs import Graph, GraphFormatError, gyro_bipyramid, k_star, named_graph, parse_graph, serialize_graph
from .orientation import parse_points, perturb, serialize_points
from .solver import Outcome, SolverConfig, SolverResult, solve
from .verify import DrawingError, check_representation, parse_drawing

EXIT_OK = 0
EXIT_SAT = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_IO = 4


class CliError(Exception):
    def __init__(self, msg, code):
        super().__init__(msg)
        self.code = code


@dataclass
class RunManifest:
    command: list
    graph_sha256: Optional[str]
    mode: Optional[str]
    max_path_len: Optional[int]
    solver: str  # "embedded" or the external command line
    solver_config: dict
    outcome: str
    stats: dict = field(default_factory=dict)
    cnf_sha256: Optional[str] = None
    version: str = __version__
    python: str = platform.python_version()

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))


# ---------------------------------------------------------------- helpers

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from None


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_IO) from None


def load_graph(arg: str) -> Graph:
    """A graph file (JSON or graph6), ``-`` for stdin, or a catalog name like ``gyro(4)``."""
    if arg == "-" or os.path.exists(arg):
        try:
            return parse_graph(_read_text(arg))
        except (GraphFormatError, ValueError) as exc:
            raise CliError(f"{arg}: {exc}", EXIT_IO) from None
    try:
        return named_graph(arg)
    except (KeyError, TypeError, ValueError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        raise CliError(f"{arg!r} is neither a file nor a catalog graph: {msg}", EXIT_USAGE) from None


def graph_label(arg: str) -> str:
    m = re.fullmatch(r"\s*gyro\s*\(\s*(\d+)\s*\)\s*", arg)
    if m:
        return f"X_{m.group(1)}"
    if os.path.exists(arg):
        return Path(arg).stem
    return arg.strip()


def _cnf_comment(inst: CnfInstance, key: str) -> Optional[str]:
    for c in inst.comments:
        if c.startswith(key + " "):
            return c[len(key) + 1:]
    return None


def _solver_config(args) -> SolverConfig:
    return SolverConfig(seed=args.seed, conflict_budget=args.conflict_budget, time_budget=args.time_budget)


def run_external(cmd: str, inst: CnfInstance, timeout: Optional[float] = None) -> SolverResult:
    """Run an external DIMACS solver and read its ``s`` / ``v`` lines.

    ``{cnf}`` in ``cmd`` is replaced by the instance path; otherwise the path
    is appended. A claimed model is checked against the instance.
    """
    with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as fh:
        fh.write(write_dimacs(inst))
        path = fh.name
    try:
        argv = shlex.split(cmd.replace("{cnf}", path)) if "{cnf}" in cmd else shlex.split(cmd) + [path]
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=timeout)
        except FileNotFoundError:
            raise CliError(f"external solver not found: {argv[0]}", EXIT_IO) from None
        except subprocess.TimeoutExpired:
            return SolverResult(Outcome.INDETERMINATE, None, dict(external_timeout=timeout))
    finally:
        os.unlink(path)
    status = None
    for line in proc.stdout.splitlines():
        if line.startswith("s "):
            status = line[2:].strip()
    stats = dict(external_returncode=proc.returncode)
    if status == "UNSATISFIABLE":
        return SolverResult(Outcome.UNSAT, None, stats)
    if status == "SATISFIABLE":
        try:
            model = parse_model(proc.stdout, inst.num_vars, fill_missing=True)
        except DimacsError as exc:
            raise CliError(f"external solver output: {exc}", EXIT_IO) from None
        ok, bad = eval_model(inst, model)
        if not ok:
            raise CliError(f"external solver model violates clause #{bad}", EXIT_IO)
        return SolverResult(Outcome.SAT, model, stats)
    return SolverResult(Outcome.INDETERMINATE, None, stats)


def _run_solver(args, inst):
    if args.external_solver:
        res = run_external(args.external_solver, inst, args.time_budget)
        return res, args.external_solver
    return solve(inst, _solver_config(args)), "embedded"


def _manifest(args, argv, inst, res, solver_name) -> RunManifest:
    meta_cap = inst.meta.get("max_path_len", "missing") if inst.meta else "missing"
    if meta_cap == "missing":
        raw = _cnf_comment(inst, "max-path-len")
        meta_cap = None if raw in (None, "none") else int(raw)
    stats = {k: (round(v, 3) if isinstance(v, float) else v) for k, v in res.stats.items()}
    return RunManifest(
        command=list(argv),
        graph_sha256=_cnf_comment(inst, "graph-sha256"),
        mode=inst.meta.get("mode") if inst.meta else _cnf_comment(inst, "mode"),
        max_path_len=meta_cap,
        solver=solver_name,
        solver_config=asdict(_solver_config(args)),
        outcome=res.outcome.value,
        stats=stats,
        cnf_sha256=hashlib.sha256(write_dimacs(inst).encode()).hexdigest(),
    )


_OUTCOME_EXIT = {Outcome.UNSAT: EXIT_OK, Outcome.SAT: EXIT_SAT, Outcome.INDETERMINATE: EXIT_BUDGET}


# ---------------------------------------------------------------- commands

def cmd_graph(args, argv) -> int:
    if args.kind == "gyro":
        G = gyro_bipyramid(args.n)
    elif args.kind == "kstar":
        G = k_star(args.a, args.b)
    elif args.kind == "named":
        try:
            G = named_graph(args.name)
        except (KeyError, TypeError, ValueError) as exc:
            raise CliError(exc.args[0] if exc.args else str(exc), EXIT_USAGE) from None
    else:  # graph6
        try:
            G = parse_graph(args.text)
        except GraphFormatError as exc:
            raise CliError(str(exc), EXIT_IO) from None
    _write_text(args.out, serialize_graph(G) + "\n")
    return EXIT_OK


def summary_lines(inst: CnfInstance) -> list:
    out = [f"variables {inst.num_vars}", f"clauses {inst.num_clauses}"]
    for name, k in inst.meta["counts"].items():
        out.append(f"  {name} {k}")
    return out


def _encode_from_args(args):
    G = load_graph(args.graph)
    try:
        return G, encode(G, args.mode, args.max_path_len, args.jobs, args.shared_vertex, args.avoid_cd)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None


def cmd_encode(args, argv) -> int:
    _, inst = _encode_from_args(args)
    _write_text(args.out, write_dimacs(inst))
    stream = sys.stdout if args.out != "-" else sys.stderr
    print("\n".join(summary_lines(inst)), file=stream)
    return EXIT_OK


def cmd_solve(args, argv) -> int:
    try:
        inst = parse_dimacs(_read_text(args.cnf))
    except DimacsError as exc:
        raise CliError(f"{args.cnf}: {exc}", EXIT_IO) from None
    res, solver_name = _run_solver(args, inst)
    word = {Outcome.SAT: "SATISFIABLE", Outcome.UNSAT: "UNSATISFIABLE",
            Outcome.INDETERMINATE: "UNKNOWN"}[res.outcome]
    print(f"s {word}")
    if res.is_sat and args.print_model:
        print("v " + " ".join(map(str, model_to_literals(res.model))) + " 0")
    man = _manifest(args, argv, inst, res, solver_name)
    target = args.manifest or (args.cnf + ".manifest.json" if args.cnf != "-" else None)
    if target:
        _write_text(target, man.to_json() + "\n")
    return _OUTCOME_EXIT[res.outcome]


def cmd_verify(args, argv) -> int:
    try:
        d = parse_drawing(_read_text(args.drawing))
        rep = check_representation(d)
    except DrawingError as exc:
        raise CliError(f"{args.drawing}: {exc}", EXIT_IO) from None
    print(rep.summary())
    if args.json:
        _write_text(args.json, json.dumps(rep.to_json(), indent=2) + "\n")
    return EXIT_OK if rep.valid else EXIT_SAT


def cmd_prove(args, argv) -> int:
    _, inst = _encode_from_args(args)
    res, solver_name = _run_solver(args, inst)
    label = args.label or graph_label(args.graph)
    if res.is_unsat:
        # only a completed UNSAT run may claim a bound
        fn = "obs" if args.mode == "single" else "obsout"
        print(f"{fn}({label}) ≥ 2 PROVED")
    elif res.is_sat:
        print("no conclusion (instance satisfiable)")
    else:
        print("no conclusion (budget)")
    if args.manifest:
        _write_text(args.manifest, _manifest(args, argv, inst, res, solver_name).to_json() + "\n")
    return _OUTCOME_EXIT[res.outcome]


def cmd_perturb(args, argv) -> int:
    try:
        pts = parse_points(_read_text(args.points))
    except ValueError as exc:
        raise CliError(f"{args.points}: {exc}", EXIT_IO) from None
    _write_text(args.out, serialize_points(perturb(pts, args.scale)) + "\n")
    return EXIT_OK


def cmd_check_model(args, argv) -> int:
    try:
        inst = parse_dimacs(_read_text(args.cnf))
        model = parse_model(_read_text(args.model), inst.num_vars)
    except DimacsError as exc:
        raise CliError(str(exc), EXIT_IO) from None
    ok, bad = eval_model(inst, model)
    print("model ok" if ok else f"model violates clause #{bad}: {inst.clauses[bad]}")
    return EXIT_OK if ok else EXIT_SAT


# ---------------------------------------------------------------- parser

def _add_encode_flags(p):
    p.add_argument("graph", help="graph file (JSON or graph6), '-' for stdin, or a catalog name")
    p.add_argument("--mode", choices=["outside", "single"], default="outside")
    p.add_argument("--max-path-len", type=int, default=None, metavar="K",
                   help="only paths with at most K edges (default: all paths)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--shared-vertex", action="store_true",
                   help="single mode: also constrain non-edge pairs sharing a vertex")
    p.add_argument("--avoid-cd", action="store_true",
                   help="single mode: key paths must avoid c and d (weaker instance)")


def _add_solver_flags(p):
    p.add_argument("--conflict-budget", type=int, default=None)
    p.add_argument("--time-budget", type=float, default=None, help="seconds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--external-solver", default=None, metavar="CMD",
                   help="external DIMACS solver command; '{cnf}' marks the file argument")
    p.add_argument("--manifest", default=None, metavar="PATH", help="write the run manifest here")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="obstacle-sat", description="SAT lower bounds for obstacle numbers.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", help="print a graph as JSON")
    gsub = g.add_subparsers(dest="kind", required=True)
    p = gsub.add_parser("gyro", help="gyroelongated bipyramid skeleton X_n")
    p.add_argument("n", type=int)
    p = gsub.add_parser("kstar", help="K_{a,b} minus a matching of size min(a,b)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p = gsub.add_parser("named", help="catalog graph, e.g. petersen or cycle(8)")
    p.add_argument("name")
    p = gsub.add_parser("graph6", help="decode a graph6 string")
    p.add_argument("text")
    for p in gsub.choices.values():
        p.add_argument("--out", default="-")
        p.set_defaults(func=cmd_graph)

    p = sub.add_parser("encode", help="write the DIMACS instance of a graph")
    _add_encode_flags(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("solve", help="solve a DIMACS file and write a run manifest")
    p.add_argument("cnf")
    _add_solver_flags(p)
    p.add_argument("--print-model", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check an obstacle drawing")
    p.add_argument("drawing")
    p.add_argument("--json", default=None, metavar="PATH", help="also write the JSON report ('-' for stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prove", help="encode, solve and state the resulting bound")
    _add_encode_flags(p)
    _add_solver_flags(p)
    p.add_argument("--label", default=None, help="graph name used in the verdict line")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("perturb", help="deterministic integer perturbation of a point set")
    p.add_argument("points")
    p.add_argument("--scale", type=int, default=10**6)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("check-model", help="evaluate a model against a DIMACS file")
    p.add_argument("cnf")
    p.add_argument("model")
    p.set_defaults(func=cmd_check_model)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, ["obstacle-sat", *argv])
    except CliError as exc:
        print(f"obstacle-sat: error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"obstacle-sat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
