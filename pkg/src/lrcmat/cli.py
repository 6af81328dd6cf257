"""Command-line front end.

Subcommands: params, construct, decide, gammoid, represent, verify.
Machine-readable output with --json; DOT export for graphs.  Exit codes:
0 success, 2 validation or construction failure, 3 capacity exceeded.
All randomness sits behind --seed, so runs are reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import construct, gammoid, gfrep, lrc, zlattice
from .errors import CapacityError, LrcmatError
from .matroid import Matroid, UniformMatroid, cyclic_flats, validate_rank_axioms

EXIT_INVALID = 2
EXIT_CAPACITY = 3


class CliFailure(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliFailure(f"cannot read {path}: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n")


def _add_matroid_inputs(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", metavar="FILE", help="generator matrix JSON")
    src.add_argument("--lattice", metavar="FILE", help="cyclic-flat lattice JSON")
    src.add_argument("--system", metavar="FILE", help="set system JSON")
    src.add_argument("--uniform", nargs=2, type=int, metavar=("N", "K"),
                     help="uniform matroid U_n^k")


def _load_matroid(args) -> Matroid:
    if args.matrix:
        return gfrep.matroid_from_matrix(gfrep.FieldMatrix.from_json(_read(args.matrix)))
    if args.lattice:
        lat = zlattice.CyclicFlatLattice.from_json(_read(args.lattice))
        report = zlattice.validate(lat)
        if not report.valid:
            raise CliFailure(f"invalid lattice: {report}")
        return zlattice.matroid_from_lattice(lat)
    if args.system:
        return construct.general_construction(
            construct.SetSystem.from_json(_read(args.system)))
    n, k = args.uniform
    return UniformMatroid(n, k)


def cmd_params(args) -> int:
    m = _load_matroid(args)
    p = lrc.params(m, delta=args.delta)
    if args.json:
        out = {"n": p.n, "k": p.k, "d": p.d}
        if p.r is not None:
            out.update({"r": p.r, "delta": p.delta})
        print(json.dumps(out))
    else:
        print(p)
    return 0


def _verify_matroid(m: Matroid, declared=None) -> list[str]:
    """Invariant suite for a freshly constructed matroid; returns failures."""
    failures = []
    lat = getattr(m, "lattice", None)
    if lat is not None:
        report = zlattice.validate(lat)
        if not report.valid:
            failures.append(f"lattice axioms: {report}")
    if declared is not None:
        measured = lrc.params(m)
        if (measured.n, measured.k, measured.d) != (declared.n, declared.k, declared.d):
            failures.append(f"declared {declared} but measured {measured}")
    if m.n <= 12:
        report = validate_rank_axioms(m)
        if not report.valid:
            failures.append(f"rank axioms: {report}")
        if lat is not None and cyclic_flats(m).members != lat.members:
            failures.append("cyclic flats do not round-trip")
    return failures


def cmd_construct(args) -> int:
    if args.kind == "general":
        if not args.system:
            raise CliFailure("--kind general needs --system")
        m = construct.general_construction(
            construct.SetSystem.from_json(_read(args.system)))
        graph = None
    elif args.kind == "graph":
        if not args.graph or None in (args.k, args.r, args.delta):
            raise CliFailure("--kind graph needs --graph, --k, --r, --delta")
        graph = construct.WeightedGraph.from_json(_read(args.graph))
        m = construct.graph_construction(graph, args.k, args.r, args.delta)
    elif args.kind == "dmax-witness":
        if None in (args.n, args.k, args.r, args.delta):
            raise CliFailure("--kind dmax-witness needs --n, --k, --r, --delta")
        verdict = construct.dmax_decide(args.n, args.k, args.r, args.delta)
        if verdict.witness is None:
            raise CliFailure("no witness produced")
        m = verdict.witness
        graph = None
    else:
        raise CliFailure(f"unknown kind {args.kind!r}")

    if isinstance(m, UniformMatroid):
        lattice = zlattice.uniform_lattice(m.n, m.k)
    else:
        lattice = m.lattice
    declared = getattr(m, "declared", None)
    if args.verify:
        target = m if not isinstance(m, UniformMatroid) else \
            zlattice.matroid_from_lattice(lattice)
        failures = _verify_matroid(target, declared)
        if failures:
            raise CliFailure("verification failed: " + "; ".join(failures))
        print("verification passed", file=sys.stderr)
    if args.dot:
        if graph is None:
            raise CliFailure("--dot only applies to --kind graph")
        _write(args.dot, graph.to_dot())
    _write(args.out, lattice.to_json(indent=2))
    return 0


def cmd_decide(args) -> int:
    verdict = construct.dmax_decide(args.n, args.k, args.r, args.delta)
    if args.witness_out:
        w = verdict.witness
        lattice = zlattice.uniform_lattice(w.n, w.k) if isinstance(w, UniformMatroid) \
            else w.lattice
        _write(args.witness_out, lattice.to_json(indent=2))
    print(json.dumps(verdict.to_json_dict()))
    return 0


def cmd_gammoid(args) -> int:
    sysm = construct.SetSystem.from_json(_read(args.system))
    graph = gammoid.build_graph(sysm)
    if args.dot:
        _write(args.dot, graph.to_dot())
    if sysm.n <= gammoid.EQUIV_CAP:
        equivalent = gammoid.equivalence_check(sysm)
        report = {"n": sysm.n, "h_nodes": len(graph.h_labels),
                  "sinks": graph.k, "equivalent": equivalent}
    else:
        equivalent = None
        report = {"n": sysm.n, "h_nodes": len(graph.h_labels), "sinks": graph.k,
                  "equivalent": None,
                  "note": f"equivalence check skipped (n > {gammoid.EQUIV_CAP})"}
    print(json.dumps(report))
    return 0 if equivalent in (True, None) else EXIT_INVALID


def cmd_represent(args) -> int:
    m = _load_matroid(args)
    result = gfrep.find_representation(m, args.prime, seed=args.seed,
                                       max_attempts=args.attempts)
    meta = {"found": result.found, "attempts": result.attempts,
            "seed": result.seed, "prime": args.prime}
    if result.found:
        _write(args.out, result.matrix.to_json(indent=2))
        print(json.dumps(meta), file=sys.stderr)
    else:
        print(json.dumps(meta))
    return 0


def cmd_verify(args) -> int:
    checks: list[tuple[str, bool, str]] = []
    if args.lattice:
        lat = zlattice.CyclicFlatLattice.from_json(_read(args.lattice))
        report = zlattice.validate(lat)
        checks.append(("lattice_axioms", report.valid, str(report)))
        if report.valid and lat.n <= 12:
            m = zlattice.matroid_from_lattice(lat)
            checks.append(("rank_axioms", validate_rank_axioms(m).valid, ""))
            checks.append(("roundtrip", cyclic_flats(m).members == lat.members, ""))
    elif args.system:
        sysm = construct.SetSystem.from_json(_read(args.system))
        problems = construct.validate_set_system(sysm)
        checks.append(("system_conditions", not problems, "; ".join(problems)))
        if not problems and sysm.n <= gammoid.EQUIV_CAP:
            checks.append(("gammoid_equivalence", gammoid.equivalence_check(sysm), ""))
    elif args.matrix:
        mat = gfrep.FieldMatrix.from_json(_read(args.matrix))
        m = gfrep.matroid_from_matrix(mat)
        if m.n <= 12:
            checks.append(("rank_axioms", validate_rank_axioms(m).valid, ""))
        checks.append(("distance_consistency",
                       gfrep.code_min_distance(mat) == lrc.min_distance(m), ""))
    elif args.graph:
        graph = construct.WeightedGraph.from_json(_read(args.graph))
        if None in (args.k, args.r, args.delta):
            raise CliFailure("--graph verification needs --k, --r, --delta")
        problems = construct.validate_graph(graph, args.k, args.r, args.delta)
        checks.append(("graph_conditions", not problems, "; ".join(problems)))
        if not problems:
            m = construct.graph_construction(graph, args.k, args.r, args.delta)
            n_formula, d_formula = construct.graph_formulas(graph, args.k, args.r, args.delta)
            checks.append(("size_formula", m.n == n_formula, f"{m.n} vs {n_formula}"))
            checks.append(("distance_formula",
                           lrc.min_distance(m) == d_formula, ""))
    else:
        raise CliFailure("nothing to verify")
    ok = all(passed for _, passed, _ in checks)
    if args.json:
        print(json.dumps({"valid": ok,
                          "checks": [{"name": n, "passed": p, "detail": d}
                                     for n, p, d in checks]}))
    else:
        for name, passed, detail in checks:
            print(f"{'PASS' if passed else 'FAIL'} {name}" + (f": {detail}" if detail and not passed else ""))
    return 0 if ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="lrcmat",
        description="Exact combinatorics of locally repairable codes.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="measured (n,k,d) and minimal locality")
    _add_matroid_inputs(p)
    p.add_argument("--delta", type=int, help="also search the minimal r for this delta")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("construct", help="build a matroid, write its lattice JSON")
    p.add_argument("--kind", required=True, choices=["general", "graph", "dmax-witness"])
    p.add_argument("--system", metavar="FILE")
    p.add_argument("--graph", metavar="FILE")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--out", metavar="FILE", help="lattice JSON destination (default stdout)")
    p.add_argument("--dot", metavar="FILE", help="DOT export of the input graph")
    p.add_argument("--verify", action="store_true", help="re-run the invariant suite")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("decide", help="largest-d classification for (n,k,r,delta)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--witness-out", metavar="FILE")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("gammoid", help="layered digraph of a set system")
    p.add_argument("--system", metavar="FILE", required=True)
    p.add_argument("--dot", metavar="FILE")
    p.set_defaults(func=cmd_gammoid)

    p = sub.add_parser("represent", help="search a GF(p) generator matrix")
    _add_matroid_inputs(p)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=gfrep.DEFAULT_ATTEMPTS)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("verify", help="validate an input against its axioms")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", metavar="FILE")
    src.add_argument("--lattice", metavar="FILE")
    src.add_argument("--system", metavar="FILE")
    src.add_argument("--graph", metavar="FILE")
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except LrcmatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
