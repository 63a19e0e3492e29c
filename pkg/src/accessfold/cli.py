"""Command line driver: ``accessfold analyze|fold|verify FILE``.

Exit codes: 0 pass, 1 bound or hypothesis failed, 2 unreadable instance,
3 inconclusive acylindricity search, 4 step budget exhausted, 5 engine
invariant violated.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .errors import BudgetExceeded, EngineInvariantError, InconclusiveError, InstanceError
from .graphs import (
    acylindricity,
    betti_number,
    default_generating_tuple,
    format_apath,
    is_minimal,
    is_weakly_reduced,
    reduced_complexity,
)
from .instance import Instance, load_instance
from .pipeline import theorem_pipeline

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_INCONCLUSIVE, EXIT_BUDGET, EXIT_INVARIANT = range(6)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _resolve(inst: Instance, args) -> tuple[int, int]:
    k = args.k if args.k is not None else inst.k
    C = args.C if args.C is not None else inst.C
    if k is None or C is None:
        raise InstanceError("k and C must be given in the file or on the command line")
    if k < 0 or C < 1:
        raise InstanceError("need k >= 0 and C >= 1")
    return k, C


def cmd_analyze(inst: Instance, args, out) -> int:
    A = inst.A
    k, C = _resolve(inst, args)
    depth = args.depth_cap if args.depth_cap is not None else inst.depth_cap
    wr, wr_w = is_weakly_reduced(A)
    mn, mn_w = is_minimal(A)
    ac = acylindricity(A, C, depth)
    tup = default_generating_tuple(A)
    report = {
        "instance": inst.name,
        "vertices": len(A.graph.vertices), "edge_pairs": len(A.graph.pairs),
        "betti_number": betti_number(A.graph), "reduced_complexity": reduced_complexity(A),
        "weakly_reduced": wr, "weakly_reduced_witness": None if wr_w is None else A.vname(wr_w),
        "minimal": mn, "minimal_witness": None if mn_w is None else A.vname(mn_w),
        "C": C, "acylindricity_k": ac.k,
        "acylindricity_witness": None if ac.witness is None else format_apath(A, ac.witness),
        "k": k, "acylindrical_at_k": ac.k <= k,
        "default_tuple": [{"path": format_apath(A, p), "kind": t} for p, t in tup],
    }
    out.write(dumps(report) + "\n")
    return EXIT_PASS if (wr and mn and ac.k <= k) else EXIT_FAIL


def _run(inst: Instance, args, out, write_verdict: bool) -> int:
    k, C = _resolve(inst, args)
    t0 = time.perf_counter()
    res = theorem_pipeline(
        inst.A, inst.generating_tuple(), k, C,
        depth_cap=args.depth_cap if args.depth_cap is not None else inst.depth_cap,
        step_budget=args.step_budget if args.step_budget is not None else inst.step_budget,
        path_check_len=args.path_check_len if args.path_check_len is not None else inst.path_check_length,
        snapshots=args.dot_dir is not None, force=args.force,
        inject_fault=args.inject_fault, name=inst.name,
    )
    if args.trace_out:
        with open(args.trace_out, "w", encoding="utf-8") as fh:
            for rec in res.trace:
                fh.write(dumps(rec) + "\n")
    if args.dot_dir:
        d = Path(args.dot_dir)
        d.mkdir(parents=True, exist_ok=True)
        for name, text in res.snapshots:
            (d / f"{name}.dot").write_text(text, encoding="utf-8")
    if write_verdict:
        out.write(dumps(res.verdict) + "\n")
    else:
        out.write(dumps({"instance": inst.name, "steps": res.verdict.get("steps"),
                         "chain": res.verdict.get("chain"),
                         "final_isomorphic": res.verdict.get("final_isomorphic"),
                         "pipeline_run": res.verdict.get("pipeline_run")}) + "\n")
    print(f"wall time {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    if write_verdict:
        return EXIT_PASS if res.passed else EXIT_FAIL
    return EXIT_PASS if res.verdict.get("pipeline_run") else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="accessfold", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, hlp in (("analyze", "structural checks and acylindricity"),
                      ("fold", "run the folding sequence and write its trace"),
                      ("verify", "run the folding sequence and check the edge bound")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("file")
        sp.add_argument("--k", type=int)
        sp.add_argument("--C", type=int)
        sp.add_argument("--depth-cap", type=int)
        sp.add_argument("--seed", type=int, default=0,
                        help="accepted for interface uniformity; every run is deterministic")
        if name != "analyze":
            sp.add_argument("--step-budget", type=int)
            sp.add_argument("--path-check-len", type=int)
            sp.add_argument("--dot-dir")
            sp.add_argument("--trace-out")
            sp.add_argument("--force", action="store_true", help="run even if the hypotheses fail")
            sp.add_argument("--inject-fault", choices=["nonmonotone"], help=argparse.SUPPRESS)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        inst = load_instance(args.file)
        if args.command == "analyze":
            return cmd_analyze(inst, args, out)
        return _run(inst, args, out, write_verdict=args.command == "verify")
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except BudgetExceeded as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except EngineInvariantError as exc:
        step = f" at step {exc.step}" if exc.step is not None else ""
        print(f"invariant violated{step}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
