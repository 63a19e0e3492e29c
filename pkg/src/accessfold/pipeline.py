"""The end-to-end verification of the edge bound.

Starting from the decorated S-wedge, the loop alternates amalgamation of
heavy E-edges, taming, and single folds, re-validating the A-graph and the
decoration after every step and asserting that the complexity never grows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .agraph import (
    AGraph,
    agraph_to_dot,
    apply_fold,
    build_wedge,
    find_fold,
    foldedness_certificate,
    is_structurally_isomorphic,
    loop_generators,
    nu_normal_forms,
    nu_translate,
    push_path,
    validate_agraph,
)
from .decoration import (
    DecoratedAGraph,
    Decoration,
    amalgamate_edge,
    complexity_c,
    decoration_styles,
    initial_wedge_decoration,
    push_tame,
    transport_decoration,
    validate_decoration,
)
from .errors import BudgetExceeded, EngineInvariantError
from .graphs import (
    APath,
    GraphOfGroups,
    acylindricity,
    is_minimal,
    is_weakly_reduced,
    normal_form,
    reduce_apath,
)


def default_budget(A: GraphOfGroups, S: list[APath]) -> int:
    """Enough steps for every fold and amalgamation starting from the S-wedge.

    Type I/III folds remove a pair, type II folds at least double an edge
    group, and each amalgamation moves a pair into Gamma for good.
    """
    pairs = len(build_wedge(A, S).agraph.pairs)
    biggest = max((A.egroup(2 * p).order for p in A.graph.pairs), default=1)
    return pairs * (2 + math.ceil(math.log2(biggest))) + 1


@dataclass
class PipelineResult:
    trace: list[dict]
    verdict: dict
    final: DecoratedAGraph | None = None
    snapshots: list[tuple[str, str]] = field(default_factory=list)   # (name, DOT text)

    @property
    def passed(self) -> bool:
        return bool(self.verdict.get("pass"))


def structural_checks(A: GraphOfGroups, k: int, C: int, depth_cap: int = 8) -> dict:
    wr, wr_w = is_weakly_reduced(A)
    mn, mn_w = is_minimal(A)
    ac = acylindricity(A, C, depth_cap)
    return {
        "weakly_reduced": wr, "weakly_reduced_witness": wr_w,
        "minimal": mn, "minimal_witness": mn_w,
        "acylindricity": ac.as_dict(),
        "acylindrical_at_k": ac.k <= k,
        "k_at_least_one": k >= 1,
        "hypotheses": bool(wr and mn and ac.k <= k and k >= 1),
    }


class _Runner:
    def __init__(self, A, k, C, budget, path_check_len, snapshots, inject_fault):
        self.A, self.k, self.C = A, k, C
        self.budget = budget
        self.path_check_len = path_check_len
        self.want_dot = snapshots
        self.inject_fault = inject_fault
        self.trace: list[dict] = []
        self.snapshots: list[tuple[str, str]] = []
        self.steps = 0
        self.chain: list[int] = []

    def snap(self, name: str, dg: DecoratedAGraph):
        if self.want_dot:
            self.snapshots.append((name, agraph_to_dot(dg.agraph, name, decoration_styles(dg))))

    def record(self, op: str, before: DecoratedAGraph, after: DecoratedAGraph, **extra):
        cb, ca = complexity_c(before), complexity_c(after)
        rec = {
            "step": self.steps, "op": op,
            "pairs_before": len(before.agraph.pairs), "pairs_after": len(after.agraph.pairs),
            "orders_after": after.agraph.orders(),
            "c_before": cb.c, "c_after": ca.c, "complexity": ca.as_dict(),
            "decoration": after.decoration.as_dict(),
        }
        rec.update(extra)
        self.trace.append(rec)
        self.chain.append(ca.c)
        if ca.c > cb.c:
            raise EngineInvariantError(
                f"complexity increased from {cb.c} to {ca.c} at step {self.steps} ({op})", step=self.steps)
        rep = validate_decoration(after)
        if not rep:
            raise EngineInvariantError(f"invalid decoration after step {self.steps}: {rep.message}",
                                       step=self.steps)
        self.snap(f"step_{self.steps:03d}", after)

    def tick(self):
        if self.steps >= self.budget:
            raise BudgetExceeded(f"step budget {self.budget} exhausted")
        self.steps += 1

    def fold(self, dg: DecoratedAGraph, m) -> tuple[AGraph, object]:
        b = dg.agraph
        loops = loop_generators(b)
        before = nu_normal_forms(b, loops)
        nb, pi = apply_fold(b, m)
        rep = validate_agraph(nb)
        if not rep:
            raise EngineInvariantError(f"fold produced an invalid A-graph: {rep.message}", step=self.steps)
        after = [normal_form(self.A, nu_translate(nb, push_path(b, m, q))) for q in loops]
        if before != after:
            raise EngineInvariantError(f"fold changed the represented subgroup at step {self.steps}",
                                       step=self.steps)
        return nb, pi

    def tame(self, dg: DecoratedAGraph) -> DecoratedAGraph:
        while True:
            m = find_fold(dg.agraph, allowed=dg.y_pairs())
            if m is None:
                return dg
            self.tick()
            nb, pi = self.fold(dg, m)
            new = push_tame(dg, nb, pi)
            self.record("tame", dg, new, move=m.as_dict(), nu_check=True)
            dg = new

    def faulty(self, before: DecoratedAGraph, dg: DecoratedAGraph) -> DecoratedAGraph:
        """Test hook: move non-E edges into E until c exceeds its value before the step."""
        target = complexity_c(before).c
        while complexity_c(dg).c <= target:
            d, b = dg.decoration, dg.agraph
            forest = dg.forest()
            tree = sorted(dg.tree_pairs())
            if tree:
                p = tree[0]
                f = 2 * p
                far = b.omega(f) if forest.parent.get(b.omega(f)) == f else b.alpha[f]
                dg = dg.with_decoration(Decoration(d.gamma_vertices | {far}, d.gamma_pairs, d.script_e | {p}))
            elif d.gamma_pairs:
                p = min(d.gamma_pairs)
                dg = dg.with_decoration(Decoration(d.gamma_vertices, d.gamma_pairs - {p}, d.script_e | {p}))
            else:
                break
        return dg

    def run(self, S: list[APath]) -> DecoratedAGraph:
        wedge = build_wedge(self.A, S)
        dg = initial_wedge_decoration(wedge, self.k, self.C)
        c0 = complexity_c(dg)
        self.chain.append(c0.c)
        self.trace.append({"step": 0, "op": "initial", "pairs_after": len(dg.agraph.pairs),
                           "orders_after": dg.agraph.orders(), "c_after": c0.c,
                           "complexity": c0.as_dict(), "decoration": dg.decoration.as_dict(),
                           "circles": len(wedge.circles), "elliptic": wedge.elliptic})
        self.snap("initial", dg)
        dg = self.tame(dg)
        while True:
            heavy = sorted(p for p in dg.decoration.script_e if dg.agraph.egroup[p].order > self.C)
            if heavy:
                self.tick()
                new = amalgamate_edge(dg, heavy[0])
                self.record("amalgamate", dg, new, edge=heavy[0])
                dg = self.tame(new)
                continue
            m = find_fold(dg.agraph)
            if m is None:
                break
            self.tick()
            nb, pi = self.fold(dg, m)
            new, tag = transport_decoration(dg, m, nb, pi)
            if self.inject_fault == "nonmonotone":
                new = self.faulty(dg, new)
                self.inject_fault = None
            self.record("fold", dg, new, move=m.as_dict(), case=tag, nu_check=True)
            dg = self.tame(new)
        self.snap("final", dg)
        return dg


def theorem_pipeline(A: GraphOfGroups, S: list[APath], k: int, C: int, *,
                     depth_cap: int = 8, step_budget: int | None = None,
                     path_check_len: int = 6, snapshots: bool = False,
                     force: bool = False, inject_fault: str | None = None,
                     name: str = "instance") -> PipelineResult:
    """Run the checks and, if the hypotheses hold (or ``force``), the folding sequence.

    Engine errors propagate (``EngineInvariantError``, ``BudgetExceeded``,
    ``InconclusiveError``); a verdict with ``pass = False`` means the bound
    or a hypothesis failed.
    """
    checks = structural_checks(A, k, C, depth_cap)
    n = len(S)
    reduced = [reduce_apath(A, p) for p in S]
    n_ell = sum(1 for q in reduced if not q.edges)
    n_h = n - n_ell
    edge_pairs = len(A.graph.pairs)
    bound = (2 * k + 1) * C * (n - 1)
    wedge_bound = (2 * k + 1) * C * n_h
    budget = default_budget(A, S) if step_budget is None else step_budget
    verdict = {
        "instance": name, "k": k, "C": C, "checks": checks,
        "n": n, "n_elliptic": n_ell, "n_h": n_h, "nielsen_deviation": n_ell == 0,
        "edge_pairs": edge_pairs, "bound": bound, "bound_pass": edge_pairs <= bound,
        "initial_bound": wedge_bound, "step_budget": budget,
    }
    if not checks["hypotheses"] and not force:
        verdict.update(pipeline_run=False, **{"pass": False})
        return PipelineResult([], verdict)
    runner = _Runner(A, k, C, budget, path_check_len, snapshots, inject_fault)
    final = runner.run(S)
    c_init, c_final = runner.chain[0], runner.chain[-1]
    iso = is_structurally_isomorphic(final.agraph)
    cert = foldedness_certificate(final.agraph, path_check_len)
    verdict.update(
        pipeline_run=True, steps=runner.steps, c_initial=c_init, c_final=c_final,
        chain=runner.chain,
        monotone=all(a >= b for a, b in zip(runner.chain, runner.chain[1:])),
        initial_within_bound=c_init <= wedge_bound,
        final_isomorphic=bool(iso), folded=bool(cert),
        final_edges_within_c=edge_pairs <= c_final,
        cases=sorted({r["case"] for r in runner.trace if "case" in r}),
    )
    if not iso:
        raise EngineInvariantError(f"final A-graph is not isomorphic to the target: {iso.message}")
    if not cert:
        raise EngineInvariantError(f"foldedness certificate failed: {cert.message}")
    verdict["pass"] = bool(checks["hypotheses"] and verdict["bound_pass"] and verdict["monotone"]
                           and verdict["initial_within_bound"])
    return PipelineResult(runner.trace, verdict, final, runner.snapshots)
