"""Stage orchestration for the command line: compute, serialize, verify."""

from __future__ import annotations

from dataclasses import dataclass, field

from .canonical import EliminationTrace, canonical_decomposition
from .connectivity import edge_connectivity
from .disentangle import PipelineTrace, decompose_bipartite_p5
from .factorization import fractional_factorization, split_into_two
from .graph import Multigraph
from .io import format_decomposition
from .verify import (
    VerificationReport,
    verify_canonical,
    verify_decomposition,
    verify_fractional_factorization,
    verify_two_split,
)

STAGES = ("check", "split", "factorize", "canonical", "decompose")

CONNECTIVITY = 48
SPLIT_K, SPLIT_R = 5, 6


@dataclass
class StageResult:
    stage: str
    artifact: str
    report: VerificationReport
    stats: dict = field(default_factory=dict)


def _check(g: Multigraph, trust: bool) -> StageResult:
    rep = VerificationReport()
    rep.add("input.bipartite", [] if g.sides is not None else ["no bipartition"])
    rep.add("input.divisible", [g.m] if g.m % 5 else [], lambda m: f"|E|={m} not divisible by 5")
    stats = {"vertices": g.n, "edges": g.m}
    if not trust and g.n >= 2:
        lam = edge_connectivity(g)
        stats["edge_connectivity"] = lam
        rep.add("input.connectivity", [lam] if lam < CONNECTIVITY else [],
                lambda x: f"edge connectivity {x} < {CONNECTIVITY}")
    artifact = "".join(f"{k} {v}\n" for k, v in stats.items())
    return StageResult("check", artifact, rep, stats)


def _split(g: Multigraph, seed: int, trust: bool) -> StageResult:
    ts = split_into_two(g, SPLIT_K, SPLIT_R, seed=seed, trust_connectivity=trust)
    ids1, ids2 = ts.g1.edge_ids, ts.g2.edge_ids
    rep = verify_two_split(g, ids1, ids2, SPLIT_K, SPLIT_R,
                           connectivity=lambda ids: edge_connectivity(g.subgraph(ids)))
    lines = [f"s 1 {e}" for e in ids1] + [f"s 2 {e}" for e in ids2]
    return StageResult("split", "\n".join(lines) + "\n", rep,
                       {"part1_edges": len(ids1), "part2_edges": len(ids2)})


def _ff_listing(ff) -> str:
    lines = []
    for tag, ids in (("m", ff.M), ("f", ff.F), ("h", ff.H)):
        for e in sorted(ids):
            t, h = ff.orient.arcs[e]
            lines.append(f"{tag} {e} {t} {h}")
    return "\n".join(lines) + "\n"


def _factorize(g: Multigraph, seed: int, trust: bool, a_side: int) -> StageResult:
    ff = fractional_factorization(g, a_side, seed=seed, trust_connectivity=trust)
    rep = verify_fractional_factorization(ff)
    return StageResult("factorize", _ff_listing(ff), rep,
                       {"M": len(ff.M), "F": len(ff.F), "H": len(ff.H)})


def _canonical(g: Multigraph, seed: int, trust: bool, a_side: int, check: bool,
               ptrace: PipelineTrace | None) -> StageResult:
    ff = fractional_factorization(g, a_side, seed=seed, trust_connectivity=trust)
    trace = EliminationTrace()
    if ptrace is not None:
        arcs = {e: ff.orient.arcs[e] for e in ff.M}
        trace.observer = ptrace.bind(f"eliminate-{a_side}", ff.M | ff.F | ff.h_plus, arcs)
        ptrace.elimination.append(trace)
    d = canonical_decomposition(ff, trace, check).sorted()
    rep = verify_fractional_factorization(ff).extend(verify_canonical(d.elements, ff))
    return StageResult("canonical", format_decomposition(d), rep,
                       {"elements": len(d), "rho": trace.rho})


def _decompose(g: Multigraph, seed: int, trust: bool, check: bool,
               trace: PipelineTrace | None) -> StageResult:
    trace = trace if trace is not None else PipelineTrace()
    d = decompose_bipartite_p5(g, seed=seed, trust_connectivity=trust, trace=trace, check=check)
    rep = verify_decomposition(g, d.elements, expect_kind="P5")
    rep.add("count", [] if 5 * len(d) == g.m else [len(d)], lambda c: f"{c} elements")
    return StageResult("decompose", format_decomposition(d), rep,
                       {"elements": len(d), "t5": trace.disentangle.t5,
                        "rho": [t.rho for t in trace.elimination]})


def run_pipeline(g: Multigraph, stage: str = "decompose", seed: int = 0,
                 trust_connectivity: bool = False, assert_level: str = "full",
                 a_side: int = 0, trace: PipelineTrace | None = None) -> StageResult:
    """Run one stage on ``g``; ``factorize`` and ``canonical`` treat side ``a_side`` as A.

    ``trace`` collects the progress counters of the ``canonical`` and
    ``decompose`` stages and forwards every intermediate state to its observer.
    """
    check = assert_level == "full"
    if stage == "check":
        return _check(g, trust_connectivity)
    if stage == "split":
        return _split(g, seed, trust_connectivity)
    if stage == "factorize":
        return _factorize(g, seed, trust_connectivity, a_side)
    if stage == "canonical":
        return _canonical(g, seed, trust_connectivity, a_side, check, trace)
    if stage == "decompose":
        return _decompose(g, seed, trust_connectivity, check, trace)
    raise ValueError(f"unknown stage {stage!r}")
