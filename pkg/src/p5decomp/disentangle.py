"""Turn an M-complete {P5, T5}-decomposition into a P5-decomposition.

An M edge ``ab`` (pointing to ``b``) is inward when ``a`` has degree 1 in
its element; a decomposition is M-complete when every M edge is inward.
T5 is the trail ``v0 v1 v2 v3 v4 v1``.  Each step below rewires one T5 into
a path without creating new T5s and without breaking M-completeness, so
the number of T5s falls by at least one per step.  Simple host graphs only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .canonical import DecompElement, Decomposition, EliminationTrace, Kind, canonical_decomposition
from .connectivity import connectivity_certificate
from .errors import (
    ClaimViolated,
    ConnectivityViolated,
    CoverageGap,
    DivisibilityViolated,
    PreconditionViolated,
)
from .factorization import FractionalFactorization, fractional_factorization, split_into_two
from .graph import Multigraph


@dataclass
class MCompleteDecomposition:
    decomposition: Decomposition
    m_tails: Mapping[int, int]  # M edge id -> tail vertex


@dataclass(frozen=True)
class CoupledSequence:
    center: int
    elements: tuple[DecompElement, ...]
    indices: tuple[int, ...]


@dataclass
class DisentangleTrace:
    """T5 count before the first step and after each step; ``observer`` sees every state."""

    t5: list[int] = field(default_factory=list)
    cases: list[int] = field(default_factory=list)
    coupled_lengths: list[int] = field(default_factory=list)
    observer: Callable[[list[DecompElement]], None] | None = field(default=None, repr=False)


@dataclass
class PipelineTrace:
    """Instrumentation of a full run: cycle elimination per part and T5 resolution.

    ``observer(stage, elements, edge_ids, m_arcs)`` is called after every
    mutation with the edges the elements must partition and the M arcs
    that must stay inward; ``stage`` is ``eliminate-0``, ``eliminate-1`` or
    ``disentangle``.
    """

    elimination: list[EliminationTrace] = field(default_factory=list)
    disentangle: DisentangleTrace = field(default_factory=DisentangleTrace)
    observer: Callable[[str, list[DecompElement], frozenset[int], Mapping[int, tuple[int, int]]], None] | None = \
        field(default=None, repr=False)

    def bind(self, stage: str, edge_ids, m_arcs):
        """One-argument observer for ``stage``, or None when nothing observes."""
        if self.observer is None:
            return None
        ids, arcs, obs = frozenset(edge_ids), dict(m_arcs), self.observer
        return lambda els: obs(stage, els, ids, arcs)


def _union_host(a: Multigraph, b: Multigraph) -> Multigraph:
    if a.n != b.n:
        raise PreconditionViolated("decompositions live on different vertex sets")
    if a.edges.keys() & b.edges.keys():
        raise PreconditionViolated("decompositions share edge ids")
    table = {**a.edges, **b.edges}
    return Multigraph(a.n, table, a.sides, next_id=max(a.next_id, b.next_id))


def _inward_violations(els: Sequence[DecompElement], m_tails: Mapping[int, int]) -> list[int]:
    bad = []
    for el in els:
        for e in el.edges:
            if e in m_tails and el.trail.degree_in(m_tails[e]) != 1:
                bad.append(e)
    return bad


def merge_canonical(d1: Decomposition, d2: Decomposition, m1: Mapping[int, tuple[int, int]],
                    m2: Mapping[int, tuple[int, int]], host: Multigraph | None = None
                    ) -> MCompleteDecomposition:
    """Union of two decompositions of edge-disjoint graphs; ``m1``/``m2`` map M edges to arcs."""
    host = host if host is not None else _union_host(d1.host, d2.host)
    arcs = {**m1, **m2}
    pointed = {h for _, h in arcs.values()}
    gaps = [v for v in range(host.n) if host.degree(v) and v not in pointed]
    if gaps:
        raise CoverageGap(f"no M edge points to vertices {gaps[:10]}")
    d = Decomposition(host, list(d1.elements) + list(d2.elements))
    if not d.is_partition():
        raise ClaimViolated("merged elements do not partition the host edges")
    tails = {e: t for e, (t, _) in arcs.items()}
    bad = _inward_violations(d.elements, tails)
    if bad:
        raise ClaimViolated(f"M edges not inward: {bad[:5]}")
    return MCompleteDecomposition(d, tails)


def _oriented_from(el: DecompElement, e: int, tail: int) -> DecompElement:
    """``el`` read so that it starts with edge ``e`` at vertex ``tail``."""
    if el.edges[0] == e and el.vertices[0] == tail:
        return el
    if el.edges[-1] == e and el.vertices[-1] == tail:
        return DecompElement(el.trail.reversed(), el.kind)
    raise ClaimViolated(f"M edge {e} is not inward in element {el.vertices}")


def _normal_t5(el: DecompElement) -> DecompElement:
    if el.vertices[5] == el.vertices[1]:
        return el
    return DecompElement(el.trail.reversed(), el.kind)


class _State:
    def __init__(self, mc: MCompleteDecomposition, check: bool) -> None:
        self.host = mc.decomposition.host
        self.slots = list(mc.decomposition.elements)
        self.m_tails = dict(mc.m_tails)
        self.check = check
        self.owner: dict[int, int] = {}
        for i, el in enumerate(self.slots):
            for e in el.edges:
                self.owner[e] = i
        self.m_into: dict[int, list[int]] = {}
        for e in sorted(self.m_tails):
            u, v = self.host.endpoints(e)
            head = v if u == self.m_tails[e] else u
            self.m_into.setdefault(head, []).append(e)
        self.t5 = {i for i, el in enumerate(self.slots) if el.kind is Kind.T5}

    def first_m_into(self, v: int) -> int:
        lst = self.m_into.get(v)
        if not lst:
            raise CoverageGap(f"no M edge points to vertex {v}")
        return lst[0]

    def element_by_m(self, e: int) -> tuple[int, DecompElement]:
        i = self.owner[e]
        return i, _oriented_from(self.slots[i], e, self.m_tails[e])

    def replace(self, changes: Sequence[tuple[int, DecompElement]]) -> None:
        old = [self.slots[i] for i, _ in changes]
        new = [el for _, el in changes]
        if self.check:
            if sorted(e for el in old for e in el.edges) != sorted(e for el in new for e in el.edges):
                raise ClaimViolated("rewiring changed the edge multiset")
            for el in new:
                if not el.trail.fits(self.host):
                    raise ClaimViolated(f"rewired element {el.vertices} does not fit the host")
            bad = _inward_violations(new, self.m_tails)
            if bad:
                raise ClaimViolated(f"rewiring left M edges {bad[:5]} not inward")
        for i, el in changes:
            self.slots[i] = el
            for e in el.edges:
                self.owner[e] = i
            if el.kind is Kind.T5:
                self.t5.add(i)
            else:
                self.t5.discard(i)


def resolve_t5_case1(t: DecompElement, b1: DecompElement) -> tuple[DecompElement, DecompElement]:
    """``T = v0 v1 v2 v3 v4 v1`` and ``B1 = b0 b1 ..`` with ``b0 b1`` in M, ``b1 = v2``, ``v1`` not in B1."""
    v, te = t.vertices, t.edges
    b, be = b1.vertices, b1.edges
    if v[5] != v[1] or b[1] != v[2] or v[1] in b:
        raise PreconditionViolated(f"not a first-case configuration: T={v}, B1={b}")
    new_t = DecompElement.of((v[0], v[1], v[4], v[3], v[2], b[0]), (te[0], te[4], te[3], te[2], be[0]))
    new_b = DecompElement.of((v[1],) + b[1:], (te[1],) + be[1:])
    if new_t.kind is not Kind.P5 or new_b.kind is not b1.kind:
        raise ClaimViolated(f"first case produced {new_t.vertices}, {new_b.vertices}")
    return new_t, new_b


def find_coupled_sequence(state: _State, t: DecompElement, b1_index: int, b1: DecompElement
                          ) -> tuple[CoupledSequence, tuple[int, DecompElement]]:
    """Grow ``B_1, B_2, ...`` while ``b^i_4 = v1``; return it and the first element that breaks it."""
    v1 = t.vertices[1]
    if b1.vertices[4] != v1:
        raise PreconditionViolated(f"B1 {b1.vertices} does not meet v1={v1} at position 4")
    els, idx = [b1], [b1_index]
    t_index = state.owner[t.edges[0]]
    while True:
        last = els[-1]
        if last.kind is not Kind.P5:
            raise ClaimViolated(f"coupled element {last.vertices} is not a path")
        e = state.first_m_into(last.vertices[3])
        j, nxt = state.element_by_m(e)
        if j == t_index or j in idx:
            raise ClaimViolated(f"coupled sequence revisits element {j}")
        if nxt.vertices[4] != v1:
            return CoupledSequence(v1, tuple(els), tuple(idx)), (j, nxt)
        els.append(nxt)
        idx.append(j)


def resolve_t5_case2(t: DecompElement, cs: CoupledSequence, bk: DecompElement) -> list[DecompElement]:
    """Replacements ``T', B'_1 .. B'_{k-1}, B'_k`` for a maximal coupled sequence."""
    v, te = t.vertices, t.edges
    v1 = v[1]
    bs = list(cs.elements) + [bk]
    k = len(bs)
    if bk.vertices[4] == v1 or v1 in bk.vertices[1:]:
        raise PreconditionViolated(f"successor {bk.vertices} still meets v1={v1}")
    out = [DecompElement.of((v[0], v[1], v[4], v[3], v[2], bs[0].vertices[0]),
                            (te[0], te[4], te[3], te[2], bs[0].edges[0]))]
    for i in range(k - 1):
        b, be = bs[i].vertices, bs[i].edges
        link = te[1] if i == 0 else bs[i - 1].edges[3]
        out.append(DecompElement.of((b[5], v1, b[1], b[2], b[3], bs[i + 1].vertices[0]),
                                    (be[4], link, be[1], be[2], bs[i + 1].edges[0])))
    b, be = bk.vertices, bk.edges
    out.append(DecompElement.of((v1,) + b[1:], (bs[k - 2].edges[3],) + be[1:]))
    if any(el.kind is not Kind.P5 for el in out[:-1]) or out[-1].kind is not bk.kind:
        raise ClaimViolated(f"second case produced {[el.vertices for el in out]}")
    return out


def disentangle(mc: MCompleteDecomposition, trace: DisentangleTrace | None = None,
                check: bool = True) -> Decomposition:
    """Resolve T5 elements (lowest index first) until only P5s remain."""
    st = _State(mc, check)
    if trace is not None:
        trace.t5.append(len(st.t5))
    while st.t5:
        before = len(st.t5)
        ti = min(st.t5)
        t = _normal_t5(st.slots[ti])
        b1_index, b1 = st.element_by_m(st.first_m_into(t.vertices[2]))
        if b1_index == ti:
            raise ClaimViolated(f"M edge into v2 lies in the trail {t.vertices} itself")
        if t.vertices[1] not in b1.vertices:
            new_t, new_b = resolve_t5_case1(t, b1)
            st.replace([(ti, new_t), (b1_index, new_b)])
            case, length = 1, 1
        else:
            cs, (bk_index, bk) = find_coupled_sequence(st, t, b1_index, b1)
            new = resolve_t5_case2(t, cs, bk)
            st.replace(list(zip((ti,) + cs.indices + (bk_index,), new)))
            case, length = 2, len(cs.elements)
        after = len(st.t5)
        if after >= before:
            raise ClaimViolated(f"T5 count did not drop ({before} -> {after})")
        if check and after != sum(1 for el in st.slots if el.kind is Kind.T5):
            raise ClaimViolated("T5 count drifted from a recount")
        if trace is not None:
            trace.t5.append(after)
            trace.cases.append(case)
            trace.coupled_lengths.append(length)
            if trace.observer is not None:
                trace.observer(list(st.slots))
    return Decomposition(st.host, st.slots)


def _arcs_of(ff: FractionalFactorization) -> dict[int, tuple[int, int]]:
    return {e: ff.orient.arcs[e] for e in ff.M}


def decompose_bipartite_p5(g: Multigraph, seed: int = 0, trust_connectivity: bool = False,
                           trace: PipelineTrace | None = None, check: bool = True) -> Decomposition:
    """Partition the edges of a simple 48-edge-connected bipartite graph into paths of length 5.

    The graph is split into two 6-edge-connected parts, each with degrees
    divisible by 5 on one side; each part gets a fractional factorization
    and a canonical decomposition for that side; the union is M-complete
    and its T5 elements are resolved one at a time.
    """
    if g.sides is None:
        raise PreconditionViolated("a bipartition is required")
    if g.m % 5:
        raise DivisibilityViolated(f"|E|={g.m} is not divisible by 5")
    if sum(c - 1 for c in g.edge_multiset().values()):
        raise PreconditionViolated("the input has parallel edges")
    if not trust_connectivity:
        cut = connectivity_certificate(g, 48)
        if cut is not None:
            raise ConnectivityViolated(f"input has a cut of {cut.value} < 48 edges")
    split = split_into_two(g, 5, 6, seed=seed, trust_connectivity=True)
    return decompose_from_parts(g, split.g1, split.g2, seed, trace, check)


def decompose_from_parts(g: Multigraph, g1: Multigraph, g2: Multigraph, seed: int = 0,
                         trace: PipelineTrace | None = None, check: bool = True) -> Decomposition:
    """P5-decomposition from a split whose part ``i`` has degrees divisible by 5 on side ``i``.

    Each part must be 6-edge-connected and simple.
    """
    parts = []
    for side, part in ((0, g1), (1, g2)):
        ff = fractional_factorization(part, side, seed=seed, trust_connectivity=True)
        et = EliminationTrace()
        if trace is not None:
            et.observer = trace.bind(f"eliminate-{side}", ff.M | ff.F | ff.h_plus, _arcs_of(ff))
            trace.elimination.append(et)
        parts.append((ff, canonical_decomposition(ff, et, check)))
    (ff1, d1), (ff2, d2) = parts
    mc = merge_canonical(d1, d2, _arcs_of(ff1), _arcs_of(ff2), host=g)
    if trace is not None and trace.disentangle.observer is None:
        trace.disentangle.observer = trace.bind("disentangle", g.edge_ids, {**_arcs_of(ff1), **_arcs_of(ff2)})
    d = disentangle(mc, trace.disentangle if trace is not None else None, check)
    bad = [el.vertices for el in d if el.kind is not Kind.P5]
    if bad or len(d) * 5 != g.m or not d.is_partition():
        raise ClaimViolated(f"final decomposition is not a P5-decomposition ({bad[:3]})")
    return d.sorted()
