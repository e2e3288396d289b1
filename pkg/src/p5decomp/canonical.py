"""Basic and canonical decompositions induced by a fractional factorization.

A basic element is a directed trail ``a0 a1 a2 a3 a4`` whose edges are one
M edge into ``a1``, two F edges ``a1 -> a2 -> a3`` (the center) and one H
edge leaving ``a3``; it is a basic cycle when ``a0 == a4``.  Appending an H
edge leaving ``a4`` gives a canonical element, a P5 or (when the new end is
``a1``) a T5.  Start and end of an element are ``a1`` and ``a3``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import ClaimViolated, ExtensionImpossible, NoExtension, UnbalancedVertex
from .factorization import FractionalFactorization
from .graph import Multigraph, Trail


class Kind(enum.Enum):
    BASIC_PATH = "basic-path"
    BASIC_CYCLE = "basic-cycle"
    P5 = "P5"
    T5 = "T5"


def classify(trail: Trail) -> Kind | None:
    """Kind from the vertex sequence alone; None for anything else."""
    vs = trail.vertices
    if trail.length == 4:
        if trail.is_path:
            return Kind.BASIC_PATH
        if vs[0] == vs[4] and len(set(vs[:4])) == 4:
            return Kind.BASIC_CYCLE
        return None
    if trail.length == 5:
        if trail.is_path:
            return Kind.P5
        if len(set(vs)) == 5 and (vs[1] == vs[5] or vs[0] == vs[4]):
            return Kind.T5
    return None


@dataclass(frozen=True)
class DecompElement:
    trail: Trail
    kind: Kind

    @classmethod
    def of(cls, vertices: Sequence[int], edges: Sequence[int]) -> "DecompElement":
        t = Trail(tuple(vertices), tuple(edges))
        kind = classify(t)
        if kind is None:
            raise ClaimViolated(f"trail {t.vertices} is neither a basic, P5 nor T5 element")
        return cls(t, kind)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.trail.vertices

    @property
    def edges(self) -> tuple[int, ...]:
        return self.trail.edges

    @property
    def start(self) -> int:
        return self.trail.vertices[1]

    @property
    def end(self) -> int:
        return self.trail.vertices[3]

    @property
    def center(self) -> tuple[int, int]:
        return self.trail.edges[1], self.trail.edges[2]


class Decomposition:
    """Elements whose edge ids are meant to partition ``host``."""

    def __init__(self, host: Multigraph, elements: Iterable[DecompElement]) -> None:
        self.host = host
        self.elements = list(elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def count(self, kind: Kind) -> int:
        return sum(1 for el in self.elements if el.kind is kind)

    def edge_counter(self) -> Counter:
        return Counter(e for el in self.elements for e in el.edges)

    def is_partition(self) -> bool:
        c = self.edge_counter()
        return set(c) == set(self.host.edge_ids) and all(v == 1 for v in c.values())

    def sorted(self) -> "Decomposition":
        return Decomposition(self.host, sorted(self.elements, key=lambda el: el.edges))


def p2_decomposition(g: Multigraph, F: Iterable[int], orient, a_side: int
                     ) -> list[tuple[tuple[int, int, int], tuple[int, int]]]:
    """Pair F edges at each B vertex into directed 2-paths ``x -> y -> z``.

    Returns ``((x, y, z), (e_in, e_out))`` in order of B vertex.  In-edges
    and out-edges are matched by increasing id, swapping partners where the
    pairing would close on the same A vertex.
    """
    ins: dict[int, list[int]] = {}
    outs: dict[int, list[int]] = {}
    for e in sorted(F):
        t, h = orient.arcs[e]
        outs.setdefault(t, []).append(e)
        ins.setdefault(h, []).append(e)
    result = []
    for y in range(g.n):
        if g.side(y) == a_side:
            continue
        i_list, o_list = ins.get(y, []), list(outs.get(y, []))
        if len(i_list) != len(o_list):
            raise UnbalancedVertex(f"B vertex {y} has {len(i_list)} F edges in, {len(o_list)} out")
        for i, ei in enumerate(i_list):
            x = orient.arcs[ei][0]
            if orient.arcs[o_list[i]][1] == x:
                for j in range(i + 1, len(o_list)):
                    if orient.arcs[o_list[j]][1] != x and orient.arcs[o_list[i]][1] != orient.arcs[i_list[j]][0]:
                        o_list[i], o_list[j] = o_list[j], o_list[i]
                        break
            eo = o_list[i]
            result.append(((x, y, orient.arcs[eo][1]), (ei, eo)))
    return result


def basic_decomposition(ff: FractionalFactorization) -> Decomposition:
    """Extend every F 2-path by an M edge before it and an H edge leaving A after it."""
    g, o = ff.graph, ff.orient
    m_in: dict[int, list[int]] = {}
    for e in sorted(ff.M):
        m_in.setdefault(o.head(e), []).append(e)
    h_out: dict[int, list[int]] = {}
    for e in sorted(ff.h_plus):
        h_out.setdefault(o.tail(e), []).append(e)
    for lst in (*m_in.values(), *h_out.values()):
        lst.reverse()  # pop() then yields the lowest id
    elements = []
    sub = g.subgraph(ff.M | ff.F | ff.h_plus)
    for (x, y, z), (e1, e2) in p2_decomposition(g, ff.F, o, ff.a_side):
        if not m_in.get(x) or not h_out.get(z):
            raise ExtensionImpossible(f"2-path {x, y, z} cannot be extended by M and H edges")
        em, eh = m_in[x].pop(), h_out[z].pop()
        elements.append(DecompElement.of((o.tail(em), x, y, z, o.head(eh)), (em, e1, e2, eh)))
    leftover = [e for lst in (*m_in.values(), *h_out.values()) for e in lst]
    if leftover:
        raise ExtensionImpossible(f"edges left unused: {leftover[:5]}")
    return Decomposition(sub, elements)


@dataclass
class EliminationTrace:
    """ρ (number of basic cycles) before the first pass and after each pass.

    ``observer``, if set, is called with the full element list after every pass.
    """

    rho: list[int] = field(default_factory=list)
    sequence_lengths: list[int] = field(default_factory=list)
    observer: Callable[[list[DecompElement]], None] | None = field(default=None, repr=False)


class _Board:
    """Mutable element slots with start/end indexes."""

    def __init__(self, d: Decomposition) -> None:
        self.host = d.host
        self.slots: list[DecompElement] = list(d.elements)
        self.by_start: dict[int, set[int]] = {}
        self.by_end: dict[int, set[int]] = {}
        self.cycles: set[int] = set()
        for i, el in enumerate(self.slots):
            self._index(i, el)

    def _index(self, i: int, el: DecompElement) -> None:
        self.by_start.setdefault(el.start, set()).add(i)
        self.by_end.setdefault(el.end, set()).add(i)
        if el.kind is Kind.BASIC_CYCLE:
            self.cycles.add(i)

    def _unindex(self, i: int, el: DecompElement) -> None:
        self.by_start[el.start].discard(i)
        self.by_end[el.end].discard(i)
        self.cycles.discard(i)

    def put(self, i: int, el: DecompElement) -> None:
        self._unindex(i, self.slots[i])
        self.slots[i] = el
        self._index(i, el)


def _grow_sequence(board: _Board, first: int) -> list[int]:
    """Indices ``T_0 .. T_k*`` of the start/end sequence from basic cycle ``first``."""
    seq = [first]
    used = {first}
    s0 = board.slots[first].vertices[4]
    while True:
        ell = len(seq) - 1
        cur = board.slots[seq[-1]]
        # even positions couple by end, odd ones by start
        pool = board.by_end[cur.end] if ell % 2 == 0 else board.by_start[cur.start]
        options = sorted(pool - used)
        if not options:
            raise NoExtension(f"start/end sequence from element {first} stalls after {len(seq)} elements")
        nxt = options[0]
        seq.append(nxt)
        used.add(nxt)
        ell += 1
        el = board.slots[nxt]
        s = el.vertices[4] if ell % 2 == 0 else el.vertices[0]
        if s != s0:
            return seq


def _rewire(els: Sequence[DecompElement]) -> list[DecompElement]:
    """Exchange M and H edges along ``T_0 .. T_k*`` so that every element is a path."""
    ks = len(els) - 1
    out = []
    for ell, el in enumerate(els):
        m_from = h_from = ell
        if ell == 0:
            h_from = 1
        elif ell < ks:
            m_from, h_from = (ell + 1, ell - 1) if ell % 2 else (ell - 1, ell + 1)
        elif ks % 2:
            h_from = ks - 1
        else:
            m_from = ks - 1
        mv, me = els[m_from].vertices[0], els[m_from].edges[0]
        hv, he = els[h_from].vertices[4], els[h_from].edges[3]
        vs, es = el.vertices, el.edges
        out.append(DecompElement.of((mv, vs[1], vs[2], vs[3], hv), (me, es[1], es[2], he)))
    return out


def eliminate_basic_cycles(d: Decomposition, trace: EliminationTrace | None = None,
                           check: bool = True) -> Decomposition:
    """Rewire basic cycles away; every pass removes at least one.

    From a cycle ``T_0`` a sequence of distinct elements is grown where
    ``T_{2i}``, ``T_{2i+1}`` share their end and ``T_{2i+1}``, ``T_{2i+2}``
    share their start, stopping at the first ``T_k`` whose outer vertex
    next to the shared one differs from that of ``T_0``.  Requires a simple
    host with at least two F edges in and out of every A vertex.
    """
    board = _Board(d)
    if trace is not None:
        trace.rho.append(len(board.cycles))
    while board.cycles:
        before = len(board.cycles)
        seq = _grow_sequence(board, min(board.cycles))
        old = [board.slots[i] for i in seq]
        new = _rewire(old)
        bad = [el.vertices for el in new if el.kind is not Kind.BASIC_PATH]
        if bad:
            raise ClaimViolated(f"rewiring produced non-paths {bad}; sequence {[e.vertices for e in old]}")
        if check and Counter(e for el in old for e in el.edges) != Counter(e for el in new for e in el.edges):
            raise ClaimViolated("rewiring changed the edge multiset")
        for i, el in zip(seq, new):
            board.put(i, el)
        after = len(board.cycles)
        if check and after != sum(1 for el in board.slots if el.kind is Kind.BASIC_CYCLE):
            raise ClaimViolated("cycle count drifted from a recount")
        if after >= before:
            raise ClaimViolated(f"basic cycle count did not drop ({before} -> {after})")
        if trace is not None:
            trace.rho.append(after)
            trace.sequence_lengths.append(len(seq))
            if trace.observer is not None:
                trace.observer(list(board.slots))
    return Decomposition(d.host, board.slots)


def extend_to_canonical(ff: FractionalFactorization, d: Decomposition) -> Decomposition:
    """Append to each basic path the lowest unused H edge leaving its last vertex."""
    o = ff.orient
    h_out: dict[int, list[int]] = {}
    for e in sorted(ff.h_minus):
        h_out.setdefault(o.tail(e), []).append(e)
    for lst in h_out.values():
        lst.reverse()
    out = []
    for el in d.elements:
        if el.kind is not Kind.BASIC_PATH:
            raise ExtensionImpossible(f"element {el.vertices} is not a basic path")
        b = el.vertices[4]
        if not h_out.get(b):
            raise ExtensionImpossible(f"no H edge left leaving vertex {b}")
        e = h_out[b].pop()
        out.append(DecompElement.of(el.vertices + (o.head(e),), el.edges + (e,)))
    leftover = [e for lst in h_out.values() for e in lst]
    if leftover:
        raise ExtensionImpossible(f"H edges left unused: {leftover[:5]}")
    return Decomposition(ff.graph, out)


def canonical_decomposition(ff: FractionalFactorization, trace: EliminationTrace | None = None,
                            check: bool = True) -> Decomposition:
    """Partition all edges into P5 and T5 elements with pattern M, F, F, H, H."""
    basic = basic_decomposition(ff)
    paths = eliminate_basic_cycles(basic, trace, check)
    d = extend_to_canonical(ff, paths)
    if check and not d.is_partition():
        raise ClaimViolated("canonical elements do not partition the edges")
    return d
