"""Two-part splits, 5-regular reduction and fractional factorizations (M, F, H).

A fractional factorization for a vertex class A is an oriented edge
partition (M, F, H) where every M edge points from B into A, every vertex
of A has ``d(v)/5`` in-edges of M and ``d(v)/5`` in- and out-edges of each
of F and H, and every B vertex is balanced in F and in H.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .connectivity import TreePacking, connectivity_certificate, spanning_tree_packing
from .errors import (
    ClaimViolated,
    ConnectivityViolated,
    DivisibilityViolated,
    NotFourRegular,
    PreconditionViolated,
)
from .graph import Multigraph, Orientation
from .matching import perfect_matching
from .orientation import ResidueTarget, eulerian_orientation, mod_k_orientation
from .transforms import SubdegreeSequence, admissible_lifting, connected_detachment, lift_pair


def _require_sides(g: Multigraph) -> None:
    if g.sides is None:
        raise PreconditionViolated("a bipartition is required")


@dataclass(frozen=True)
class TwoSplit:
    """Edge-disjoint spanning parts; ``g1`` is 0 mod k on side 0, ``g2`` on side 1."""

    g1: Multigraph
    g2: Multigraph
    k: int
    r: int
    packing: TreePacking
    h3_orientation: Orientation


def split_into_two(g: Multigraph, k: int = 5, r: int = 6, seed: int = 0,
                   trust_connectivity: bool = False) -> TwoSplit:
    """Split a ``(6k-6+4r)``-edge-connected bipartite graph into two r-connected parts.

    Packs ``3k-3+2r`` spanning trees; the first r form H1, the next r form H2
    and all remaining edges form H3.  H3 is oriented so that every side-0
    vertex has out-degree ``-d_H1(v)`` and every side-1 vertex ``-d_H2(v)``
    modulo k; each part then takes the H3 edges leaving its own side.
    """
    _require_sides(g)
    if k < 3 or k % 2 == 0:
        raise PreconditionViolated(f"modulus must be odd and at least 3, got {k}")
    if g.m % k:
        raise DivisibilityViolated(f"|E|={g.m} is not divisible by {k}")
    need = 6 * k - 6 + 4 * r
    if not trust_connectivity:
        cut = connectivity_certificate(g, need)
        if cut is not None:
            raise ConnectivityViolated(f"input has a cut of {cut.value} < {need} edges")
    packing = spanning_tree_packing(g, 3 * k - 3 + 2 * r, seed=seed)
    h1 = set().union(*packing.trees[:r])
    h2 = set().union(*packing.trees[r:2 * r])
    h3 = [e for e in g.edge_ids if e not in h1 and e not in h2]
    gh3 = g.subgraph(h3)
    cut = connectivity_certificate(gh3, 3 * k - 3)
    if cut is not None:
        raise ClaimViolated(f"remainder after the first {2 * r} trees has a cut of {cut.value}")
    d1 = g.subgraph(h1).degrees()
    d2 = g.subgraph(h2).degrees()
    p = [((k - 1) * (d1[v] if g.side(v) == 0 else d2[v])) % k for v in range(g.n)]
    if sum(p) % k != gh3.m % k:
        raise ClaimViolated("residues of the remainder do not sum to its size mod k")
    orient = mod_k_orientation(gh3, ResidueTarget(p, k))
    e1 = sorted(h1 | {e for e in h3 if g.side(orient.tail(e)) == 0})
    e2 = sorted(h2 | {e for e in h3 if g.side(orient.tail(e)) == 1})
    g1, g2 = g.subgraph(e1), g.subgraph(e2)
    for i, part in enumerate((g1, g2)):
        if connectivity_certificate(part, r) is not None:
            raise ClaimViolated(f"part {i + 1} is not {r}-edge-connected")
        for v in part.vertices_on(i):
            if part.degree(v) % k:
                raise ClaimViolated(f"part {i + 1} has degree {part.degree(v)} at vertex {v}")
    return TwoSplit(g1, g2, k, r, packing, orient)


@dataclass(frozen=True)
class Regularization:
    """A 5-regular 4-edge-connected graph ``gstar`` reduced from ``source``.

    ``pullback[e]`` lists the source edges that ``gstar`` edge ``e`` stands
    for: one edge, or two edges ``(e_u, e_w)`` through a B vertex
    ``middle[e]`` with ``e_u`` at the first endpoint of ``e``.
    """

    source: Multigraph
    gstar: Multigraph
    pullback: Mapping[int, tuple[int, ...]]
    middle: Mapping[int, int]
    vertex_origin: tuple[int, ...]
    a_side: int
    lifts: int = 0
    suppressions: int = 0

    def a_star(self) -> list[int]:
        return [x for x in range(self.gstar.n)
                if self.source.side(self.vertex_origin[x]) == self.a_side]


def _check_divisible(g: Multigraph, a_side: int) -> None:
    for v in g.vertices_on(a_side):
        if g.degree(v) % 5:
            raise DivisibilityViolated(f"vertex {v} in A has degree {g.degree(v)}")


def regularize(g: Multigraph, a_side: int = 0, seed: int = 0,
               trust_connectivity: bool = False) -> Regularization:
    """Detach, lift and suppress ``g`` into a 5-regular 4-edge-connected multigraph.

    A vertices split into degree-5 copies; a B vertex of degree ``4s + q``
    splits into one copy of degree ``4 + q`` and ``s - 1`` copies of degree 4.
    B copies of degree 4, 6 or 7 are lifted (in increasing id) until none is
    left, keeping the A copies pairwise 4-edge-connected; copies left at
    degree 2 are suppressed.
    """
    _require_sides(g)
    _check_divisible(g, a_side)
    if not trust_connectivity and g.n >= 2:
        cut = connectivity_certificate(g, 4)
        if cut is not None:
            raise ConnectivityViolated(f"input has a cut of {cut.value} < 4 edges")
    seqs = []
    for v in range(g.n):
        d = g.degree(v)
        if d == 0:
            continue
        if g.side(v) == a_side:
            seqs.append(SubdegreeSequence(v, [5] * (d // 5)))
        else:
            if d < 4:
                raise PreconditionViolated(f"B vertex {v} has degree {d} < 4")
            s, q = divmod(d, 4)
            seqs.append(SubdegreeSequence(v, [4 + q] + [4] * (s - 1)))
    h, dmap = connected_detachment(g, seqs, 2, seed=seed, trust_input=True)
    origin = dmap.backward
    a_copies = [x for x in range(h.n) if h.degree(x) and h.side(x) == a_side]
    pullback: dict[int, tuple[int, ...]] = {e: (e,) for e in g.edge_ids}
    middle: dict[int, int] = {}
    lifts = 0
    b_copies = [x for x in range(h.n) if h.side(x) != a_side]
    h = h.with_sides(None)  # liftings create A-A edges
    for _ in range(2):  # second pass is the rescan; it finds nothing to do
        for v in b_copies:
            while h.degree(v) in (4, 6, 7):
                lift = admissible_lifting(h, v, terminals=a_copies, requirement=4)
                h = lift.graph
                pullback[lift.added] = lift.removed
                middle[lift.added] = origin[v]
                for e in lift.removed:
                    del pullback[e]
                lifts += 1
    supp = 0
    for v in b_copies:
        if h.degree(v) == 2:
            e1, e2 = sorted(h.incidence[v])
            lift = lift_pair(h, v, e1, e2, suppress_vertex=True)
            h = lift.graph
            pullback[lift.added] = lift.removed
            middle[lift.added] = origin[v]
            for e in lift.removed:
                del pullback[e]
            supp += 1
    keep = [x for x in range(h.n) if h.degree(x)]
    index = {x: i for i, x in enumerate(keep)}
    gstar = Multigraph(len(keep), {e: (index[u], index[w]) for e, (u, w) in h.edges.items()},
                       next_id=h.next_id)
    vertex_origin = tuple(origin[x] for x in keep)
    reg = Regularization(g, gstar, pullback, middle, vertex_origin, a_side, lifts, supp)
    _certify_regularization(reg)
    return reg


def _certify_regularization(reg: Regularization) -> None:
    gs, src = reg.gstar, reg.source
    bad = [x for x in range(gs.n) if gs.degree(x) != 5]
    if bad:
        raise ClaimViolated(f"reduced graph is not 5-regular at {bad[:5]}")
    for e, (u, w) in gs.edges.items():
        if src.side(reg.vertex_origin[u]) != reg.a_side and src.side(reg.vertex_origin[w]) != reg.a_side:
            raise ClaimViolated(f"edge {e} joins two B vertices")
    if gs.n >= 2 and connectivity_certificate(gs, 4) is not None:
        raise ClaimViolated("reduced graph is not 4-edge-connected")
    covered = [x for img in reg.pullback.values() for x in img]
    if len(covered) != len(set(covered)) or set(covered) != set(src.edge_ids):
        raise ClaimViolated("pullback images do not partition the source edges")


def two_factorization(g: Multigraph, orientation: Orientation | None = None
                      ) -> tuple[frozenset[int], frozenset[int]]:
    """Split a 4-regular multigraph into two 2-factors F and H.

    With an Eulerian orientation, each vertex has two out-arcs and two
    in-arcs.  Alternately assigning arcs around the cycles of the in/out
    incidence graph gives each part one out-arc and one in-arc per vertex.
    """
    bad = [v for v in range(g.n) if g.degree(v) != 4]
    if bad:
        raise NotFourRegular(f"vertices of degree other than 4: {bad[:10]}")
    o = orientation if orientation is not None else eulerian_orientation(g)
    outs: list[list[int]] = [[] for _ in range(g.n)]
    ins: list[list[int]] = [[] for _ in range(g.n)]
    for e in g.edge_ids:
        t, h = o.arcs[e]
        outs[t].append(e)
        ins[h].append(e)
    if any(len(x) != 2 for x in outs) or any(len(x) != 2 for x in ins):
        raise PreconditionViolated("orientation is not Eulerian")
    part: dict[int, int] = {}
    for start in g.edge_ids:
        if start in part:
            continue
        e, label = start, 0
        while e not in part:
            part[e] = label
            # sibling at the head shares the in-slot, so it takes the other label
            h = o.arcs[e][1]
            f = ins[h][0] if ins[h][1] == e else ins[h][1]
            part[f] = 1 - label
            t = o.arcs[f][0]
            e = outs[t][0] if outs[t][1] == f else outs[t][1]
    F = frozenset(e for e, p in part.items() if p == 0)
    H = frozenset(e for e, p in part.items() if p == 1)
    return F, H


@dataclass(frozen=True)
class FractionalFactorization:
    graph: Multigraph
    M: frozenset[int]
    F: frozenset[int]
    H: frozenset[int]
    orient: Orientation
    a_side: int
    regularization: Regularization | None = field(default=None, compare=False, repr=False)

    def in_a(self, v: int) -> bool:
        return self.graph.side(v) == self.a_side

    @property
    def h_plus(self) -> frozenset[int]:
        """H edges leaving A."""
        return frozenset(e for e in self.H if self.in_a(self.orient.tail(e)))

    @property
    def h_minus(self) -> frozenset[int]:
        """H edges entering A."""
        return frozenset(e for e in self.H if self.in_a(self.orient.head(e)))

    def edge_class(self, e: int) -> str:
        if e in self.M:
            return "M"
        if e in self.F:
            return "F"
        if e in self.H:
            return "H"
        raise KeyError(e)


def fractional_factorization(g: Multigraph, a_side: int = 0, seed: int = 0,
                             trust_connectivity: bool = False) -> FractionalFactorization:
    """Fractional factorization of a 4-edge-connected bipartite graph for class ``a_side``.

    The 5-regular reduction has a perfect matching M*; the remaining
    4-regular graph splits into 2-factors F*, H* which are oriented along an
    Eulerian orientation.  Everything is pulled back to ``g``: a reduced edge
    xy standing for x-b-y is oriented x->b->y, and M points into A.
    """
    reg = regularize(g, a_side, seed=seed, trust_connectivity=trust_connectivity)
    gs = reg.gstar
    mstar = perfect_matching(gs)
    j = gs.subgraph(e for e in gs.edge_ids if e not in mstar)
    o = eulerian_orientation(j)
    fstar, hstar = two_factorization(j, o)
    arcs: dict[int, tuple[int, int]] = {}
    origin = reg.vertex_origin
    for e in sorted(fstar | hstar):
        x, y = o.arcs[e]
        img = reg.pullback[e]
        if len(img) == 1:
            arcs[img[0]] = (origin[x], origin[y])
        else:
            b = reg.middle[e]
            u, _ = gs.endpoints(e)
            ex, ey = img if u == x else img[::-1]
            arcs[ex] = (origin[x], b)
            arcs[ey] = (b, origin[y])
    M = frozenset(s for e in mstar for s in reg.pullback[e])
    F = frozenset(s for e in fstar for s in reg.pullback[e])
    H = frozenset(s for e in hstar for s in reg.pullback[e])
    for e in M:
        u, v = g.endpoints(e)
        arcs[e] = (v, u) if g.side(u) == a_side else (u, v)
    return FractionalFactorization(g, M, F, H, Orientation.checked(g, arcs), a_side, reg)
