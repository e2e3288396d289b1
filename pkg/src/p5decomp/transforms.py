"""Graph surgery: vertex splittings, connected detachments, liftings, suppression.

Every operation keeps edge ids stable.  Splitting re-attaches edges to
vertex copies; lifting retires two ids and mints one.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .connectivity import connectivity_certificate
from .errors import (
    BadAssignment,
    NoAdmissiblePair,
    PreconditionViolated,
    SearchExhausted,
    WouldCreateLoop,
    WrongDegree,
)
from .graph import Multigraph


@dataclass(frozen=True)
class SubdegreeSequence:
    vertex: int
    parts: tuple[int, ...]

    def __init__(self, vertex: int, parts: Iterable[int]) -> None:
        object.__setattr__(self, "vertex", vertex)
        object.__setattr__(self, "parts", tuple(parts))
        if not self.parts or any(p <= 0 for p in self.parts):
            raise PreconditionViolated(f"parts for vertex {vertex} must be positive: {self.parts}")


@dataclass(frozen=True)
class DetachmentMap:
    """``forward[x]`` lists the copies of original vertex ``x``; ``backward[c]`` its origin."""

    forward: Mapping[int, tuple[int, ...]]
    backward: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "DetachmentMap":
        return cls({v: (v,) for v in range(n)}, tuple(range(n)))

    def then(self, later: "DetachmentMap") -> "DetachmentMap":
        """Compose with a map applied to the detached graph."""
        backward = tuple(self.backward[later.backward[c]] for c in range(len(later.backward)))
        forward: dict[int, list[int]] = {}
        for c, x in enumerate(backward):
            forward.setdefault(x, []).append(c)
        return DetachmentMap({x: tuple(cs) for x, cs in sorted(forward.items())}, backward)

    def groups(self) -> list[list[int]]:
        return [list(self.forward[x]) for x in sorted(self.forward)]


def _detach(g: Multigraph, parts_of: Mapping[int, Sequence[int]],
            assign: Mapping[int, Mapping[int, int]]) -> tuple[Multigraph, DetachmentMap]:
    """Apply all splittings at once. ``assign[x][e]`` is the part index of edge e at x."""
    n = g.n
    copies: dict[int, list[int]] = {}
    backward = list(range(n))
    for x in sorted(parts_of):
        ids = [x]
        for _ in range(len(parts_of[x]) - 1):
            ids.append(n)
            backward.append(x)
            n += 1
        copies[x] = ids
    table = {}
    for e, (u, v) in g.edges.items():
        if u in assign:
            u = copies[u][assign[u][e]]
        if v in assign:
            v = copies[v][assign[v][e]]
        table[e] = (u, v)
    sides = None if g.sides is None else [g.sides[backward[c]] for c in range(n)]
    forward = {x: tuple(copies.get(x, (x,))) for x in range(g.n)}
    h = Multigraph(n, table, sides, next_id=g.next_id)
    return h, DetachmentMap(forward, tuple(backward))


def _check_assignment(g: Multigraph, s: SubdegreeSequence, assignment: Mapping[int, int]) -> None:
    x = s.vertex
    if sum(s.parts) != g.degree(x):
        raise BadAssignment(f"parts {s.parts} do not sum to d({x})={g.degree(x)}")
    if set(assignment) != set(g.incidence[x]):
        raise BadAssignment(f"assignment must cover exactly the edges at vertex {x}")
    counts = [0] * len(s.parts)
    for e, i in assignment.items():
        if not 0 <= i < len(s.parts):
            raise BadAssignment(f"edge {e} assigned to missing part {i}")
        counts[i] += 1
    if tuple(counts) != s.parts:
        raise BadAssignment(f"assignment yields degrees {counts}, expected {list(s.parts)}")


def split_vertex(g: Multigraph, s: SubdegreeSequence,
                 assignment: Mapping[int, int]) -> tuple[Multigraph, DetachmentMap]:
    """Split ``s.vertex`` into ``len(s.parts)`` copies.

    Copy 0 keeps the original id; further copies get ids ``g.n, g.n+1, ...``.
    ``assignment`` maps each incident edge id to its part index.
    """
    _check_assignment(g, s, assignment)
    return _detach(g, {s.vertex: s.parts}, {s.vertex: assignment})


def _random_assignment(g: Multigraph, seqs: Mapping[int, tuple[int, ...]], rng: random.Random):
    assign = {}
    for x, parts in seqs.items():
        inc = list(g.incidence[x])
        rng.shuffle(inc)
        a, pos = {}, 0
        for i, p in enumerate(parts):
            for e in inc[pos:pos + p]:
                a[e] = i
            pos += p
        assign[x] = a
    return assign


def connected_detachment(
    g: Multigraph,
    seqs: Iterable[SubdegreeSequence],
    k: int,
    seed: int = 0,
    restarts: int = 20,
    repairs_per_restart: int | None = None,
    trust_input: bool = False,
) -> tuple[Multigraph, DetachmentMap]:
    """A ``2k``-edge-connected detachment realising every subdegree sequence.

    Edges are distributed among copies at random, then a violated cut is
    repaired by swapping one inside edge of a copy on one side with one
    outside edge of a sibling copy on the other side (the cut grows by 2).
    Such siblings always exist: a cut avoiding them would be a cut of ``g``.
    """
    seqs = list(seqs)
    target = 2 * k
    parts_of: dict[int, tuple[int, ...]] = {}
    for s in seqs:
        if s.vertex in parts_of:
            raise PreconditionViolated(f"vertex {s.vertex} has two subdegree sequences")
        if sum(s.parts) != g.degree(s.vertex):
            raise PreconditionViolated(f"parts {s.parts} do not sum to d({s.vertex})")
        if min(s.parts) < target:
            raise PreconditionViolated(f"part below 2k={target} at vertex {s.vertex}: {s.parts}")
        if len(s.parts) > 1:
            parts_of[s.vertex] = s.parts
    if not trust_input and g.n >= 2:
        cut = connectivity_certificate(g, target)
        if cut is not None:
            raise PreconditionViolated(f"input is not {target}-edge-connected (cut of {cut.value})")
    if not parts_of:
        return g, DetachmentMap.identity(g.n)
    if repairs_per_restart is None:
        repairs_per_restart = 4 * g.n + 50
    rng = random.Random(seed)
    for _ in range(restarts):
        assign = _random_assignment(g, parts_of, rng)
        for _ in range(repairs_per_restart):
            h, dmap = _detach(g, parts_of, assign)
            cut = connectivity_certificate(h, target)
            if cut is None:
                return h, dmap
            if not _repair(g, h, dmap, assign, cut.side, rng):
                break
    raise SearchExhausted(f"no certified {target}-edge-connected detachment after {restarts} restarts")


def _repair(g, h, dmap, assign, side, rng) -> bool:
    options = []
    for x in sorted(assign):
        cs = dmap.forward[x]
        ins = [c for c in cs if c in side]
        outs = [c for c in cs if c not in side]
        if ins and outs:
            options.append((x, ins, outs))
    if not options:
        return False
    x, ins, outs = rng.choice(options)
    rng.shuffle(ins)
    rng.shuffle(outs)
    for ci in ins:
        inner = [e for e in h.incidence[ci] if h.other(e, ci) in side]
        if not inner:
            continue
        for co in outs:
            outer = [e for e in h.incidence[co] if h.other(e, co) not in side]
            if not outer:
                continue
            e1, e2 = rng.choice(inner), rng.choice(outer)
            i1 = dmap.forward[x].index(ci)
            i2 = dmap.forward[x].index(co)
            assign[x][e1], assign[x][e2] = i2, i1
            return True
    return False


@dataclass(frozen=True)
class Lifting:
    """Edges ``removed`` = (uv, vw) at ``vertex`` replaced by fresh edge ``added`` = uw."""

    graph: Multigraph
    vertex: int
    removed: tuple[int, int]
    added: int
    ends: tuple[int, int]


def lift_pair(g: Multigraph, v: int, e1: int, e2: int, suppress_vertex: bool = False) -> Lifting:
    """Unchecked lifting of ``e1 = uv`` and ``e2 = vw`` at ``v``."""
    if e1 == e2:
        raise PreconditionViolated("a lifting needs two distinct edges")
    u, w = g.other(e1, v), g.other(e2, v)
    if u == w:
        raise WouldCreateLoop(f"edges {e1}, {e2} at {v} both lead to {u}")
    h, (new,) = g.replace((e1, e2), [(u, w)], suppressed=(v,) if suppress_vertex else ())
    return Lifting(h, v, (e1, e2), new, (u, w))


def _flow_tree(g: Multigraph) -> tuple[list[int], list[int]]:
    """Gusfield equivalent-flow tree: p(x, y) is the least weight on the tree path."""
    n = g.n
    parent, weight = [0] * n, [0] * n
    fg = g.flow_graph
    for s in range(1, n):
        t = parent[s]
        weight[s] = fg.max_flow(s, t)
        side = fg.source_side()
        for u in range(s + 1, n):
            if side[u] and parent[u] == t:
                parent[u] = s
    return parent, weight


def _tree_without(parent, weight, v) -> list[tuple[int, int, int]]:
    """Equivalent-flow tree edges for the pairs avoiding ``v``."""
    edges, at_v = [], []
    for u in range(1, len(parent)):
        a, b, w = u, parent[u], weight[u]
        if a == v:
            at_v.append((b, w))
        elif b == v:
            at_v.append((a, w))
        else:
            edges.append((a, b, w))
    if at_v:
        hub, _ = max(at_v, key=lambda t: (t[1], -t[0]))
        edges.extend((s, hub, w) for s, w in at_v if s != hub)
    return edges


def _candidate_pairs(g: Multigraph, v: int) -> list[tuple[int, int]]:
    inc = sorted(g.incidence[v])
    out, seen = [], set()
    for e1, e2 in itertools.combinations(inc, 2):
        u, w = g.other(e1, v), g.other(e2, v)
        if u == w:
            continue
        key = (min(u, w), max(u, w))
        if key in seen:
            continue
        seen.add(key)
        out.append((e1, e2))
    return out


def admissible_lifting(
    g: Multigraph,
    v: int,
    seed: int = 0,
    terminals: Iterable[int] | None = None,
    requirement: int | None = None,
    sample: int = 8,
) -> Lifting:
    """Find and certify an admissible lifting at ``v``.

    By default the contract is exact: ``p(x, y)`` is unchanged for every pair
    ``x, y`` other than ``v``.  Candidates are screened on the neighbour pairs
    of ``v`` plus a small random sample of pairs, then certified against an
    equivalent-flow tree of ``g``.

    With ``terminals`` and ``requirement`` the certificate is instead that the
    terminals stay pairwise ``requirement``-edge-connected (the only property
    the regularisation pipeline relies on).
    """
    if g.degree(v) < 2 or len(g.neighbors(v)) < 2:
        raise NoAdmissiblePair(f"vertex {v} needs two distinct neighbours (degree {g.degree(v)})")
    cands = _candidate_pairs(g, v)
    if terminals is not None:
        if requirement is None:
            raise PreconditionViolated("terminal mode needs a requirement")
        terms = sorted(set(terminals) - {v})
        for e1, e2 in cands:
            lift = lift_pair(g, v, e1, e2)
            if connectivity_certificate(lift.graph, requirement, terms) is None:
                return lift
        raise NoAdmissiblePair(f"no lifting at {v} keeps the terminals {requirement}-connected")

    rng = random.Random(seed)
    others = [x for x in range(g.n) if x != v]
    nbrs = [x for x in g.neighbors(v)]
    quick = list(itertools.combinations(nbrs, 2))
    if len(others) >= 2:
        quick += [tuple(rng.sample(others, 2)) for _ in range(sample)]
    fg = g.flow_graph
    before = {pair: fg.max_flow(*pair) for pair in quick}
    tree = None
    for e1, e2 in cands:
        lift = lift_pair(g, v, e1, e2)
        hg = lift.graph.flow_graph
        if any(hg.max_flow(a, b, w) < w for (a, b), w in before.items()):
            continue
        if tree is None:
            parent, weight = _flow_tree(g)
            tree = _tree_without(parent, weight, v)
        if all(hg.max_flow(a, b, w) >= w for a, b, w in tree):
            return lift
    raise NoAdmissiblePair(f"no admissible lifting at vertex {v}")


def suppress(g: Multigraph, v: int) -> Multigraph:
    """Replace the two edges at a degree-2 vertex by one edge; ``v`` becomes isolated."""
    if g.degree(v) != 2:
        raise WrongDegree(f"suppression needs degree 2, vertex {v} has {g.degree(v)}")
    e1, e2 = sorted(g.incidence[v])
    return lift_pair(g, v, e1, e2, suppress_vertex=True).graph
