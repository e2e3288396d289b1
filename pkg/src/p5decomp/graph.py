"""Multigraph and orientation value types with stable edge identifiers.

Edges are addressed by integer ids that survive every transformation in
this package: splitting re-attaches an edge without renaming it, lifting
retires two ids and mints a fresh one, and sub-graphs keep the ids of the
host.  Endpoint pairs are never used as edge identity because parallel
edges are routine here.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import LoopCreated, NotBipartite, PreconditionViolated

A_SIDE = 0
B_SIDE = 1


class Multigraph:
    """Loopless undirected multigraph on vertices ``0..n-1``.

    ``edges`` is either a sequence of endpoint pairs (ids become 0..m-1) or a
    mapping from edge id to endpoint pair.  ``sides`` optionally labels every
    vertex with :data:`A_SIDE` or :data:`B_SIDE`; when present each edge must
    join the two classes.  ``next_id`` is the smallest id a derived graph may
    mint, so retired ids are never reused inside one transformation session.

    Instances are treated as immutable; every operation returns a new graph.
    """

    def __init__(
        self,
        n: int,
        edges: Mapping[int, tuple[int, int]] | Iterable[tuple[int, int]] = (),
        sides: Sequence[int] | None = None,
        next_id: int | None = None,
        suppressed: Iterable[int] = (),
    ) -> None:
        if n < 0:
            raise PreconditionViolated(f"negative vertex count {n}")
        if isinstance(edges, Mapping):
            table = {int(e): (int(u), int(v)) for e, (u, v) in sorted(edges.items())}
        else:
            table = {i: (int(u), int(v)) for i, (u, v) in enumerate(edges)}
        for e, (u, v) in table.items():
            if e < 0:
                raise PreconditionViolated(f"negative edge id {e}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionViolated(f"edge {e}={u, v} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise LoopCreated(f"edge {e} is a loop at vertex {u}")
        if sides is not None:
            sides = tuple(int(s) for s in sides)
            if len(sides) != n or any(s not in (A_SIDE, B_SIDE) for s in sides):
                raise PreconditionViolated("bipartition must label every vertex 0 (A) or 1 (B)")
            for e, (u, v) in table.items():
                if sides[u] == sides[v]:
                    raise NotBipartite(f"edge {e}={u, v} lies inside one class")
        top = max(table, default=-1) + 1
        self.n = n
        self._edges = table
        self.sides: tuple[int, ...] | None = sides
        self.next_id = top if next_id is None else max(top, next_id)
        self.suppressed = frozenset(suppressed)

    # -- basic accessors ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> dict[int, tuple[int, int]]:
        return dict(self._edges)

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(self._edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        return self._edges[e]

    def has_edge(self, e: int) -> bool:
        return e in self._edges

    def other(self, e: int, v: int) -> int:
        a, b = self._edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise PreconditionViolated(f"vertex {v} is not an endpoint of edge {e}")

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for e, (u, v) in self._edges.items():
            inc[u].append(e)
            inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self.incidence]

    def neighbors(self, v: int) -> list[int]:
        return sorted({self.other(e, v) for e in self.incidence[v]})

    def side(self, v: int) -> int:
        if self.sides is None:
            raise PreconditionViolated("graph carries no bipartition")
        return self.sides[v]

    def vertices_on(self, side: int) -> list[int]:
        if self.sides is None:
            raise PreconditionViolated("graph carries no bipartition")
        return [v for v in range(self.n) if self.sides[v] == side]

    def edge_multiset(self) -> Counter:
        return Counter(tuple(sorted(p)) for p in self._edges.values())

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m}, bipartite={self.sides is not None})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return (
            self.n == other.n
            and self._edges == other._edges
            and self.sides == other.sides
        )

    __hash__ = None  # type: ignore[assignment]

    # -- derived graphs ----------------------------------------------------

    def replace(
        self,
        removed: Iterable[int] = (),
        added: Iterable[tuple[int, int]] = (),
        suppressed: Iterable[int] = (),
    ) -> tuple["Multigraph", list[int]]:
        """Drop ``removed`` edge ids, append ``added`` pairs under fresh ids."""
        table = dict(self._edges)
        for e in removed:
            del table[e]
        nid = self.next_id
        fresh = []
        for u, v in added:
            table[nid] = (u, v)
            fresh.append(nid)
            nid += 1
        g = Multigraph(self.n, table, self.sides, next_id=nid,
                       suppressed=self.suppressed | frozenset(suppressed))
        return g, fresh

    def subgraph(self, edge_ids: Iterable[int]) -> "Multigraph":
        """Spanning subgraph on the given edge ids (ids and sides preserved)."""
        keep = set(edge_ids)
        missing = keep - self._edges.keys()
        if missing:
            raise PreconditionViolated(f"unknown edge ids {sorted(missing)[:5]}")
        return Multigraph(self.n, {e: p for e, p in self._edges.items() if e in keep},
                          self.sides, next_id=self.next_id, suppressed=self.suppressed)

    def with_sides(self, sides: Sequence[int] | None) -> "Multigraph":
        return Multigraph(self.n, self._edges, sides, next_id=self.next_id,
                          suppressed=self.suppressed)

    # -- kernel views ------------------------------------------------------

    @cached_property
    def flow_graph(self):
        """Unit-capacity flow network over the edges, in ``edge_ids`` order."""
        from ._backend import FlowGraph

        ids = self.edge_ids
        return FlowGraph(self.n, [self._edges[e][0] for e in ids],
                         [self._edges[e][1] for e in ids])

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        inc = self.incidence
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [s], [s]
            while stack:
                x = stack.pop()
                for e in inc[x]:
                    y = self.other(e, x)
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out


def identify_vertices(g: Multigraph, groups: Sequence[Sequence[int]]) -> Multigraph:
    """Quotient of ``g`` collapsing each group into one vertex.

    Group ``i`` becomes vertex ``i``.  Edge ids survive unchanged.  Raises
    :class:`LoopCreated` when both endpoints of an edge share a group.
    """
    rep = [-1] * g.n
    for i, grp in enumerate(groups):
        for v in grp:
            if not 0 <= v < g.n or rep[v] != -1:
                raise PreconditionViolated(f"groups do not partition the vertex set (vertex {v})")
            rep[v] = i
    if -1 in rep:
        raise PreconditionViolated(f"vertex {rep.index(-1)} is in no group")
    table = {}
    for e, (u, v) in g.edges.items():
        if rep[u] == rep[v]:
            raise LoopCreated(f"edge {e}={u, v} collapses into a loop at group {rep[u]}")
        table[e] = (rep[u], rep[v])
    sides = None
    if g.sides is not None:
        labels = [{g.sides[v] for v in grp} for grp in groups]
        if all(len(x) == 1 for x in labels):
            sides = [x.pop() for x in labels]
    return Multigraph(len(groups), table, sides, next_id=g.next_id)


def degree_profile(g: Multigraph) -> dict[int, int]:
    return {v: len(inc) for v, inc in enumerate(g.incidence)}


@dataclass(frozen=True)
class Orientation:
    """Direction per edge id: ``arcs[e] == (tail, head)``."""

    arcs: Mapping[int, tuple[int, int]]

    @classmethod
    def checked(cls, g: Multigraph, arcs: Mapping[int, tuple[int, int]]) -> "Orientation":
        for e, (t, h) in arcs.items():
            if {t, h} != set(g.endpoints(e)):
                raise PreconditionViolated(f"arc {e}={t, h} does not match edge endpoints")
        return cls(dict(arcs))

    def __len__(self) -> int:
        return len(self.arcs)

    def tail(self, e: int) -> int:
        return self.arcs[e][0]

    def head(self, e: int) -> int:
        return self.arcs[e][1]

    def restrict(self, edge_ids: Iterable[int]) -> "Orientation":
        return Orientation({e: self.arcs[e] for e in edge_ids})

    def reversed(self, edge_ids: Iterable[int]) -> "Orientation":
        arcs = dict(self.arcs)
        for e in edge_ids:
            t, h = arcs[e]
            arcs[e] = (h, t)
        return Orientation(arcs)

    def out_degrees(self, n: int, edge_ids: Iterable[int] | None = None) -> list[int]:
        out = [0] * n
        for e in (self.arcs if edge_ids is None else edge_ids):
            out[self.arcs[e][0]] += 1
        return out

    def in_degrees(self, n: int, edge_ids: Iterable[int] | None = None) -> list[int]:
        inn = [0] * n
        for e in (self.arcs if edge_ids is None else edge_ids):
            inn[self.arcs[e][1]] += 1
        return inn


@dataclass(frozen=True)
class Trail:
    """Walk ``vertices[0] .. vertices[k]`` along ``k`` distinct edge ids."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) != len(self.edges) + 1:
            raise PreconditionViolated("a trail of k edges needs k+1 vertices")
        if len(set(self.edges)) != len(self.edges):
            raise PreconditionViolated(f"trail repeats an edge: {self.edges}")

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_path(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    @property
    def is_closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def reversed(self) -> "Trail":
        return Trail(self.vertices[::-1], self.edges[::-1])

    def fits(self, g: Multigraph) -> bool:
        for i, e in enumerate(self.edges):
            if not g.has_edge(e):
                return False
            if set(g.endpoints(e)) != {self.vertices[i], self.vertices[i + 1]}:
                return False
        return True

    def degree_in(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in zip(self.vertices, self.vertices[1:]))
