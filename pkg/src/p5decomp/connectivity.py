"""Edge-disjoint path counts, edge-connectivity certificates and tree packing."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ClaimViolated, PackingNotFound, PreconditionViolated, SameVertex, TooSmall
from .graph import Multigraph


@dataclass(frozen=True)
class Cut:
    """A vertex set ``side`` and the edge ids with exactly one end inside it."""

    value: int
    side: frozenset[int]
    edges: tuple[int, ...]


def _cut_from_side(g: Multigraph, side: Sequence[bool]) -> Cut:
    crossing = tuple(e for e, (u, v) in g.edges.items() if side[u] != side[v])
    return Cut(len(crossing), frozenset(v for v in range(g.n) if side[v]), crossing)


def max_edge_disjoint_paths(g: Multigraph, x: int, y: int, cap: int = -1) -> int:
    """Number of pairwise edge-disjoint ``x``-``y`` paths (optionally capped)."""
    if x == y:
        raise SameVertex(f"p(x, y) needs distinct vertices, got {x} twice")
    return g.flow_graph.max_flow(x, y, cap)


def min_edge_cut(g: Multigraph, x: int, y: int) -> Cut:
    if x == y:
        raise SameVertex(f"cut needs distinct vertices, got {x} twice")
    fg = g.flow_graph
    fg.max_flow(x, y)
    return _cut_from_side(g, fg.source_side())


def min_cut(g: Multigraph) -> Cut:
    """Global minimum edge cut, by n-1 flows from vertex 0."""
    if g.n < 2:
        raise TooSmall("edge connectivity needs at least two vertices")
    _, _, side = g.flow_graph.min_over_targets(0, range(1, g.n))
    return _cut_from_side(g, side)


def edge_connectivity(g: Multigraph) -> int:
    return min_cut(g).value


def connectivity_certificate(g: Multigraph, k: int, terminals: Iterable[int] | None = None) -> Cut | None:
    """Return a cut of fewer than ``k`` edges separating two terminals, or None.

    ``terminals`` defaults to every vertex, in which case None certifies that
    ``g`` is ``k``-edge-connected.  Local connectivity is transitive in the
    sense ``p(x, z) >= min(p(x, y), p(y, z))``, so flows from one root suffice.
    """
    terms = list(range(g.n)) if terminals is None else sorted(set(terminals))
    if len(terms) < 2:
        if terminals is None:
            raise TooSmall("edge connectivity needs at least two vertices")
        return None
    if k <= 0:
        return None
    val, _, side = g.flow_graph.min_over_targets(terms[0], terms[1:], k)
    if val >= k:
        return None
    return _cut_from_side(g, side)


def is_k_edge_connected(g: Multigraph, k: int) -> bool:
    return connectivity_certificate(g, k) is None


@dataclass(frozen=True)
class TreePacking:
    trees: tuple[frozenset[int], ...]

    def used(self) -> set[int]:
        return set().union(*self.trees) if self.trees else set()


class _Forests:
    """``k`` edge-disjoint forests with parent pointers for path queries."""

    def __init__(self, g: Multigraph, k: int) -> None:
        self.g = g
        self.k = k
        self.n = g.n
        self.ends = g.edges
        self.owner: dict[int, int] = {}
        self.members: list[set[int]] = [set() for _ in range(k)]
        self.comp = [list(range(self.n)) for _ in range(k)]
        self.parent = [[-1] * self.n for _ in range(k)]
        self.depth = [[0] * self.n for _ in range(k)]

    def rebuild(self, i: int) -> None:
        n, ends = self.n, self.ends
        adj: list[list[int]] = [[] for _ in range(n)]
        for e in self.members[i]:
            a, b = ends[e]
            adj[a].append(e)
            adj[b].append(e)
        comp, parent, depth = [-1] * n, [-1] * n, [0] * n
        for r in range(n):
            if comp[r] != -1:
                continue
            comp[r] = r
            stack = [r]
            while stack:
                x = stack.pop()
                for e in adj[x]:
                    if e == parent[x]:
                        continue
                    a, b = ends[e]
                    y = b if a == x else a
                    if comp[y] != -1:
                        raise ClaimViolated(f"forest {i} acquired a cycle through edge {e}")
                    comp[y] = r
                    parent[y] = e
                    depth[y] = depth[x] + 1
                    stack.append(y)
        self.comp[i], self.parent[i], self.depth[i] = comp, parent, depth

    def path(self, i: int, u: int, v: int) -> list[int]:
        parent, depth, ends = self.parent[i], self.depth[i], self.ends
        left, right = [], []
        while u != v:
            if depth[u] >= depth[v]:
                e = parent[u]
                left.append(e)
                a, b = ends[e]
                u = b if a == u else a
            else:
                e = parent[v]
                right.append(e)
                a, b = ends[e]
                v = b if a == v else a
        return left + right[::-1]

    def full(self, i: int) -> bool:
        return len(self.members[i]) == self.n - 1

    def insert(self, e: int) -> bool:
        """Add ``e`` to the packing, augmenting through the exchange graph if needed."""
        ends, k = self.ends, self.k
        label: dict[int, tuple[int, int] | None] = {e: None}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            a, b = ends[x]
            own = self.owner.get(x, -1)
            for i in range(k):
                if i != own and not self.full(i) and self.comp[i][a] != self.comp[i][b]:
                    self._augment(x, i, label)
                    return True
            for i in range(k):
                if i == own:
                    continue
                if self.comp[i][a] != self.comp[i][b]:
                    continue
                for z in self.path(i, a, b):
                    if z not in label:
                        label[z] = (x, i)
                        queue.append(z)
        return False

    def _augment(self, x: int, target: int, label) -> None:
        touched = {target}
        self.members[target].add(x)
        prev_owner = self.owner.get(x, -1)
        self.owner[x] = target
        if prev_owner >= 0:
            self.members[prev_owner].discard(x)
        while label[x] is not None:
            y, i = label[x]
            # x left forest i (already removed above); y takes its place
            touched.add(i)
            old = self.owner.get(y, -1)
            self.members[i].add(y)
            self.owner[y] = i
            if old >= 0:
                self.members[old].discard(y)
            x = y
        for i in touched:
            self.rebuild(i)


def spanning_tree_packing(g: Multigraph, k: int, seed: int = 0) -> TreePacking:
    """``k`` pairwise edge-disjoint spanning trees, by matroid-union augmentation.

    Edges are offered in a seeded random order; each is placed greedily into
    a forest it does not close a cycle in, or else routed through a
    breadth-first exchange search.  The result is checked tree by tree.
    Raises :class:`PackingNotFound` when fewer than ``k`` trees fit, which
    happens exactly when ``g`` has no ``k`` disjoint spanning trees.
    """
    if k < 0:
        raise PreconditionViolated("k must be non-negative")
    if k == 0:
        return TreePacking(())
    if g.n == 1:
        return TreePacking(tuple(frozenset() for _ in range(k)))
    need = k * (g.n - 1)
    if g.m < need:
        raise PackingNotFound(f"{g.m} edges cannot hold {k} spanning trees on {g.n} vertices")
    forests = _Forests(g, k)
    order = list(g.edge_ids)
    random.Random(seed).shuffle(order)
    placed = 0
    for e in order:
        if placed == need:
            break
        if forests.insert(e):
            placed += 1
    if placed < need:
        raise PackingNotFound(f"only {placed} of {need} tree edges could be packed")
    trees = tuple(frozenset(s) for s in forests.members)
    _check_packing(g, trees)
    return TreePacking(trees)


def _check_packing(g: Multigraph, trees: Sequence[frozenset[int]]) -> None:
    seen: set[int] = set()
    for i, t in enumerate(trees):
        if seen & t:
            raise ClaimViolated(f"tree {i} shares edges {sorted(seen & t)[:5]}")
        seen |= t
        if len(t) != g.n - 1 or len(g.subgraph(t).components()) != 1:
            raise ClaimViolated(f"tree {i} is not a spanning tree")
