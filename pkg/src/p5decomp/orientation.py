"""Eulerian orientations and orientations with out-degrees prescribed modulo k."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import Infeasible, OddDegree, PreconditionViolated
from .graph import Multigraph, Orientation


@dataclass(frozen=True)
class ResidueTarget:
    p: tuple[int, ...]
    k: int

    def __init__(self, p: Sequence[int], k: int) -> None:
        if k < 1:
            raise PreconditionViolated(f"modulus must be positive, got {k}")
        object.__setattr__(self, "p", tuple(x % k for x in p))
        object.__setattr__(self, "k", k)

    def holds_on(self, g: Multigraph) -> bool:
        return len(self.p) == g.n and sum(self.p) % self.k == g.m % self.k


def _euler_arcs(n: int, edges: dict[int, tuple[int, int]]) -> dict[int, tuple[int, int]]:
    """Orient every edge along closed walks (Hierholzer); all degrees must be even."""
    inc: list[list[int]] = [[] for _ in range(n)]
    for e in sorted(edges):
        u, v = edges[e]
        inc[u].append(e)
        inc[v].append(e)
    ptr = [0] * n
    used: set[int] = set()
    arcs: dict[int, tuple[int, int]] = {}
    for root in range(n):
        stack = [root]
        while stack:
            x = stack[-1]
            lst = inc[x]
            while ptr[x] < len(lst) and lst[ptr[x]] in used:
                ptr[x] += 1
            if ptr[x] == len(lst):
                stack.pop()
                continue
            e = lst[ptr[x]]
            used.add(e)
            u, v = edges[e]
            y = v if u == x else u
            arcs[e] = (x, y)
            stack.append(y)
    return arcs


def eulerian_orientation(g: Multigraph) -> Orientation:
    """In-degree equals out-degree at every vertex."""
    odd = [v for v in range(g.n) if g.degree(v) % 2]
    if odd:
        raise OddDegree(f"vertices of odd degree: {odd[:10]}")
    return Orientation(_euler_arcs(g.n, g.edges))


def _balanced_arcs(g: Multigraph) -> dict[int, tuple[int, int]]:
    """Orientation with |d+ - d-| <= 1, via a dummy vertex joined to odd vertices."""
    edges = dict(g.edges)
    dummy = g.n
    fake = g.next_id
    for v in range(g.n):
        if g.degree(v) % 2:
            edges[fake] = (v, dummy)
            fake += 1
    arcs = _euler_arcs(g.n + 1, edges)
    return {e: arcs[e] for e in g.edge_ids}


def _candidates(d: int, r: int, k: int) -> list[int]:
    return list(range(r, d + 1, k))


def _initial_targets(g: Multigraph, t: ResidueTarget) -> list[int]:
    k, tau = t.k, []
    for v in range(g.n):
        d = g.degree(v)
        cs = _candidates(d, t.p[v], k)
        if not cs:
            raise Infeasible(f"vertex {v} of degree {d} cannot have out-degree {t.p[v]} mod {k}")
        tau.append(min(cs, key=lambda c: (abs(2 * c - d), c)))
    total = sum(tau)
    while total != g.m:
        step = -k if total > g.m else k
        best = None
        for v in range(g.n):
            c = tau[v] + step
            if 0 <= c <= g.degree(v):
                cost = abs(2 * c - g.degree(v)) - abs(2 * tau[v] - g.degree(v))
                if best is None or cost < best[0]:
                    best = (cost, v)
        if best is None:
            raise Infeasible("no residue lift sums to |E|")
        tau[best[1]] += step
        total += step
    return tau


def _realize(g: Multigraph, tau: Sequence[int], arcs: dict[int, tuple[int, int]]):
    """Reverse directed paths from surplus to deficit vertices until ``d+ = tau``.

    Mutates ``arcs``.  Returns None on success, else the closed set of vertices
    reachable from the remaining surplus vertices (a witness that ``tau`` is
    unrealizable: it holds more out-degree than there are edges inside it).
    """
    n = g.n
    out = [0] * n
    for u, _ in arcs.values():
        out[u] += 1
    inc = g.incidence
    while True:
        surplus = [v for v in range(n) if out[v] > tau[v]]
        if not surplus:
            return None
        pred = [-2] * n
        for s in surplus:
            pred[s] = -1
        queue = deque(surplus)
        hit = -1
        while queue and hit < 0:
            x = queue.popleft()
            for e in inc[x]:
                a, b = arcs[e]
                if a != x or pred[b] != -2:
                    continue
                pred[b] = e
                if out[b] < tau[b]:
                    hit = b
                    break
                queue.append(b)
        if hit < 0:
            return frozenset(v for v in range(n) if pred[v] != -2)
        y = hit
        out[y] += 1
        while pred[y] != -1:
            e = pred[y]
            a, b = arcs[e]
            arcs[e] = (b, a)
            y = a
        out[y] -= 1


def _lifts(g: Multigraph, t: ResidueTarget) -> Iterator[list[int]]:
    """Every target vector ``tau`` with the right residues and sum |E|."""
    n, k = g.n, t.k
    cands = [_candidates(g.degree(v), t.p[v], k) for v in range(n)]
    lo = [0] * (n + 1)
    hi = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        lo[v] = lo[v + 1] + (cands[v][0] if cands[v] else 0)
        hi[v] = hi[v + 1] + (cands[v][-1] if cands[v] else 0)
    if any(not c for c in cands):
        return
    tau = [0] * n

    def rec(v: int, rest: int) -> Iterator[list[int]]:
        if v == n:
            if rest == 0:
                yield list(tau)
            return
        for c in cands[v]:
            r = rest - c
            if lo[v + 1] <= r <= hi[v + 1]:
                tau[v] = c
                yield from rec(v + 1, r)

    yield from rec(0, g.m)


EXHAUSTIVE_EDGE_LIMIT = 24
RANDOM_RESTARTS = 100


def _adjust(g: Multigraph, k: int, tau: list[int], base, budget: int, rng: random.Random | None):
    """Realize ``tau``, moving k units of target into each stuck closed set.

    ``rng=None`` picks the most balanced vertices; otherwise the choice is
    random, which escapes the cycles the greedy rule can fall into.
    """
    arcs = dict(base)
    d = g.degree
    for _ in range(budget):
        closed = _realize(g, tau, arcs)
        if closed is None:
            return arcs
        up = [v for v in sorted(closed) if tau[v] + k <= d(v)]
        down = [v for v in range(g.n) if v not in closed and tau[v] - k >= 0]
        if not up or not down:
            return None
        if rng is None:
            a = min(up, key=lambda v: (abs(2 * (tau[v] + k) - d(v)), v))
            b = min(down, key=lambda v: (abs(2 * (tau[v] - k) - d(v)), v))
        else:
            a, b = rng.choice(up), rng.choice(down)
        tau[a] += k
        tau[b] -= k
    return None


def mod_k_orientation(g: Multigraph, t: ResidueTarget, budget: int | None = None,
                      restarts: int = RANDOM_RESTARTS) -> Orientation:
    """Orient every edge so that ``d+(v) = p(v) (mod k)``.

    Exact targets start as balanced as possible; when path reversals get
    stuck on a closed set X, one target inside X is raised by k and one
    outside is lowered by k.  The first pass chooses greedily, later passes
    (seeded, so deterministic) choose at random.  Graphs with at most
    ``EXHAUSTIVE_EDGE_LIMIT`` edges fall back to enumerating all target
    vectors, which makes the answer exact there.
    """
    if len(t.p) != g.n:
        raise PreconditionViolated(f"residue target has {len(t.p)} entries for {g.n} vertices")
    if sum(t.p) % t.k != g.m % t.k:
        raise PreconditionViolated(
            f"sum of residues {sum(t.p)} is not congruent to |E|={g.m} mod {t.k}")
    if budget is None:
        budget = 4 * g.n + 20
    base = _balanced_arcs(g)
    try:
        start = _initial_targets(g, t)
    except Infeasible:
        start = None
    if start is not None:
        # small graphs skip the random passes: the enumeration below is exact
        passes = 1 if g.m <= EXHAUSTIVE_EDGE_LIMIT else restarts + 1
        for attempt in range(passes):
            rng = None if attempt == 0 else random.Random(attempt)
            arcs = _adjust(g, t.k, list(start), base, budget, rng)
            if arcs is not None:
                return _checked(g, t, arcs)
    if g.m <= EXHAUSTIVE_EDGE_LIMIT:
        for tau in _lifts(g, t):
            arcs = dict(base)
            if _realize(g, tau, arcs) is None:
                return _checked(g, t, arcs)
        raise Infeasible("no orientation meets the residues (exhaustive)")
    raise Infeasible(f"no orientation found within {restarts + 1} searches of {budget} adjustments")


def _checked(g: Multigraph, t: ResidueTarget, arcs) -> Orientation:
    o = Orientation.checked(g, arcs)
    outs = o.out_degrees(g.n)
    for v in range(g.n):
        if outs[v] % t.k != t.p[v]:
            raise Infeasible(f"internal: vertex {v} has out-degree {outs[v]}")
    return o
