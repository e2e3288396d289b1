"""Maximum matching in general graphs (Edmonds' blossom algorithm)."""

from __future__ import annotations

from collections import deque

from .errors import NoPerfectMatching
from .graph import Multigraph


def maximum_matching(g: Multigraph) -> set[int]:
    """A maximum matching as edge ids; among parallel edges the lowest id is used."""
    best: dict[tuple[int, int], int] = {}
    for e, (u, v) in g.edges.items():
        key = (min(u, v), max(u, v))
        if key not in best or e < best[key]:
            best[key] = e
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in sorted(best):
        adj[u].append(v)
        adj[v].append(u)
    mate = _blossom(g.n, adj)
    return {best[(v, mate[v])] for v in range(g.n) if mate[v] > v}


def _blossom(n: int, adj: list[list[int]]) -> list[int]:
    mate = [-1] * n
    for u in range(n):
        if mate[u] == -1:
            for w in adj[u]:
                if mate[w] == -1:
                    mate[u], mate[w] = w, u
                    break
    for root in range(n):
        if mate[root] == -1:
            _augment_from(root, n, adj, mate)
    return mate


def _augment_from(root: int, n: int, adj: list[list[int]], mate: list[int]) -> bool:
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    used[root] = True
    q = deque([root])
    while q:
        v = q.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            q.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    # flip the alternating path back to the root
                    while to != -1:
                        pv = parent[to]
                        nxt = mate[pv]
                        mate[to], mate[pv] = pv, to
                        to = nxt
                    return True
                used[mate[to]] = True
                q.append(mate[to])
    return False


def perfect_matching(g: Multigraph) -> set[int]:
    """Edge ids covering every vertex exactly once."""
    if g.n % 2:
        raise NoPerfectMatching(f"odd vertex count {g.n}")
    m = maximum_matching(g)
    if 2 * len(m) != g.n:
        raise NoPerfectMatching(f"maximum matching covers {2 * len(m)} of {g.n} vertices")
    return m
