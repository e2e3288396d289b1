"""Exhaustive reference implementations used only by the tests."""

import itertools
from functools import lru_cache

from p5decomp.graph import Multigraph


def achievable_outdegrees(g: Multigraph) -> set[tuple[int, ...]]:
    """Every out-degree vector over all 2^|E| orientations (dynamic programming over edges)."""
    states = {tuple([0] * g.n)}
    for u, v in g.edges.values():
        nxt = set()
        for s in states:
            a = list(s)
            a[u] += 1
            nxt.add(tuple(a))
            a[u] -= 1
            a[v] += 1
            nxt.add(tuple(a))
        states = nxt
    return states


def achievable_residues(g: Multigraph, k: int) -> set[tuple[int, ...]]:
    return {tuple(d % k for d in vec) for vec in achievable_outdegrees(g)}


def orientation_feasible(g: Multigraph, p, k: int) -> bool:
    return tuple(r % k for r in p) in achievable_residues(g, k)


def brute_force_orientation_feasible(g: Multigraph, p, k: int) -> bool:
    edges = list(g.edges.values())
    for bits in itertools.product((0, 1), repeat=len(edges)):
        out = [0] * g.n
        for b, (u, v) in zip(bits, edges):
            out[v if b else u] += 1
        if all(d % k == r % k for d, r in zip(out, p)):
            return True
    return False


def has_perfect_matching(n: int, pairs) -> bool:
    """Bitmask search: match the lowest unmatched vertex in every possible way."""
    adj = [0] * n
    for u, v in pairs:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    @lru_cache(maxsize=None)
    def rec(free: int) -> bool:
        if not free:
            return True
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        cand = adj[v] & rest
        while cand:
            w = cand & -cand
            if rec(rest & ~w):
                return True
            cand ^= w
        return False

    return n % 2 == 0 and rec((1 << n) - 1)


def max_matching_size(n: int, pairs) -> int:
    best = 0
    pairs = list(pairs)

    def rec(i: int, used: int, size: int) -> None:
        nonlocal best
        if size + (len(pairs) - i) <= best:
            return
        if i == len(pairs):
            best = max(best, size)
            return
        u, v = pairs[i]
        if not used >> u & 1 and not used >> v & 1:
            rec(i + 1, used | 1 << u | 1 << v, size + 1)
        rec(i + 1, used, size)

    rec(0, 0, 0)
    return best
