"""Bipartite instance generators.

Class A is vertices ``0..nA-1`` (side 0), class B is ``nA..nA+nB-1`` (side 1).
Random generators certify their output and resample on failure.
"""

from __future__ import annotations

import random
from typing import Iterable

from .connectivity import connectivity_certificate
from .errors import GenerationFailed, PreconditionViolated
from .graph import A_SIDE, B_SIDE, Multigraph


def bipartite(n_a: int, n_b: int, pairs: Iterable[tuple[int, int]]) -> Multigraph:
    """``pairs`` are ``(i, j)`` with ``i`` indexing A and ``j`` indexing B."""
    edges = [(i, n_a + j) for i, j in pairs]
    return Multigraph(n_a + n_b, edges, [A_SIDE] * n_a + [B_SIDE] * n_b)


def complete_bipartite(n_a: int, n_b: int) -> Multigraph:
    return bipartite(n_a, n_b, ((i, j) for i in range(n_a) for j in range(n_b)))


def circulant_bipartite(n: int, offsets: Iterable[int]) -> Multigraph:
    """``a_i`` joined to ``b_{(i + o) mod n}`` for each offset (repeats give parallel edges)."""
    offs = list(offsets)
    if n < 1:
        raise PreconditionViolated("n must be positive")
    return bipartite(n, n, ((i, (i + o) % n) for i in range(n) for o in offs))


def _random_regular_pairs(n: int, d: int, rng: random.Random) -> list[tuple[int, int]]:
    """Simple d-regular bipartite graph on n+n vertices via random double-edge swaps."""
    adj = [set((i + o) % n for o in range(d)) for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in sorted(adj[i])]
    for _ in range(10 * n * d):
        x, y = rng.randrange(len(pairs)), rng.randrange(len(pairs))
        (a, b), (c, e) = pairs[x], pairs[y]
        if a == c or b == e or e in adj[a] or b in adj[c]:
            continue
        adj[a].remove(b)
        adj[c].remove(e)
        adj[a].add(e)
        adj[c].add(b)
        pairs[x], pairs[y] = (a, e), (c, b)
    return sorted(pairs)


def random_regular_bipartite(n: int, d: int, seed: int = 0, min_connectivity: int | None = None,
                             divisor: int = 5, attempts: int = 20) -> Multigraph:
    """Simple d-regular bipartite graph on n+n vertices, certified before return.

    Dense instances are drawn as the complement of a sparse random regular
    graph, which mixes far faster than swapping inside a near-complete graph.
    ``min_connectivity`` defaults to d - 2.
    """
    if not 0 <= d <= n:
        raise PreconditionViolated(f"degree {d} impossible with {n} vertices per side")
    need = d - 2 if min_connectivity is None else min_connectivity
    if (n * d) % divisor:
        raise GenerationFailed(f"{n * d} edges are not divisible by {divisor}")
    rng = random.Random(seed)
    for _ in range(attempts):
        if 2 * d > n:
            holes = set(_random_regular_pairs(n, n - d, rng))
            pairs = [(i, j) for i in range(n) for j in range(n) if (i, j) not in holes]
        else:
            pairs = _random_regular_pairs(n, d, rng)
        g = bipartite(n, n, pairs)
        if connectivity_certificate(g, need) is None:
            return g
    raise GenerationFailed(f"no {need}-edge-connected sample in {attempts} attempts")
