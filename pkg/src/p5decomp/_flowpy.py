"""Pure-Python unit-capacity flow kernel (fallback for ``_flowcore``).

Each undirected edge is one unit of capacity usable in either direction,
so the max flow between ``s`` and ``t`` equals the number of edge-disjoint
``s``-``t`` paths.  Parallel edges stay separate arcs.
"""

from __future__ import annotations

from typing import Sequence


class FlowGraph:
    def __init__(self, n: int, tails: Sequence[int], heads: Sequence[int]) -> None:
        if len(tails) != len(heads):
            raise ValueError("tails and heads differ in length")
        self.n = n
        self.m = len(tails)
        self._tails = list(tails)
        self._heads = list(heads)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for j, (a, b) in enumerate(zip(self._tails, self._heads)):
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge {j} out of range")
            adj[a].append((b, j))
            adj[b].append((a, j))
        self._adj = adj
        self._side: list[bool] | None = None

    def max_flow(self, s: int, t: int, cap: int = -1) -> int:
        """Edge-disjoint path count between ``s`` and ``t``, stopping at ``cap`` if ``cap >= 0``."""
        if s == t:
            raise ValueError("source equals sink")
        tails, adj = self._tails, self._adj
        flow = [0] * self.m
        n = self.n
        value = 0
        while cap < 0 or value < cap:
            pred = [-2] * n
            pred[s] = -1
            queue = [s]
            found = False
            for x in queue:
                for y, j in adj[x]:
                    if pred[y] != -2:
                        continue
                    if (flow[j] < 1) if tails[j] == x else (flow[j] > -1):
                        pred[y] = j
                        if y == t:
                            found = True
                            break
                        queue.append(y)
                if found:
                    break
            if not found:
                self._side = [p != -2 for p in pred]
                return value
            v = t
            while v != s:
                j = pred[v]
                if tails[j] == v:
                    flow[j] -= 1
                    v = self._heads[j]
                else:
                    flow[j] += 1
                    v = tails[j]
            value += 1
        self._side = None
        return value

    def source_side(self) -> list[bool] | None:
        """Vertices reachable from the source in the final residual graph.

        Only defined when the last :meth:`max_flow` stopped below its cap;
        the set is then a minimum cut.
        """
        return None if self._side is None else list(self._side)

    def min_over_targets(self, root: int, targets: Sequence[int], cap: int = -1):
        """Smallest flow from ``root`` to any target.

        Returns ``(value, target, side)``.  With ``cap >= 0`` the scan stops at
        the first target whose flow is below ``cap``; if none is, the result is
        ``(cap, -1, None)``.
        """
        best, arg, side = -1, -1, None
        for t in targets:
            if t == root:
                continue
            val = self.max_flow(root, t, cap)
            if cap >= 0 and val < cap:
                return val, t, self.source_side()
            if best < 0 or val < best:
                best, arg, side = val, t, self.source_side()
        if cap >= 0:
            return cap, -1, None
        return best, arg, side
