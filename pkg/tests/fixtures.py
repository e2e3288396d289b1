"""Hand-built decompositions with known rewiring outcomes."""

from p5decomp.canonical import DecompElement, Decomposition
from p5decomp.graph import Multigraph


class Builder:
    """Named vertices with fixed sides; one edge id per unordered vertex pair."""

    def __init__(self, side0: str, side1: str) -> None:
        names = side0.split() + side1.split()
        self.index = {x: i for i, x in enumerate(names)}
        self.sides = [0] * len(side0.split()) + [1] * len(side1.split())
        self.edges: dict[frozenset, int] = {}

    def edge(self, x: str, y: str) -> int:
        key = frozenset((x, y))
        if key not in self.edges:
            self.edges[key] = len(self.edges)
        return self.edges[key]

    def element(self, walk: str) -> DecompElement:
        vs = walk.split()
        es = [self.edge(a, b) for a, b in zip(vs, vs[1:])]
        return DecompElement.of([self.index[x] for x in vs], es)

    def host(self) -> Multigraph:
        table = {}
        for key, e in self.edges.items():
            x, y = sorted(key)
            table[e] = (self.index[x], self.index[y])
        return Multigraph(len(self.sides), table, self.sides)

    def walk(self, el: DecompElement) -> str:
        names = {i: x for x, i in self.index.items()}
        return " ".join(names[v] for v in el.vertices)


def sequence_fixture(k_star: int):
    """A basic cycle T0 followed by a start/end sequence of length ``k_star``; returns builder, walks, expected."""
    b = Builder("t0 t1 t2 t3 t4", "a0 x0 x1 x2 x3 c1 d2 e2 f3 g3 p q")
    if k_star == 1:
        walks = ["a0 t0 x0 t1 a0", "p t2 x1 t1 q"]
        expected = ["a0 t0 x0 t1 q", "p t2 x1 t1 a0"]
    elif k_star == 2:
        walks = ["a0 t0 x0 t1 a0", "a0 t2 x1 t1 c1", "d2 t2 x2 t3 e2"]
        expected = ["a0 t0 x0 t1 c1", "d2 t2 x1 t1 a0", "a0 t2 x2 t3 e2"]
    else:
        walks = ["a0 t0 x0 t1 a0", "a0 t2 x1 t1 c1", "d2 t2 x2 t3 a0", "f3 t4 x3 t3 g3"]
        expected = ["a0 t0 x0 t1 c1", "d2 t2 x1 t1 a0", "a0 t2 x2 t3 g3", "f3 t4 x3 t3 a0"]
    els = [b.element(w) for w in walks]
    return b, Decomposition(b.host(), els), expected


def case1_fixture():
    """T5 whose M-partner at v2 avoids v1."""
    b = Builder("v1 v3 b0 b2 b4", "v0 v2 v4 b3 b5")
    t = b.element("v0 v1 v2 v3 v4 v1")
    b1 = b.element("b0 v2 b2 b3 b4 b5")
    m_tails = {t.edges[0]: b.index["v0"], b1.edges[0]: b.index["b0"]}
    expected = ["v0 v1 v4 v3 v2 b0", "v1 v2 b2 b3 b4 b5"]
    return b, [t, b1], m_tails, expected


def case2_fixture():
    """T5 with a coupled sequence B1, B2 through v1 and a successor B3."""
    b = Builder("v1 v3 b0 b2 c0 c2 d0 d2 d4", "v0 v2 v4 b3 b5 c3 c5 d3 d5")
    t = b.element("v0 v1 v2 v3 v4 v1")
    b1 = b.element("b0 v2 b2 b3 v1 b5")
    b2 = b.element("c0 b3 c2 c3 v1 c5")
    b3 = b.element("d0 c3 d2 d3 d4 d5")
    tails = {t: "v0", b1: "b0", b2: "c0", b3: "d0"}
    m_tails = {el.edges[0]: b.index[x] for el, x in tails.items()}
    expected = ["v0 v1 v4 v3 v2 b0", "b5 v1 v2 b2 b3 c0", "c5 v1 b3 c2 c3 d0", "v1 c3 d2 d3 d4 d5"]
    return b, [t, b1, b2, b3], m_tails, expected
