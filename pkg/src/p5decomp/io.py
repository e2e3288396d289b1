"""Text formats.

Graph file::

    pb <nA> <nB> <m>
    e <u> <v>        # m lines, 0 <= u < nA <= v < nA + nB

Edge ids are the 0-based order of the ``e`` lines.  Decomposition file,
one line per element::

    t <v0> <v1> <v2> <v3> <v4> <v5> : <e0> <e1> <e2> <e3> <e4>

``#`` starts a comment in both formats; blank lines are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, TextIO

from .errors import ParseError
from .graph import A_SIDE, B_SIDE, Multigraph


@dataclass(frozen=True)
class FileElement:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    kind: str = "P5"


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _ints(tokens, no: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"line {no}: expected integers, got {' '.join(tokens)!r}") from exc


def parse_graph(text: str) -> Multigraph:
    rows = _lines(text)
    try:
        no, head = next(rows)
    except StopIteration as exc:
        raise ParseError("empty graph file") from exc
    if head[0] != "pb" or len(head) != 4:
        raise ParseError(f"line {no}: header must be 'pb <nA> <nB> <m>'")
    n_a, n_b, m = _ints(head[1:], no)
    if min(n_a, n_b, m) < 0:
        raise ParseError(f"line {no}: negative size in header")
    edges = []
    for no, tok in rows:
        if tok[0] != "e" or len(tok) != 3:
            raise ParseError(f"line {no}: edge lines are 'e <u> <v>'")
        u, v = _ints(tok[1:], no)
        if not (0 <= u < n_a <= v < n_a + n_b):
            raise ParseError(f"line {no}: edge {u} {v} out of range for nA={n_a}, nB={n_b}")
        edges.append((u, v))
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    return Multigraph(n_a + n_b, edges, [A_SIDE] * n_a + [B_SIDE] * n_b)


def format_graph(g: Multigraph) -> str:
    """Serialize a bipartite graph whose class A is a prefix ``0..nA-1``.

    Edges are written in increasing id order, each as ``e <A end> <B end>``.
    """
    if g.sides is None:
        raise ParseError("only bipartite graphs can be written")
    n_a = sum(1 for s in g.sides if s == A_SIDE)
    if any(s != A_SIDE for s in g.sides[:n_a]):
        raise ParseError("class A must occupy the first vertex ids")
    out = [f"pb {n_a} {g.n - n_a} {g.m}"]
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        if g.side(u) != A_SIDE:
            u, v = v, u
        out.append(f"e {u} {v}")
    return "\n".join(out) + "\n"


def parse_decomposition(text: str) -> list[FileElement]:
    out = []
    for no, tok in _lines(text):
        if tok[0] != "t" or ":" not in tok:
            raise ParseError(f"line {no}: element lines are 't <vertices> : <edges>'")
        cut = tok.index(":")
        vs, es = _ints(tok[1:cut], no), _ints(tok[cut + 1:], no)
        if len(vs) != 6 or len(es) != 5:
            raise ParseError(f"line {no}: expected 6 vertices and 5 edges")
        out.append(FileElement(tuple(vs), tuple(es)))
    return out


def format_decomposition(elements: Iterable) -> str:
    lines = []
    for el in elements:
        vs, es = tuple(el.vertices), tuple(el.edges)
        lines.append("t " + " ".join(map(str, vs)) + " : " + " ".join(map(str, es)))
    return "\n".join(lines) + ("\n" if lines else "")


def read_graph(fh: TextIO) -> Multigraph:
    return parse_graph(fh.read())


def read_decomposition(fh: TextIO) -> list[FileElement]:
    return parse_decomposition(fh.read())
