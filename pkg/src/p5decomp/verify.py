"""Independent certification of decompositions and factorizations.

Everything here is recomputed from raw edge endpoints and vertex sequences;
nothing is imported from the constructing modules.  Every failed check
carries a concrete witness.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: str = ""


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, failures: Sequence[Any], describe=str) -> None:
        """Record a check that passes iff ``failures`` is empty; the first few become the witness."""
        if failures:
            shown = ", ".join(describe(f) for f in failures[:5])
            more = f" (+{len(failures) - 5} more)" if len(failures) > 5 else ""
            self.checks.append(Check(name, False, shown + more))
        else:
            self.checks.append(Check(name, True))

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            line = f"{'PASS' if c.ok else 'FAIL'} {c.name}"
            if c.witness:
                line += f": {c.witness}"
            lines.append(line)
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_kv(self) -> str:
        lines = []
        for c in self.checks:
            w = c.witness.replace("\n", " ")
            lines.append(f"check={c.name} status={'pass' if c.ok else 'fail'} witness={w}")
        lines.append(f"overall={'pass' if self.overall else 'fail'}")
        return "\n".join(lines) + "\n"


def _pairs(g) -> dict[int, tuple[int, int]]:
    return dict(g.edges)


def _vertices(el) -> tuple[int, ...]:
    return tuple(el.vertices)


def _edges(el) -> tuple[int, ...]:
    return tuple(el.edges)


def _declared(el) -> str | None:
    kind = getattr(el, "kind", None)
    if kind is None:
        return None
    return getattr(kind, "value", kind)


def recompute_kind(vertices: Sequence[int]) -> str | None:
    """'basic-path', 'basic-cycle', 'P5', 'T5' or None, from the vertex walk alone."""
    vs = list(vertices)
    distinct = len(set(vs))
    if len(vs) == 5:
        if distinct == 5:
            return "basic-path"
        if distinct == 4 and vs[0] == vs[4]:
            return "basic-cycle"
    if len(vs) == 6:
        if distinct == 6:
            return "P5"
        if distinct == 5 and (vs[1] == vs[5] or vs[0] == vs[4]):
            return "T5"
    return None


def _trail_problem(el, ends: Mapping[int, tuple[int, int]]) -> str | None:
    vs, es = _vertices(el), _edges(el)
    if len(vs) != len(es) + 1:
        return "vertex/edge count mismatch"
    if len(set(es)) != len(es):
        return "repeated edge"
    for i, e in enumerate(es):
        if e not in ends:
            return f"unknown edge {e}"
        if sorted(ends[e]) != sorted((vs[i], vs[i + 1])):
            return f"edge {e} does not join {vs[i]} and {vs[i + 1]}"
    return None


def verify_decomposition(g, elements: Iterable, expect_kind: str | None = None) -> VerificationReport:
    """Exact edge partition, trail validity and declared vs. recomputed kind."""
    els = list(elements)
    ends = _pairs(g)
    rep = VerificationReport()
    count = Counter(e for el in els for e in _edges(el))
    rep.add("partition.duplicates", sorted(e for e, c in count.items() if c > 1),
            lambda e: f"edge {e}")
    rep.add("partition.missing", sorted(e for e in ends if e not in count), lambda e: f"edge {e}")
    rep.add("partition.unknown", sorted(e for e in count if e not in ends), lambda e: f"edge {e}")
    bad_trails = []
    bad_kinds = []
    for i, el in enumerate(els):
        problem = _trail_problem(el, ends)
        if problem:
            bad_trails.append((i, problem))
        actual = recompute_kind(_vertices(el))
        declared = _declared(el)
        if actual is None or (declared is not None and declared != actual):
            bad_kinds.append((i, declared, actual))
        elif expect_kind is not None and actual != expect_kind:
            bad_kinds.append((i, expect_kind, actual))
    rep.add("trails", bad_trails, lambda t: f"element {t[0]}: {t[1]}")
    rep.add("kinds", bad_kinds, lambda t: f"element {t[0]} declared {t[1]}, recomputed {t[2]}")
    return rep


def _directed_counts(edge_ids, arcs, n):
    out, inn = [0] * n, [0] * n
    for e in edge_ids:
        t, h = arcs[e]
        out[t] += 1
        inn[h] += 1
    return out, inn


def verify_fractional_factorization(ff) -> VerificationReport:
    """Partition, orientation, M from B to A, A-balance at d(v)/5 and B-balance."""
    g = ff.graph
    ends = _pairs(g)
    n = g.n
    sides = list(g.sides)
    in_a = [sides[v] == ff.a_side for v in range(n)]
    arcs = dict(ff.orient.arcs)
    rep = VerificationReport()
    M, F, H = set(ff.M), set(ff.F), set(ff.H)
    overlap = sorted((M & F) | (M & H) | (F & H))
    rep.add("mfh.disjoint", overlap, lambda e: f"edge {e}")
    rep.add("mfh.cover", sorted(set(ends) - (M | F | H)), lambda e: f"edge {e}")
    rep.add("mfh.unknown", sorted((M | F | H) - set(ends)), lambda e: f"edge {e}")
    bad_arcs = sorted(e for e in ends if e not in arcs or sorted(arcs[e]) != sorted(ends[e]))
    rep.add("orientation", bad_arcs, lambda e: f"edge {e}")
    if bad_arcs:
        return rep
    rep.add("condition-i.m-into-a", sorted(e for e in M if e in arcs and
                                           (in_a[arcs[e][0]] or not in_a[arcs[e][1]])),
            lambda e: f"edge {e} oriented {arcs[e][0]}->{arcs[e][1]}")
    deg = [0] * n
    for u, v in ends.values():
        deg[u] += 1
        deg[v] += 1
    mo, mi = _directed_counts(M & arcs.keys(), arcs, n)
    fo, fi = _directed_counts(F & arcs.keys(), arcs, n)
    ho, hi = _directed_counts(H & arcs.keys(), arcs, n)
    bad_a = []
    for v in range(n):
        if not in_a[v]:
            continue
        if deg[v] % 5:
            bad_a.append((v, f"degree {deg[v]} not divisible by 5"))
            continue
        q = deg[v] // 5
        got = (fi[v], fo[v], hi[v], ho[v], mi[v])
        if any(x != q for x in got):
            bad_a.append((v, f"F in/out, H in/out, M in = {got}, expected {q}"))
    rep.add("condition-ii.a-balance", bad_a, lambda t: f"vertex {t[0]}: {t[1]}")
    bad_b = [(v, fi[v], fo[v], hi[v], ho[v]) for v in range(n)
             if not in_a[v] and (fi[v] != fo[v] or hi[v] != ho[v])]
    rep.add("condition-iii.b-balance", bad_b,
            lambda t: f"vertex {t[0]}: F {t[1]}/{t[2]}, H {t[3]}/{t[4]}")
    return rep


def verify_m_complete(elements: Iterable, m_arcs: Mapping[int, tuple[int, int]]) -> VerificationReport:
    """Every M edge ``ab`` (tail ``a``) lies in an element with degree 1 at ``a``."""
    els = list(elements)
    where = {}
    for i, el in enumerate(els):
        for e in _edges(el):
            where[e] = i
    bad = []
    for e in sorted(m_arcs):
        tail = m_arcs[e][0]
        if e not in where:
            bad.append((e, "in no element"))
            continue
        vs = _vertices(els[where[e]])
        d = sum((a == tail) + (b == tail) for a, b in zip(vs, vs[1:]))
        if d != 1:
            bad.append((e, f"tail {tail} has degree {d} in element {where[e]}"))
    rep = VerificationReport()
    rep.add("m-complete.inward", bad, lambda t: f"edge {t[0]} {t[1]}")
    return rep


def verify_canonical(elements: Iterable, ff) -> VerificationReport:
    """Each element reads M, F, F, H, H forward along its orientation with start/end in A."""
    els = list(elements)
    g = ff.graph
    sides = list(g.sides)
    arcs = ff.orient.arcs
    M, F, H = set(ff.M), set(ff.F), set(ff.H)
    ends = _pairs(g)

    def cls(e):
        return "M" if e in M else "F" if e in F else "H" if e in H else "?"

    rep = verify_decomposition(g, els)
    bad = []
    for i, el in enumerate(els):
        vs, es = _vertices(el), _edges(el)
        if len(es) != 5 or _trail_problem(el, ends):
            bad.append((i, "not a 5-edge trail of the graph"))
            continue
        pattern = "".join(cls(e) for e in es)
        if pattern != "MFFHH":
            bad.append((i, f"classes {pattern}"))
            continue
        if any(tuple(arcs[e]) != (vs[j], vs[j + 1]) for j, e in enumerate(es)):
            bad.append((i, "edges not directed along the element"))
            continue
        if sides[vs[1]] != ff.a_side or sides[vs[3]] != ff.a_side:
            bad.append((i, f"start/end {vs[1]}, {vs[3]} not in A"))
    rep.add("canonical.pattern", bad, lambda t: f"element {t[0]}: {t[1]}")
    m_arcs = {e: tuple(arcs[e]) for e in M}
    return rep.extend(verify_m_complete(els, m_arcs))


def verify_two_split(g, part1: Iterable[int], part2: Iterable[int], k: int, r: int,
                     connectivity=None) -> VerificationReport:
    """Edge partition, degree divisibility per side and (optionally) r-edge-connectivity.

    ``connectivity(edge_ids) -> int`` is injected so that this module stays
    free of flow code; pass None to skip the connectivity checks.
    """
    p1, p2 = set(part1), set(part2)
    ends = _pairs(g)
    rep = VerificationReport()
    rep.add("split.disjoint", sorted(p1 & p2), lambda e: f"edge {e}")
    rep.add("split.cover", sorted(set(ends) - p1 - p2), lambda e: f"edge {e}")
    for idx, (part, side) in enumerate(((p1, 0), (p2, 1)), start=1):
        deg = Counter()
        for e in part:
            u, v = ends[e]
            deg[u] += 1
            deg[v] += 1
        bad = [(v, deg[v]) for v in range(g.n) if g.sides[v] == side and deg[v] % k]
        rep.add(f"split.part{idx}.divisible", bad, lambda t: f"vertex {t[0]} degree {t[1]}")
        if connectivity is not None:
            lam = connectivity(sorted(part))
            rep.add(f"split.part{idx}.connectivity", [lam] if lam < r else [],
                    lambda x: f"edge connectivity {x} < {r}")
    return rep
