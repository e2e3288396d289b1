import random
from collections import Counter

import pytest

from p5decomp.canonical import (
    DecompElement,
    EliminationTrace,
    Kind,
    basic_decomposition,
    canonical_decomposition,
    classify,
    eliminate_basic_cycles,
    p2_decomposition,
)
from p5decomp.errors import ClaimViolated, UnbalancedVertex
from p5decomp.factorization import fractional_factorization
from p5decomp.generators import complete_bipartite, random_regular_bipartite
from p5decomp.graph import Multigraph, Orientation, Trail
from p5decomp.verify import verify_canonical

from fixtures import sequence_fixture


@pytest.fixture(scope="module")
def ff_k610():
    return fractional_factorization(complete_bipartite(6, 10))


def test_classify():
    assert classify(Trail((0, 1, 2, 3, 4), (0, 1, 2, 3))) is Kind.BASIC_PATH
    assert classify(Trail((0, 1, 2, 3, 0), (0, 1, 2, 3))) is Kind.BASIC_CYCLE
    assert classify(Trail((0, 1, 2, 3, 4, 5), (0, 1, 2, 3, 4))) is Kind.P5
    assert classify(Trail((0, 1, 2, 3, 4, 1), (0, 1, 2, 3, 4))) is Kind.T5
    assert classify(Trail((1, 2, 3, 4, 1, 0), (4, 3, 2, 1, 0))) is Kind.T5
    # a 5-cycle is not bipartite-compatible and is no element kind
    assert classify(Trail((0, 1, 2, 3, 4, 0), (0, 1, 2, 3, 4))) is None
    with pytest.raises(ClaimViolated):
        DecompElement.of((0, 1, 2), (0, 1))


def test_p2_decomposition_k610(ff_k610):
    paths = p2_decomposition(ff_k610.graph, ff_k610.F, ff_k610.orient, 0)
    assert len(paths) == 12
    assert sorted(e for _, es in paths for e in es) == sorted(ff_k610.F)
    for (x, y, z), (e1, e2) in paths:
        assert x != z
        assert ff_k610.orient.arcs[e1] == (x, y) and ff_k610.orient.arcs[e2] == (y, z)


def test_p2_unbalanced():
    g = Multigraph(3, [(0, 1), (1, 2)], sides=[0, 1, 0])
    o = Orientation({0: (0, 1), 1: (2, 1)})
    with pytest.raises(UnbalancedVertex):
        p2_decomposition(g, [0, 1], o, 0)


def test_basic_decomposition_k610(ff_k610):
    d = basic_decomposition(ff_k610)
    assert len(d) == 12
    assert d.is_partition()
    assert d.count(Kind.BASIC_PATH) + d.count(Kind.BASIC_CYCLE) == 12


def test_canonical_k610(ff_k610):
    trace = EliminationTrace()
    d = canonical_decomposition(ff_k610, trace)
    assert len(d) == 12 and d.is_partition()
    assert d.count(Kind.P5) + d.count(Kind.T5) == 12
    assert verify_canonical(list(d), ff_k610).overall
    assert trace.rho[-1] == 0
    assert all(a > b for a, b in zip(trace.rho, trace.rho[1:]))


@pytest.mark.parametrize("k_star", [1, 2, 3])
def test_sequence_rewiring(k_star):
    b, d, expected = sequence_fixture(k_star)
    trace = EliminationTrace()
    out = eliminate_basic_cycles(d, trace)
    assert [b.walk(el) for el in out] == expected
    assert trace.rho == [1, 0] and trace.sequence_lengths == [k_star + 1]
    assert out.edge_counter() == d.edge_counter()
    assert all(el.kind is Kind.BASIC_PATH for el in out)


@pytest.mark.parametrize("seed", range(4))
def test_canonical_random_regular(seed):
    g = random_regular_bipartite(20, 10, seed=seed)
    ff = fractional_factorization(g, seed=seed)
    trace = EliminationTrace()
    d = canonical_decomposition(ff, trace)
    assert verify_canonical(list(d), ff).overall
    assert 5 * len(d) == g.m
    assert trace.rho[-1] == 0
    classes = Counter(tuple(ff.edge_class(e) for e in el.edges) for el in d)
    assert set(classes) == {("M", "F", "F", "H", "H")}
