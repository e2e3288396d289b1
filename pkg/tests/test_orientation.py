import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p5decomp.errors import Infeasible, OddDegree, PreconditionViolated
from p5decomp.graph import Multigraph
from p5decomp.orientation import ResidueTarget, eulerian_orientation, mod_k_orientation

from conftest import doubled_c4, random_multigraph
from oracles import brute_force_orientation_feasible, orientation_feasible

K4 = Multigraph(4, list(itertools.combinations(range(4), 2)))


def test_eulerian_orientation_balanced():
    for g in (doubled_c4(), Multigraph(5, [(i, (i + 1) % 5) for i in range(5)]),
              Multigraph(5, list(itertools.combinations(range(5), 2)))):
        o = eulerian_orientation(g)
        assert o.out_degrees(g.n) == o.in_degrees(g.n)
        assert len(o) == g.m


def test_eulerian_rejects_odd():
    with pytest.raises(OddDegree):
        eulerian_orientation(K4)


def test_k4_mod3():
    # exhaustive count: 2 of the 64 orientations of K4 have out-degrees (0, 1, 1, 1) mod 3
    o = mod_k_orientation(K4, ResidueTarget([0, 1, 1, 1], 3))
    assert [d % 3 for d in o.out_degrees(4)] == [0, 1, 1, 1]


def test_five_cycle_all_ones():
    c5 = Multigraph(5, [(i, (i + 1) % 5) for i in range(5)])
    o = mod_k_orientation(c5, ResidueTarget([1] * 5, 5))
    assert o.out_degrees(5) == [1] * 5


def test_precondition_and_infeasible():
    with pytest.raises(PreconditionViolated):
        mod_k_orientation(K4, ResidueTarget([0, 0, 0, 0], 5))
    path = Multigraph(3, [(0, 1), (1, 2)])
    # sum 2 = |E|, but vertex 0 has degree 1 and cannot reach out-degree 2
    with pytest.raises(Infeasible):
        mod_k_orientation(path, ResidueTarget([2, 0, 0], 3))


def test_matches_brute_force_small():
    rng = random.Random(2)
    for _ in range(200):
        n = rng.randint(2, 5)
        g = random_multigraph(rng, n, rng.randint(1, 8))
        k = rng.choice([3, 5])
        p = [rng.randrange(k) for _ in range(n - 1)]
        p.append((g.m - sum(p)) % k)
        feasible = brute_force_orientation_feasible(g, p, k)
        assert feasible == orientation_feasible(g, p, k)
        if feasible:
            o = mod_k_orientation(g, ResidueTarget(p, k))
            assert [d % k for d in o.out_degrees(n)] == [x % k for x in p]
        else:
            with pytest.raises(Infeasible):
                mod_k_orientation(g, ResidueTarget(p, k))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([3, 5]))
def test_feasible_residues_from_a_random_orientation(seed, k):
    # targets read off an actual orientation are feasible by construction
    rng = random.Random(seed)
    n = rng.randint(3, 25)
    g = random_multigraph(rng, n, rng.randint(n, 5 * n))
    out = [0] * n
    for u, v in g.edges.values():
        out[u if rng.random() < 0.5 else v] += 1
    o = mod_k_orientation(g, ResidueTarget(out, k))
    assert [d % k for d in o.out_degrees(n)] == [d % k for d in out]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_reversing_a_directed_cycle_keeps_outdegrees(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 12)
    g = random_multigraph(rng, n, rng.randint(n, 4 * n))
    p = [0] * n
    for u, v in g.edges.values():
        p[rng.choice((u, v))] += 1
    o = mod_k_orientation(g, ResidueTarget(p, 3))
    # find any directed cycle and flip it
    succ = {}
    for e, (t, h) in o.arcs.items():
        succ.setdefault(t, []).append((e, h))
    for start in range(n):
        seen, path, v = {start: 0}, [], start
        while succ.get(v):
            e, w = succ[v][0]
            path.append(e)
            if w in seen:
                cycle = path[seen[w]:]
                flipped = o.reversed(cycle)
                assert flipped.out_degrees(n) == o.out_degrees(n)
                return
            seen[w] = len(path)
            v = w
