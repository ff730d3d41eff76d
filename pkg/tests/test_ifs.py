import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from oracles import in_middle_third, middle_third_numerators
from zicantor import (
    Coding,
    DomainError,
    GaussInt,
    GaussRat,
    IfsSpec,
    ResourceCapError,
    bounding_radius_sq,
    box_cover_count,
    build_state_graph,
    coding_of,
    compose_depth,
    eval_coding,
    is_member,
    live_graph,
    prune_to_live,
    similarity_dimension,
    to_dot,
)
from zicantor.ifs import composition_constants, walk_coding

CANTOR = IfsSpec.from_literals("3", "0,2")
COMPLEX = IfsSpec.from_literals("-2+i", "0,1")
DRAGON = IfsSpec.from_literals("-1+i", "0,1")
HALF = IfsSpec.from_literals("3", "0,1/2,(1+i)/2")
MATRIX = [CANTOR, COMPLEX, DRAGON, HALF]
DENOMS = [1, 2, 3, 4, 5, 8, 9, 10, GaussInt(1, 1), GaussInt(2, 1), GaussInt(3, 1), GaussInt(1, 3)]


def test_spec_validation():
    with pytest.raises(DomainError):
        IfsSpec.from_literals("1+0i", "0,1")
    with pytest.raises(DomainError):
        IfsSpec.from_literals("i", "0,1")
    with pytest.raises(DomainError):
        IfsSpec.from_literals("3", "0,2,2/1")
    with pytest.raises(DomainError):
        IfsSpec(GaussInt(3), ())
    assert HALF.common_denominator == GaussInt(2)


def test_similarity_dimension_examples():
    assert similarity_dimension(CANTOR) == pytest.approx(math.log(2) / math.log(3))
    assert round(similarity_dimension(CANTOR), 6) == 0.630930
    assert similarity_dimension(DRAGON) == pytest.approx(2.0)
    assert round(similarity_dimension(COMPLEX), 6) == 0.861353


def test_bounding_radius_examples():
    assert bounding_radius_sq(CANTOR) == 1
    r2 = bounding_radius_sq(DRAGON)
    true = 1 / (math.sqrt(2) - 1) ** 2
    assert true < float(r2) < true * 1.0001
    assert bounding_radius_sq(IfsSpec.from_literals("3", "0")) == 0


def test_compose_examples():
    rep = compose_depth(CANTOR, 5)
    assert rep.distinct_maps == 32 and rep.s_n == pytest.approx(rep.s)
    for spec in MATRIX:
        one = compose_depth(spec, 1)
        assert one.distinct_maps == spec.ell and one.s_n == pytest.approx(one.s)
    spec = IfsSpec.from_literals("2", "0,1,2")
    brute = {2 * a + b for a in (0, 1, 2) for b in (0, 1, 2)}
    assert compose_depth(spec, 2).distinct_maps == len(brute) == 7


def test_compose_dedup_and_caps():
    spec = IfsSpec.from_literals("2", "0,1,2")
    ell = {n: compose_depth(spec, n).distinct_maps for n in range(1, 8)}
    for a in range(1, 4):
        for b in range(1, 4):
            assert ell[a + b] <= ell[a] * ell[b]
    for n in range(1, 8):
        rep = compose_depth(spec, n)
        assert rep.distinct_maps <= 3**n and rep.s_n <= rep.s + 1e-12
    with pytest.raises(ResourceCapError):
        compose_depth(CANTOR, 20, cap=1000)
    with pytest.raises(DomainError):
        compose_depth(CANTOR, 0)


def test_box_cover():
    box = box_cover_count(CANTOR, 4)
    assert box.count == 16 and box.radius == pytest.approx(3**-4)
    zero = box_cover_count(CANTOR, 0)
    assert zero.count == 1 and zero.radius_sq == bounding_radius_sq(CANTOR)
    assert box_cover_count(IfsSpec.from_literals("2", "0,1,2"), 3).count < 27


def test_cylinder_cover_covers_members():
    for spec in MATRIX:
        n = 3
        box = box_cover_count(spec, n)
        centers = [GaussRat(GaussInt(*c), spec.common_denominator * spec.beta**n)
                   for c in composition_constants(spec, n)]
        for z in live_graph(spec, 6).points():
            assert any((z - c).abs2() <= box.radius_sq for c in centers)


def test_graph_examples():
    g = prune_to_live(build_state_graph(CANTOR, 1))
    assert g.points() == [GaussRat(0), GaussRat(1)]
    assert g.edges[(0, 0)] == ((0, (0, 0)),)
    assert g.edges[(1, 0)] == ((1, (1, 0)),)
    assert [str(p) for p in live_graph(CANTOR, 4).points()] == ["0", "1/4", "3/4", "1"]
    assert [str(p) for p in live_graph(CANTOR, 2).points()] == ["0", "1"]
    # gamma sharing a factor with beta is fine
    assert GaussRat(1, 4) in live_graph(CANTOR, 12)


def test_graph_invariants():
    for spec in MATRIX:
        r2 = bounding_radius_sq(spec)
        for depth in (0, None):
            g = build_state_graph(spec, 6, depth=depth)
            for w in g.nodes:
                assert g.value(w).abs2() <= r2
                z = g.value(w)
                succ = {j: s for j, s in g.edges[w]}
                for j, t in enumerate(spec.digits):
                    nxt = spec.beta * z - t
                    on = g.numerator(nxt)
                    assert (j in succ) == (on in g.nodes)
                    if j in succ:
                        assert g.value(succ[j]) == nxt


def test_live_set_independent_of_cover():
    for spec in MATRIX:
        for gamma in (1, 4, 5, 6, GaussInt(2, 1), 9):
            sets = {frozenset(prune_to_live(build_state_graph(spec, gamma, depth=d)).points())
                    for d in (0, 1, 2, 3, None)}
            assert len(sets) == 1


def test_prune_empty():
    g = build_state_graph(CANTOR, 4)
    empty = type(g)(CANTOR, g.denominator, frozenset(), {})
    assert len(prune_to_live(empty)) == 0


def test_membership_examples():
    assert is_member(CANTOR, "1/4")
    assert not is_member(CANTOR, "1/2")
    assert is_member(CANTOR, 0)
    assert not is_member(CANTOR, "5/4")
    assert not is_member(CANTOR, GaussRat(1, 4) + GaussRat(GaussInt(0, 1), 9))
    assert is_member(COMPLEX, 0)


def test_coding_examples():
    c = coding_of(CANTOR, "1/4")
    assert c == Coding((), (0, 1))
    assert coding_of(CANTOR, "3/4") == Coding((), (1, 0))
    for spec in MATRIX:
        for j, t in enumerate(spec.digits):
            fixed = GaussRat.coerce(t) / (GaussRat.coerce(spec.beta) - 1)
            assert eval_coding(spec, coding_of(spec, fixed)) == fixed
    # a point can have several codings; in the middle-third set the fixed points have one
    assert coding_of(CANTOR, 1) == Coding((), (1,))
    assert coding_of(CANTOR, 0) == Coding((), (0,))
    with pytest.raises(DomainError):
        coding_of(CANTOR, "1/2")


def test_eval_examples():
    beta = GaussRat.coerce(COMPLEX.beta)
    for j, t in enumerate(COMPLEX.digits):
        assert eval_coding(COMPLEX, Coding((), (j,))) == t / (beta - 1)
        for k, u in enumerate(COMPLEX.digits):
            assert eval_coding(COMPLEX, Coding((j,), (k,))) == t / beta + u / (beta * (beta - 1))
    assert eval_coding(CANTOR, Coding((), (0, 1))) == GaussRat(1, 4)


def test_roundtrip_and_orbit_closure():
    for spec in MATRIX:
        for gamma in DENOMS:
            g = live_graph(spec, gamma)
            for w in g.nodes:
                z = g.value(w)
                c = walk_coding(g, w)
                assert eval_coding(spec, c) == z
                assert len(c.preperiod) + len(c.period) <= len(g)
                j, s = g.edges[w][0]
                assert g.value(s) == spec.beta * z - spec.digits[j]
                assert s in g.nodes


def test_codings_evaluate_to_members():
    for spec in (CANTOR, COMPLEX, HALF):
        idx = range(spec.ell)
        for n in range(1, 5):
            for per in product(idx, repeat=n):
                for pre in [()] + [(j,) for j in idx]:
                    z = eval_coding(spec, Coding(pre, per))
                    assert is_member(spec, z)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=4), st.lists(st.integers(0, 1), min_size=1, max_size=6))
def test_minimized_keeps_value(pre, per):
    c = Coding(tuple(pre), tuple(per))
    m = c.minimized()
    assert eval_coding(COMPLEX, m) == eval_coding(COMPLEX, c)
    assert len(m.preperiod) <= len(c.preperiod) and len(m.period) <= len(c.period)
    p = m.period
    assert all(p != p[:k] * (len(p) // k) for k in range(1, len(p)) if len(p) % k == 0)
    assert not m.preperiod or m.preperiod[-1] != m.period[-1]


@pytest.mark.parametrize("q", [2**k for k in range(1, 9)] + [3**k for k in range(1, 9)] + [10**k for k in range(1, 6)])
def test_real_line_oracle(q):
    live = set(live_graph(CANTOR, q).points())
    assert live == {GaussRat(p, q) for p in middle_third_numerators(q)}


@settings(max_examples=40, deadline=None)
@given(st.integers(6, 8), st.integers(0, 10**8))
def test_real_line_oracle_sampled(k, p):
    q = 10**k
    p %= q + 1
    assert is_member(CANTOR, GaussRat(p, q)) == in_middle_third(Fraction(p, q))


def test_singleton():
    spec = IfsSpec.from_literals("2+i", "1")
    point = GaussRat(1) / GaussRat(GaussInt(1, 1))
    assert live_graph(spec, GaussInt(1, 1)).points() == [point]
    assert compose_depth(spec, 3).distinct_maps == 1 and similarity_dimension(spec) == 0
    assert coding_of(spec, point) == Coding((), (0,))


def test_node_cap(monkeypatch):
    with pytest.raises(ResourceCapError) as info:
        build_state_graph(DRAGON, 1000, cap=5000)
    assert "5000" in str(info.value)
    monkeypatch.setenv("ZICANTOR_NODE_CAP", "100")
    with pytest.raises(ResourceCapError):
        build_state_graph(DRAGON, 100, depth=0)


def test_dot_export():
    dot = to_dot(live_graph(CANTOR, 4))
    assert dot.startswith('digraph "K" {')
    assert '[label="1/4"]' in dot and dot.count("->") == 4
    assert dot == to_dot(live_graph(CANTOR, 4))
