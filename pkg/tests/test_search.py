from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from oracles import middle_third_numerators, raw_height
from zicantor import (
    Coding,
    DomainError,
    GaussInt,
    GaussRat,
    IfsSpec,
    ResourceCapError,
    SmoothFamily,
    count_lattice,
    counting_fit,
    enumerate_denominators,
    eval_coding,
    finiteness_search,
    is_member,
    members_with_denominator,
    period_height_report,
)
from zicantor.gaussian import canonical, gcd
from zicantor.order import crt_order
from zicantor.search import maximal_exponents, reduced_denominator, search_csv, found_row

CANTOR = IfsSpec.from_literals("3", "0,2")
COMPLEX = IfsSpec.from_literals("-2+i", "0,1")
DRAGON = IfsSpec.from_literals("-1+i", "0,1")
HALF = IfsSpec.from_literals("3", "0,1/2,(1+i)/2")
DYADIC = SmoothFamily.parse("1+i")
DECIMAL = SmoothFamily.parse("1+i,2+i,2-i")

WALL_DECIMAL = sorted(
    ["1/4", "3/4", "1/10", "3/10", "7/10", "9/10", "1/40", "3/40", "9/40", "13/40", "27/40", "31/40", "37/40", "39/40"]
)


def test_family_layout():
    assert DECIMAL.gamma2 == GaussInt(1, 1)
    assert DECIMAL.pairs == ((GaussInt(1, 2), GaussInt(2, 1)),)
    assert DECIMAL.singles == ()
    fam = SmoothFamily.parse("3,2+i,1+i,7,1+2i,5+2i")
    assert fam.singles == (GaussInt(3), GaussInt(5, 2), GaussInt(7))
    assert fam.width == 6
    assert fam.product((1, 1, 0, 2, 0, 1)) == GaussInt(1, 1) * GaussInt(1, 2) * 9 * 7
    assert fam.exponents_of(GaussInt(1, 1) * GaussInt(1, 2) * 9 * 7) == (1, 1, 0, 2, 0, 1)
    assert fam.exponents_of(GaussInt(11)) is None
    assert SmoothFamily.parse("3").exponents_of(GaussInt(27)) == (0, 3)


def test_family_validation():
    with pytest.raises(DomainError):
        SmoothFamily.parse("2+i,-1+2i")  # associates
    with pytest.raises(DomainError):
        SmoothFamily.parse("6")
    with pytest.raises(DomainError):
        SmoothFamily(singles=(GaussInt(2, 1), GaussInt(1, 2)))
    with pytest.raises(DomainError):
        SmoothFamily(pairs=((GaussInt(2, 1), GaussInt(3, 2)),))
    with pytest.raises(DomainError):
        SmoothFamily.parse("3").check_against(CANTOR)
    with pytest.raises(DomainError):
        finiteness_search(CANTOR, SmoothFamily.parse("3,1+i"), 100)


def test_enumerate_examples():
    hs = [e for _, e in enumerate_denominators(DYADIC, 8)]
    assert hs == [(h,) for h in range(7)]
    pair = SmoothFamily.parse("2+i,2-i")
    got = sorted(e[1:] for _, e in enumerate_denominators(pair, 25))
    assert got == sorted((r, s) for r in range(3) for s in range(3))
    assert enumerate_denominators(DECIMAL, 1) == [(GaussInt(1), (0, 0, 0))]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3000), st.sampled_from(["1+i,2+i,2-i", "3,1+i", "2+i,7", "1+i,3+2i,2+3i,3"]))
def test_enumerate_matches_brute_force(cap, text):
    fam = SmoothFamily.parse(text)
    got = enumerate_denominators(fam, cap)
    primes = fam.primes()
    bounds = []
    for p in primes:
        e = 0
        while raw_height((p ** (e + 1)).as_tuple()) <= cap:
            e += 1
        bounds.append(range(e + 1))
    brute = set()
    for exps in product(*bounds):
        z = GaussInt(1)
        for p, e in zip(primes, exps):
            z = z * p**e
        if raw_height(z.as_tuple()) <= cap:
            brute.add(canonical(z))
    assert {canonical(z) for z, _ in got} == brute
    assert len(got) == len(brute)
    keys = [(fam.height_of(e), e) for _, e in got]
    assert keys == sorted(keys)
    assert all(fam.height_of(e) == raw_height(z.as_tuple()) for z, e in got)


def test_maximal_vectors_equal_full_union():
    for spec, fam, cap in [(CANTOR, DECIMAL, 400), (COMPLEX, SmoothFamily.parse("3,1+i"), 200),
                           (HALF, SmoothFamily.parse("1+i,2+i"), 300)]:
        full = set()
        for z, _ in enumerate_denominators(fam, cap):
            full.update(f.value for f in members_with_denominator(spec, z))
        assert set(finiteness_search(spec, fam, cap).values()) == full
        assert all(e in [x for _, x in enumerate_denominators(fam, cap)] for e in maximal_exponents(fam, cap))


def test_members_examples():
    assert [str(f.value) for f in members_with_denominator(CANTOR, 4)] == ["0", "1", "1/4", "3/4"]
    # gamma = 1 still sees the lattice (1/Gamma) Z[i] of the digit denominators
    ones = {f.value for f in members_with_denominator(HALF, 1)}
    lattice = {GaussRat(GaussInt(a, b), 2) for a in range(-4, 5) for b in range(-4, 5)}
    assert ones == {z for z in lattice if is_member(HALF, z)}
    assert GaussRat(1, 4) not in ones
    # the fixed point 1/4 of the digit 1/2 needs gamma = 2
    assert GaussRat(1, 4) in {f.value for f in members_with_denominator(HALF, 2)}
    single = IfsSpec.from_literals("3", "0")
    for g in (1, 7, GaussInt(2, 1)):
        assert [f.value for f in members_with_denominator(single, g)] == [GaussRat(0)]


def test_members_are_exhaustive_for_sampled_codings():
    for spec in (CANTOR, COMPLEX, HALF):
        for n in range(1, 7 if spec.ell == 2 else 5):
            for per in product(range(spec.ell), repeat=n):
                for pre in ((), (0,), (spec.ell - 1, 0)):
                    z = eval_coding(spec, Coding(pre, per))
                    values = {f.value for f in members_with_denominator(spec, z.den)}
                    assert z in values


def test_wall_dyadic():
    rep = finiteness_search(CANTOR, DYADIC, 2**10)
    assert [str(v) for v in rep.values(include_integral=False)] == ["1/4", "3/4"]
    assert rep.stabilized and rep.gate_passed
    assert [f.integral for f in rep.found].count(True) == 2


def test_wall_decimal():
    rep = finiteness_search(CANTOR, DECIMAL, 10**5)
    assert sorted(str(v) for v in rep.values(include_integral=False)) == WALL_DECIMAL
    assert len(rep.found) == 16 and rep.stabilized


def test_complex_base_golden():
    rep = finiteness_search(COMPLEX, SmoothFamily.parse("3"), 3**7)
    assert rep.values() == [GaussRat(0)] and rep.stabilized


def test_complex_base_against_coding_enumeration():
    # every coding with period <= 12 and preperiod <= 1 whose value has a 3-smooth denominator
    three = SmoothFamily.parse("3")
    hits = set()
    for n in range(1, 13):
        for per in product(range(2), repeat=n):
            for pre in ((), (0,), (1,)):
                z = eval_coding(COMPLEX, Coding(pre, per))
                ups = reduced_denominator(COMPLEX, z)
                if three.exponents_of(ups) is not None and raw_height(ups.as_tuple()) <= 3**7:
                    hits.add(z)
    assert hits == {GaussRat(0)}


def test_stabilization_soundness_small_caps():
    for spec, fam, cap in [(CANTOR, DYADIC, 64), (CANTOR, DECIMAL, 1000), (COMPLEX, SmoothFamily.parse("3"), 81)]:
        rep = finiteness_search(spec, fam, cap)
        assert rep.stabilized
        assert set(finiteness_search(spec, fam, 4 * cap).values()) == set(rep.values())


def test_search_invariants():
    rep = finiteness_search(CANTOR, DECIMAL, 10**4)
    values = [f.value for f in rep.found]
    assert len(values) == len(set(values))
    for f in rep.found:
        assert is_member(CANTOR, f.value)
        assert eval_coding(CANTOR, f.coding) == f.value
        assert f.period_length == len(f.coding.period)
        assert f.height == raw_height(f.upsilon.as_tuple())
        assert canonical(DECIMAL.product(f.exponents)) == f.upsilon
    caps = [c for c, _ in rep.growth]
    assert caps[0] == 10**4 and caps[-1] == 1
    assert [n for _, n in rep.growth] == sorted((n for _, n in rep.growth), reverse=True)


def test_divisibility_law():
    for spec, fam, cap in [(CANTOR, DECIMAL, 10**5), (HALF, SmoothFamily.parse("1+i,2+i,2-i"), 2000)]:
        for f in finiteness_search(spec, fam, cap).found:
            ups = f.upsilon
            assert ups == reduced_denominator(spec, f.value)
            if gcd(ups, spec.beta) == GaussInt(1) and ups.norm() > 1:
                assert f.period_length % crt_order(spec.beta, ups) == 0


def test_gate_warning():
    with pytest.warns(UserWarning):
        rep = finiteness_search(DRAGON, SmoothFamily.parse("3"), 9)
    assert not rep.gate_passed
    assert all(is_member(DRAGON, v) for v in rep.values())


def test_resource_error_names_denominator():
    with pytest.raises(ResourceCapError) as info:
        members_with_denominator(DRAGON, 400, cap=1000)
    assert "400" in str(info.value)


def test_count_lattice():
    c = count_lattice(CANTOR, 4)
    assert c.q == c.r == 4
    assert count_lattice(CANTOR, 1).q == 2
    for k in range(1, 7):
        q = 3**k
        assert count_lattice(CANTOR, q).q == len(middle_third_numerators(q))
    # cumulative count is the union over q <= N
    union = {GaussRat(p, q) for q in range(1, 31) for p in middle_third_numerators(q)}
    assert count_lattice(CANTOR, 30).q_star == len(union)


def test_counting_fit():
    fit = counting_fit(CANTOR, range(2, 3**4 + 1))
    assert 0 < fit.c_r < 10 and 0 < fit.c_r_star < 10
    assert fit.rows[0].n == 2 and fit.rows[-1].n == 81
    assert all(r.r_star >= r.r for r in fit.rows)
    dragon = counting_fit(DRAGON, [1, 2, 3, 4])
    assert dragon.s == pytest.approx(2.0) and dragon.c_r > 0
    with pytest.raises(DomainError):
        counting_fit(CANTOR, [])


def test_period_height_report():
    rows = period_height_report(CANTOR, DYADIC, 2**6)
    quarter = next(r for r in rows if r.found.value == GaussRat(1, 4))
    assert quarter.found.period_length == 2 and quarter.order == 2 and quarter.divides_period
    unit_rows = [r for r in rows if r.found.height == 1]
    assert all(r.found.period_length == 1 and r.order == 1 for r in unit_rows)
    for r in period_height_report(CANTOR, DECIMAL, 10**4):
        assert r.divides_period
        assert r.lower_bound <= r.order


def test_csv_columns():
    rep = finiteness_search(CANTOR, DYADIC, 64)
    text = search_csv([found_row(f) for f in rep.found])
    lines = text.splitlines()
    assert lines[0] == "value,height,exponents,period,lower_bound,integral"
    assert lines[3] == "1/4,4,4,2,,false"
