import random
from fractions import Fraction
from math import inf

import pytest
from hypothesis import given, strategies as st

from aflt.errors import AllZero, DivisionByZero, EvenRadical, NonPositive, NotInert, NotSplit, NotSquarefree
from aflt.quad_field import (
    BasisKind, Element, Splitting, gcd_ideal, hensel_sqrt, make_field, parse_element,
    primes_above_2, primes_above_odd, principal_ideal, u_set, val2_norm, val_above_2, val_inert_odd,
)

SPLIT = (7, 15, 23, 31)


def random_element(K, rng, bound=60):
    while True:
        z = Element(rng.randint(-bound, bound), rng.randint(-bound, bound), rng.choice((1, 2, 4, 3)), K)
        if not z.is_zero():
            return z


# -- fields ------------------------------------------------------------------

@pytest.mark.parametrize("d, split", [(7, Splitting.SPLIT), (5, Splitting.RAMIFIED),
                                      (3, Splitting.INERT), (2, Splitting.RAMIFIED),
                                      (11, Splitting.INERT), (23, Splitting.SPLIT)])
def test_splitting(d, split):
    assert make_field(d).two_splitting is split


def test_field_invariants():
    for d in range(1, 300):
        try:
            K = make_field(d)
        except NotSquarefree:
            continue
        if -d % 4 == 1:
            assert K.discriminant == -d and K.basis_kind is BasisKind.ONE_AND_HALF
        else:
            assert K.discriminant == -4 * d and K.basis_kind is BasisKind.ONE_AND_SQRT
        assert K.extra_units == (d in (1, 3))


def test_bad_fields():
    with pytest.raises(NotSquarefree):
        make_field(12)
    with pytest.raises(NonPositive):
        make_field(0)


# -- elements ------------------------------------------------------------------

def test_norm_examples():
    K = make_field(7)
    assert K(3, 1, 2).norm() == 4
    assert K(1, 3, 2).norm() == 16
    assert K(1).norm() == 1


def test_conj_trace_inverse():
    K = make_field(7)
    z = K(3, 1, 2)
    assert z.conj() == K(3, -1, 2)
    assert z.trace() == 3
    w = K(1, 1, 2)
    assert w * w.inv() == 1
    with pytest.raises(DivisionByZero):
        K(0).inv()
    with pytest.raises(ZeroDivisionError):
        K(1) / 0


def test_reduced_form():
    K = make_field(5)
    z = Element(4, 6, 8, K)
    assert (z.x, z.y, z.den) == (2, 3, 4)
    assert Element(3, 1, -2, K) == Element(-3, -1, 2, K)


def test_integrality():
    assert make_field(7)(1, 3, 2).is_integral()
    assert not make_field(5)(1, 1, 2).is_integral()
    assert not make_field(7)(1, 2, 2).is_integral()


def test_rational_equality():
    K = make_field(7)
    assert K(3, 0, 2) == Fraction(3, 2)
    assert K(4) == 4
    assert hash(K(4)) == hash(4)


def test_parse_roundtrip():
    K = make_field(7)
    for z in (K(1, 3, 2), K(-5, 0, 1), K(2, -7, 9)):
        assert parse_element(str(z)) == z
    assert parse_element("-3/4", K) == Fraction(-3, 4)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 9),
       st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 9),
       st.sampled_from([2, 5, 7, 15, 21]))
def test_field_axioms(x1, y1, n1, x2, y2, n2, d):
    K = make_field(d)
    z, w = K(x1, y1, n1), K(x2, y2, n2)
    assert (z * w).norm() == z.norm() * w.norm()
    assert z + w == w + z and z * w == w * z
    assert (z + w).conj() == z.conj() + w.conj()
    assert (z * w).conj() == z.conj() * w.conj()
    assert z.trace() == (z + z.conj()).to_fraction()
    if not w.is_zero():
        assert (z / w) * w == z


# -- 2-adic square roots -------------------------------------------------------

def test_hensel_canonical_values(oracle):
    for d, table in oracle["hensel"].items():
        for N, s in table.items():
            assert hensel_sqrt(int(d), int(N)).s == s


def test_hensel_spec_residues_are_valid_roots():
    # small residues quoted for d=7, N=5 and d=15, N=4 are square roots too,
    # but not the lift-consistent ones
    assert (5 * 5 + 7) % 32 == 0 and (1 + 15) % 16 == 0
    assert hensel_sqrt(7, 5).s == 21 and hensel_sqrt(7, 4).s == 5 and hensel_sqrt(15, 4).s == 9


@pytest.mark.parametrize("d", [7, 15, 23, 31, 127, 43861254226381103844215])
def test_hensel_lift_consistency(d):
    roots = {N: hensel_sqrt(d, N) for N in range(3, 130)}
    for N, r in roots.items():
        assert r.check() and r.s % 4 == 1 and (r.s * r.s + d) % 2**N == 0
        for M in range(3, N):
            assert r.s % 2**M == roots[M].s


def test_hensel_not_split():
    with pytest.raises(NotSplit):
        hensel_sqrt(5, 8)


# -- valuations ------------------------------------------------------------------

def test_val_examples():
    K = make_field(7)
    P1, P2 = primes_above_2(K)
    z = K(1, 3, 2)
    assert (val_above_2(z, P1), val_above_2(z, P2)) == (4, 0)
    (P,) = primes_above_2(make_field(5))
    assert val_above_2(make_field(5)(2), P) == 2
    assert val_above_2(K(1), P1) == 0
    assert val_above_2(K(0), P1) == inf


def test_prime_above_2_invariants():
    for d, e, f in ((5, 2, 1), (7, 1, 1), (3, 1, 2)):
        for P in primes_above_2(make_field(d)):
            assert (P.ramification_e, P.residue_degree_f, P.v_of_2) == (e, f, e if e == 2 else 1)
            assert P.in_U == (f == 1)
            assert (P.embedding is not None) == (d == 7)


@pytest.mark.parametrize("d", SPLIT)
def test_split_valuations_sum_to_norm(d):
    K = make_field(d)
    P1, P2 = primes_above_2(K)
    rng = random.Random(d)
    for _ in range(1000):
        z = random_element(K, rng)
        assert val_above_2(z, P1) + val_above_2(z, P2) == val2_norm(z)


@pytest.mark.parametrize("d", [7, 5, 3, 2])
def test_valuations_additive_and_ultrametric(d):
    K = make_field(d)
    rng = random.Random(100 + d)
    for P in primes_above_2(K):
        for _ in range(300):
            z, w = random_element(K, rng), random_element(K, rng)
            vz, vw = val_above_2(z, P), val_above_2(w, P)
            assert val_above_2(z * w, P) == vz + vw
            s = val_above_2(z + w, P)
            assert s >= min(vz, vw)
            if vz != vw:
                assert s == min(vz, vw)


def test_large_valuation_needs_precision_growth():
    K = make_field(7)
    P1, P2 = primes_above_2(K)
    z = K(1, 1, 2) ** 200
    assert (val_above_2(z, P1), val_above_2(z, P2)) in ((200, 0), (0, 200))


def test_val_inert_odd():
    K = make_field(2)
    assert val_inert_odd(K(29), 29) == 1
    assert val_inert_odd(K(1, 1), 29) == 0
    with pytest.raises(NotInert):
        val_inert_odd(make_field(7)(1), 29)


def test_odd_split_prime_valuations():
    K = make_field(5)
    Q1, Q2 = primes_above_odd(K, 29)
    z = K(3, 2)                                  # norm 29
    assert sorted((Q1.valuation(z), Q2.valuation(z))) == [0, 1]
    w = z * z * z.conj() / 7
    assert (Q1.valuation(w), Q2.valuation(w)) in ((2, 1), (1, 2))


# -- ideals ---------------------------------------------------------------------

def test_gcd_ideal_examples():
    K = make_field(7)
    I = gcd_ideal([K(2), K(2)])
    assert I.norm == 4 and I.is_closed()
    assert gcd_ideal([K(1), K(3, 5, 2)]).norm == 1
    K5 = make_field(5)
    P = gcd_ideal([K5(2), K5(1, 1)])
    assert P.norm == 2 and P.is_prime() and P.is_closed()
    with pytest.raises(AllZero):
        gcd_ideal([K(0), K(0)])


@pytest.mark.parametrize("d", [5, 7, 15, 21, 23])
def test_gcd_ideal_properties(d):
    K = make_field(d)
    rng = random.Random(d)
    theta = K.theta
    for _ in range(150):
        gens = [rng.randint(-30, 30) + rng.randint(-30, 30) * theta for _ in range(3)]
        if all(g.is_zero() for g in gens):
            continue
        I = gcd_ideal(gens)
        assert I.is_closed()
        assert I == gcd_ideal(gens[::-1]) == gcd_ideal([gens[1], gens[2], gens[0]])
        J = gcd_ideal(gens[:2])
        assert I == gcd_ideal([K(J.a), J.b + J.c * theta, gens[2]])
        for g in gens:
            assert I.contains(g)
            if not g.is_zero():
                assert g.norm().numerator % I.norm == 0
        for g in gens:
            if not g.is_zero():
                assert principal_ideal(g).norm == g.norm()


def test_u_set_examples():
    s = u_set(make_field(7), 1)
    assert [str(P) for P in s.U] == ["P1", "P2"] and s.S == s.T == s.U
    assert u_set(make_field(3), 1).U == ()
    s = u_set(make_field(5), 3)                  # (-5|3) = 1, so 3 splits
    assert len(s.S) == 3
    s = u_set(make_field(2), 29)                 # (-2|29) = -1, so 29 is inert
    assert len(s.S) == 2 and s.T == s.U and len(s.U) == 1
    with pytest.raises(EvenRadical):
        u_set(make_field(7), 6)
