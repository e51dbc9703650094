from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from aflt import arith
from aflt.errors import DegenerateLambda, ExtraUnits, NotASolution, NotRamified, NotSplit
from aflt.quad_field import Element, legendre, make_field
from aflt.sunit import (
    IRRELEVANT, Conclusion, brute_force, certificate_norel, certificate_ramified, is_irrelevant,
    is_s_unit, make_solution, obstruction_chain, orbit_key, param_split2, param_with_q,
    rational_solutions, replay,
    s3_images, s3_orbit,
)

D0 = 43861254226381103844215


def split_ds(limit):
    return [d for d in range(7, limit + 1, 8) if arith.is_squarefree(d)]


# -- orbits ------------------------------------------------------------------

def test_irrelevant_orbit():
    assert s3_orbit(2) == {2, Fraction(1, 2), -1} == IRRELEVANT
    assert s3_orbit(-1) == s3_orbit(Fraction(1, 2)) == IRRELEVANT


def test_generic_orbit_has_six_members():
    K = make_field(7)
    assert len(s3_orbit(K(3, 1, 2))) == 6


def test_degenerate_lambda():
    with pytest.raises(DegenerateLambda):
        s3_orbit(1)
    with pytest.raises(DegenerateLambda):
        s3_orbit(0)


@given(st.integers(-40, 40), st.integers(-40, 40), st.integers(1, 12), st.sampled_from([2, 5, 7, 15, 23]))
def test_orbit_closure(x, y, den, d):
    lam = make_field(d)(x, y, den)
    if lam == 0 or lam == 1:
        return
    orbit = s3_orbit(lam)
    for z in orbit:
        assert s3_orbit(z) == orbit
        assert orbit_key(z) == orbit_key(lam)


def test_is_irrelevant():
    K = make_field(7)
    assert is_irrelevant(-1, 2)
    assert is_irrelevant(Fraction(1, 2), Fraction(1, 2))
    assert not is_irrelevant(K(3, 1, 2), K(-1, -1, 2))
    with pytest.raises(NotASolution):
        is_irrelevant(1, -2)


# -- brute force -----------------------------------------------------------------

def test_brute_force_d7():
    K = make_field(7)
    sols = brute_force(K, (), 10, 1, 0)
    keys = sols.orbit_ids()
    assert orbit_key(2) in keys
    assert orbit_key(K(3, 1, 2)) in keys
    for s in sols:
        assert s.lam + s.mu == 1
        assert is_s_unit(s.lam, [2]) and is_s_unit(s.mu, [2])


def test_brute_force_rejects_extra_units():
    with pytest.raises(ExtraUnits):
        brute_force(make_field(3), (), 5, 1, 0)


@pytest.mark.parametrize("d", [13, 5, 2, 6, 10, 14, 21, 22])
def test_ramified_fields_have_only_the_irrelevant_orbit(d):
    sols = brute_force(make_field(d), (), 50, 3, 0)
    assert [s.relevant for s in sols] == [False]


# -- split parametrization ------------------------------------------------------------

def test_param_split2_d7():
    sols = param_split2(7, 10)
    triples = {(s.params.r1, s.params.r2, abs(s.params.v)) for s in sols}
    assert {(2, 1, 1), (3, 2, 1), (4, 4, 3)} <= triples
    # r = 1 also gives a relevant solution: 2^3 - 1 = 7
    assert (1, 1, 1) in triples
    assert sols.complete_up_to == 10


def test_param_split2_d31_and_d15():
    assert {(s.params.r1, abs(s.params.v)) for s in param_split2(31, 10)} == {(3, 1)}
    sols = param_split2(15, 20)
    assert [(s.params.r1, s.params.r2, abs(s.params.v)) for s in sols] == [(2, 2, 1)]


def test_param_split2_rejects_non_split():
    with pytest.raises(NotSplit):
        param_split2(5, 10)


@pytest.mark.parametrize("d", split_ds(500))
def test_param_split2_matches_brute_force(d):
    r_max = 12
    param = param_split2(d, r_max)
    # every lambda with norm 2^k, k <= r_max + 2, has |y| <= 2^(k/2+1)/sqrt(d), |x| <= 2^(k/2+1)
    bound = 2 ** ((r_max + 2) // 2 + 1)
    brute = brute_force(make_field(d), (), bound, 1, 0).relevant()
    small = {s.orbit_id for s in brute if max(abs(s.lam.norm().numerator), abs(s.mu.norm().numerator)) <= 2**(r_max + 2)}
    assert param.orbit_ids() == small


@pytest.mark.parametrize("d", split_ds(2000))
def test_main_family_properties(d):
    for s in param_split2(d, 64):
        p = s.params
        assert s.lam + s.mu == 1
        if p.r1 == p.r2 and s.lam.x == 1:
            assert s.mu == s.lam.conj()
            assert s.lam.norm() == 2**p.r1
            assert (2 ** (p.r1 + 2) - 1) % d == 0
            assert p.v % 2


def test_d0_is_in_the_main_family():
    sols = param_split2(D0, 90)
    assert [(s.params.r1, abs(s.params.v)) for s in sols] == [(82, 21)]


# -- ramified parametrization -------------------------------------------------------

def test_param_with_q_d21_q29_empty():
    assert list(param_with_q(21, 29, 20, 6, 10**6)) == []


@pytest.mark.parametrize("d, q", [(2, 29), (5, 3), (6, 5), (10, 3), (2, 3), (13, 5), (14, 5)])
def test_param_with_q_matches_brute_force(d, q):
    param = param_with_q(d, q, 4, 2, 10**6)
    for s in param:
        p = s.params
        t = 4**p.r1 * q ** (2 * p.s1) - q ** (2 * p.s2) + 1
        assert t * t + d * p.v * p.v == 4 * 4**p.r1 * q ** (2 * p.s1)
        assert (2 - t) ** 2 + d * p.v * p.v == 4 * q ** (2 * p.s2)
    K = make_field(d)
    brute = brute_force(K, (q,), 300, 2, 1).relevant()
    if legendre(-d, q) == -1 and d > 2:
        # with the rational solutions added the parametrization is complete in this shape
        assert brute.orbit_ids() <= param.orbit_ids() | rational_solutions(K, (q,)).orbit_ids()
    for s in param:
        if max(abs(s.lam.x), abs(s.lam.y)) <= 300:
            assert s.orbit_id in brute.orbit_ids()


def test_param_with_q_rejects_split():
    with pytest.raises(NotRamified):
        param_with_q(7, 29)


# -- certificates -------------------------------------------------------------------

def test_norel_examples():
    assert certificate_norel(21, 29).conclusion is Conclusion.NO_RELEVANT
    assert certificate_norel(7, 29).conclusion is Conclusion.NOT_APPLICABLE
    assert certificate_norel(21, 13).conclusion is Conclusion.NOT_APPLICABLE


def test_norel_agrees_with_brute_force():
    for d, q in ((21, 29), (13, 37)):
        if certificate_norel(d, q).conclusion is Conclusion.NO_RELEVANT:
            assert len(brute_force(make_field(d), (q,), 200, 2, 1).relevant()) == 0


def test_ramified_certificate():
    assert certificate_ramified(5).conclusion is Conclusion.NO_RELEVANT
    assert certificate_ramified(7).conclusion is Conclusion.NOT_APPLICABLE


def test_obstruction_chain_not_applicable():
    c = obstruction_chain(7)
    assert c.conclusion is Conclusion.NOT_APPLICABLE
    assert c.steps[-1].assertion == "d = 5 (mod 6)" and not c.steps[-1].outcome
    c = obstruction_chain(119)                  # 119 = 7 (mod 14)
    assert c.conclusion is Conclusion.NOT_APPLICABLE and not c.steps[-1].outcome
    with pytest.raises(NotSplit):
        obstruction_chain(5)


@pytest.mark.parametrize("d", [23, 47, 71, 167])
def test_obstruction_chain_primes_close(d):
    c = obstruction_chain(d)
    assert c.conclusion is Conclusion.NO_RELEVANT
    assert all(s.outcome for s in c.steps)
    outcomes = {s.assertion: s.outcome for s in c.steps}
    assert outcomes["1 + d v^2 = 2^(r+2) (mod 6) forces 3 | v"]
    assert outcomes["3 | v forces 6 | (r+2)"]
    # the mod 14 residue is 7, which only forces 7 | v
    assert outcomes["6 | (r+2), r > 4 gives d v^2 = 7 (mod 14)"]
    assert outcomes["0 factor pairs (d1, d2)"]


def test_obstruction_chain_composite_sieved():
    # 1127 = 7^2 * 23 is not squarefree; 5423 = 11 * 17 * 29 has the pair (17, 319)
    c = obstruction_chain(5423)
    assert c.conclusion is Conclusion.NO_RELEVANT
    assert any(s.assertion == "1 factor pairs (d1, d2)" for s in c.steps)


def test_obstruction_chain_counterexample():
    assert D0 % 8 == 7 and D0 % 6 == 5 and D0 % 14 == 9
    assert D0 * 21**2 == 2**84 - 1
    c = obstruction_chain(D0)
    assert c.conclusion is Conclusion.INCOMPLETE
    assert 82 % c.residual_modulus in c.residual_classes
    assert c.residual_classes == (82, 2602) and c.residual_modulus == 5040


def test_chain_residual_matches_direct_search():
    # every true exponent of a d that survives must lie in a residual class
    hits = 0
    for r in range(5, 200):
        n = 2**(r + 2) - 1
        f = arith.factorint(n, 10**5)
        if not f.complete:
            continue
        d, v = arith.squarefree_split(f)
        if d % 8 != 7 or d % 6 != 5 or d % 14 == 7:
            continue
        c = obstruction_chain(d)
        assert c.conclusion is Conclusion.INCOMPLETE, (r, d)
        assert r % c.residual_modulus in c.residual_classes, (r, d)
        hits += 1
    assert hits >= 1


def test_replay():
    for cert in (certificate_norel(21, 29), obstruction_chain(23), obstruction_chain(7),
                 certificate_ramified(10)):
        assert replay(cert)


def test_solution_record():
    s = make_solution(make_field(7)(1, 3, 2))
    rec = s.to_dict()
    assert set(rec) == {"lambda", "mu", "relevant", "r1", "r2", "s1", "s2", "v", "orbit_id"}
    assert rec["relevant"] is True


def test_s3_images_of_rational():
    assert set(s3_images(3)) == {3, Fraction(1, 3), -2, Fraction(-1, 2), Fraction(3, 2), Fraction(2, 3)}


def test_rational_solutions():
    K = make_field(10)
    # 3 - 2 = 1, 4 - 3 = 1 and 9 - 8 = 1
    assert rational_solutions(K, (3,)).orbit_ids() == {orbit_key(3), orbit_key(4), orbit_key(9)}
    assert len(rational_solutions(K, (29,))) == 0
    assert len(rational_solutions(K, (127,))) == 1


def test_rational_solutions_match_brute_force():
    for d, q in ((10, 3), (13, 5), (2, 7), (6, 17)):
        K = make_field(d)
        brute = {s.orbit_id for s in brute_force(K, (q,), 300, 2, 1).relevant() if s.lam.is_rational()}
        assert brute == rational_solutions(K, (q,), 16).orbit_ids()
