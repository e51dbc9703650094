import math
import random
from fractions import Fraction

import pytest

from aflt import arith
from aflt.density import (
    alpha, alpha_congruence, bound_approx2, check_h_lower, count_class, density_report,
    enumerate_cprime, landau_estimate, mersenne_stat, mersenne_stats, sieve_squarefree,
)
from aflt.errors import SNotSquarefree
from aflt.sunit import param_split2


@pytest.fixture(scope="module")
def table():
    return sieve_squarefree(10**6)


def test_sieve_matches_trial_division():
    t = sieve_squarefree(10**4)
    for n in range(1, 10**4 + 1):
        assert t[n] == arith.is_squarefree(n), n
    assert not t[0]


def test_count_examples():
    assert count_class(0, 1, 100) == 60                    # d = 1 is not in N^sf
    assert count_class(3, 8, 100) == len([d for d in range(3, 101, 8) if arith.is_squarefree(d)])


def test_counts_against_oracle(oracle):
    t = sieve_squarefree(10**4)
    for key, n in oracle["count_sf_1e4"].items():
        r, N = map(int, key.split(","))
        assert count_class(r, N, 10**4, t) == n, key


def test_landau_examples():
    assert landau_estimate(0, 1, 10**6) == pytest.approx(6 / math.pi**2 * 10**6)
    assert landau_estimate(3, 8, 10**6) == pytest.approx(10**6 / math.pi**2)
    assert landau_estimate(2, 4, 100) > 0
    with pytest.raises(SNotSquarefree):
        landau_estimate(4, 8, 100)


def test_landau_agreement(table):
    worst = 0.0
    for N in range(1, 25):
        for r in range(N):
            if not arith.is_squarefree(math.gcd(r, N)):
                continue
            got = count_class(r, N, 10**6, table)
            worst = max(worst, abs(got / landau_estimate(r, N, 10**6) - 1))
    assert worst < 0.02


def test_cprime_against_oracle(oracle):
    for key, X, r_min, r_max in (("cprime_1e6_r1", 10**6, 1, 64), ("cprime_1e6_r3", 10**6, 3, 64),
                                 ("cprime_1e3_r12", 10**3, 1, 12)):
        cp = enumerate_cprime(X, r_max, r_min=r_min)
        assert not cp.unfactored
        want = {int(d): sorted(map(tuple, rv)) for d, rv in oracle[key].items()}
        got = {d: sorted({(s.r, s.v) for s in e.sources if s.kind == "main"})
               for d, e in cp.entries.items() if any(s.kind == "main" for s in e.sources)}
        assert got == want, key


def test_cprime_examples():
    assert enumerate_cprime(100).members() == [7, 15, 31]
    assert enumerate_cprime(100, r_min=3).members() == [7, 31]
    e = enumerate_cprime(10**3, 12).entries
    assert {(s.r, s.v) for s in e[455].sources} == {(10, 3)}
    assert any(s.kind.startswith("exceptional") for s in e[7].sources)
    assert alpha(1, 3) * alpha(2, 3) == 255 and 255 in e


def test_cprime_invariants():
    cp = enumerate_cprime(10**6, 64)
    for d, e in cp.entries.items():
        assert arith.is_squarefree(d)
        for s in e.sources:
            if s.kind == "main":
                assert d * s.v**2 == 2**(s.r + 2) - 1 and s.v % 2 == 1
    lines = cp.to_csv().splitlines()
    assert lines[0] == "d,r,v,complete" and lines[1] == "7,1,1,1"


def test_kappa2_primes_are_plus_minus_one_mod_8():
    cp = enumerate_cprime(10**12, 64)
    for d, e in cp.entries.items():
        if any(s.kind == "main" and s.r % 2 for s in e.sources):
            for q in arith.prime_factors(d):
                assert q % 8 in (1, 7), (d, q)


def test_cprime_matches_param_split2():
    members = set(enumerate_cprime(10**4, 64).members())
    found = set()
    for d in range(7, 10**4 + 1, 8):
        if not arith.is_squarefree(d):
            continue
        if any(s.params.r1 == s.params.r2 and s.relevant for s in param_split2(d, 64)):
            found.add(d)
    assert found == members


def test_mersenne_examples(oracle):
    assert mersenne_stat(6).omega == 2 and mersenne_stat(11).omega == 2
    assert mersenne_stat(30).omega == 6
    for st in mersenne_stats(40):
        assert st.fully_factored
        assert st.omega == oracle["mersenne_omega"][str(st.m)]
        prod = 1
        for p, e in st.factors:
            assert arith.is_prime(p)
            prod *= p**e
        assert prod == st.M


def test_h_lower():
    assert all(check_h_lower(m) for m in range(1, 41))
    assert check_h_lower(6) and mersenne_stat(6).omega == 2**arith.omega(6) - 2


def test_bound_approx2():
    b = bound_approx2(30)
    assert b.h == 6 and b.square == Fraction(900, 64) and b.value == pytest.approx(30 / 8)


def test_alpha_congruence():
    rng = random.Random(1)
    for _ in range(100):
        m = rng.randint(1, 40)
        s1 = rng.randint(0, 200)
        s2 = s1 + m * rng.randint(-(s1 // m), 5)
        assert alpha_congruence(m, s1, s2)


def test_density_report(table):
    rep = density_report(10**6, 64, table=table)
    assert rep.n_sf / 10**6 == pytest.approx(6 / math.pi**2, rel=1e-3)
    assert rep.n_sf_3_8 / rep.n_sf == pytest.approx(1 / 6, rel=5e-3)
    assert rep.delta_D == pytest.approx(5 / 6, rel=1e-2)
    assert rep.delta_C >= 0.9999 and len(rep.cprime) <= 60
    assert rep.to_dict()["cprime_count"] == len(rep.cprime)
