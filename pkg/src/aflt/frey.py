"""Frey curve invariants and the valuation identities they satisfy.

For a solution of A a^p + B b^p + C c^p = 0 the curve is

    Y^2 = X (X - A a^p) (X + B b^p)

with c4 = 16((B b^p)^2 - A a^p C c^p), Delta = 16 (ABC)^2 (abc)^(2p) and
j = c4^3 / Delta.  Everything is exact; reports keep every intermediate
valuation so a check can be audited after the fact.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, asdict
from fractions import Fraction

from . import arith
from .errors import (DegenerateLambda, DegenerateRoots, EvenCoefficient, HypothesisFailure,
                     NotASolution, TrivialSolution)
from .quad_field import (Element, IdealHNF, ImagQuadField, OddPrime, PrimeAbove2, as_element,
                         gcd_ideal, val2_norm, val_above_2)


def valuation(z: Element, prime) -> int | float:
    if isinstance(prime, PrimeAbove2):
        return val_above_2(z, prime)
    return prime.valuation(z)


@dataclass(frozen=True)
class FreyData:
    A: Element
    B: Element
    C: Element
    a: Element
    b: Element
    c: Element
    p: int
    c4: Element
    delta: Element
    j: Element

    @property
    def field(self) -> ImagQuadField:
        return self.A.field

    def terms(self) -> tuple[Element, Element, Element]:
        p = self.p
        return self.A * self.a**p, self.B * self.b**p, self.C * self.c**p

    def to_dict(self) -> dict:
        return {k: (v if isinstance(v, int) else str(v)) for k, v in
                (("d", self.field.d), ("p", self.p), ("A", self.A), ("B", self.B), ("C", self.C),
                 ("a", self.a), ("b", self.b), ("c", self.c),
                 ("c4", self.c4), ("delta", self.delta), ("j", self.j))}


def _field_of(values, field):
    for v in values:
        if isinstance(v, Element):
            return v.field
    if field is None:
        raise ValueError("all inputs are rational; pass field=")
    return field


def frey_invariants(A, B, C, a, b, c, p: int, field: ImagQuadField | None = None,
                    require_odd: bool = True) -> FreyData:
    """Invariants of the Frey curve attached to (A, B, C, a, b, c, p).

    With require_odd, coefficients whose norm is even raise EvenCoefficient;
    the algebraic identities themselves hold for any coefficients.
    """
    field = _field_of((A, B, C, a, b, c), field)
    A, B, C, a, b, c = (as_element(v, field) for v in (A, B, C, a, b, c))
    if p < 3 or not arith.is_prime(p):
        raise ValueError(f"p = {p} is not an odd prime")
    for name, v in zip("ABCabc", (A, B, C, a, b, c)):
        if not v.is_integral():
            raise ValueError(f"{name} = {v} is not integral")
    alpha, beta, gamma = A * a**p, B * b**p, C * c**p
    if alpha + beta + gamma != 0:
        raise NotASolution(f"A a^p + B b^p + C c^p = {alpha + beta + gamma}")
    if (a * b * c).is_zero():
        raise TrivialSolution("abc = 0")
    if require_odd:
        for name, v in zip("ABC", (A, B, C)):
            if val2_norm(v) != 0:
                raise EvenCoefficient(f"{name} = {v} has even norm")
    c4 = 16 * (beta * beta - alpha * gamma)
    delta = 16 * (A * B * C) ** 2 * (a * b * c) ** (2 * p)
    j = c4**3 / delta
    # second expression, obtained by swapping the roles of a and b
    j_alt = 256 * (gamma * gamma - alpha * beta) ** 3 / (alpha * beta * gamma) ** 2
    assert j == j_alt, (j, j_alt)
    return FreyData(A, B, C, a, b, c, p, c4, delta, j)


# -- primes above 2 ---------------------------------------------------------

@dataclass(frozen=True)
class UReport:
    prime: str
    permutation: tuple[str, str, str]
    v_a: int
    v_b: int
    v_c: int
    v_2: int
    v_j: int
    predicted: int
    pot_multiplicative: bool
    p_divides_vj: bool


def valuation_identity_U(fd: FreyData, P: PrimeAbove2) -> UReport:
    """Check v_P(j) = 8 v_P(2) - 2p v_P(b) after moving the P-divisible entry to b."""
    if not P.in_U:
        raise HypothesisFailure(f"{P} has residue degree {P.residue_degree_f}")
    vals = [valuation(z, P) for z in (fd.a, fd.b, fd.c)]
    hit = [i for i, v in enumerate(vals) if v > 0]
    if len(hit) != 1:
        raise HypothesisFailure(f"{P} divides {len(hit)} of a, b, c (valuations {vals})")
    # c4 is symmetric in the three terms, so any relabelling keeps j
    order = {0: (1, 0, 2), 1: (0, 1, 2), 2: (0, 2, 1)}[hit[0]]
    names = tuple("abc"[i] for i in order)
    va, vb, vc = (vals[i] for i in order)
    v2 = P.v_of_2
    vj = valuation(fd.j, P)
    predicted = 8 * v2 - 2 * fd.p * vb
    assert vj == predicted, (vj, predicted)
    return UReport(str(P), names, va, vb, vc, v2, vj, predicted, vj < 0, vj % fd.p == 0)


# -- the prime m = gcd(a, b, c) ---------------------------------------------

@dataclass(frozen=True)
class MReport:
    prime: str
    v_terms: tuple[int, int, int]
    k: int
    t: int
    v_j: int
    inertia: "InertiaClass | None"


def vm_analysis(fd: FreyData, m: IdealHNF) -> MReport:
    """Valuation of j at the odd prime m = gcd(a, b, c).

    Two of the three term valuations agree; with k the smaller value and t
    the gap, v_m(j) = -2t when t >= 1 (and p | t), and v_m(j) >= 0 when t = 0.
    """
    g = gcd_ideal([fd.a, fd.b, fd.c])
    if g != m or not m.is_prime():
        raise HypothesisFailure(f"gcd(a, b, c) = {g} is not the prime {m}")
    if m.norm % 2 == 0:
        raise HypothesisFailure(f"{m} lies above 2")
    q = m.prime_descriptor()
    if q.q == fd.p:
        raise HypothesisFailure(f"{m} lies above p = {fd.p}")
    if any(valuation(x, q) for x in (fd.A, fd.B, fd.C)):
        raise HypothesisFailure(f"{m} divides a coefficient")
    vt = tuple(valuation(x, q) for x in fd.terms())
    lo, hi = sorted(vt)[0], sorted(vt)[2]
    assert sorted(vt)[1] == lo, vt
    k, t = lo, hi - lo
    vj = valuation(fd.j, q)
    if t == 0:
        assert vj >= 0, vj
    else:
        assert vj == -2 * t, (vj, t)
        assert t % fd.p == 0, t
    return MReport(str(m), vt, k, t, vj, classify_inertia(vj, fd.p) if fd.p >= 5 else None)


# -- inertia -----------------------------------------------------------------

class InertiaClass(str, enum.Enum):
    POT_GOOD = "PotGood_div24"
    POT_MULT_P = "PotMult_p_or_2p"
    POT_MULT_SMALL = "PotMult_1_or_2"


def classify_inertia(v_q_j: int, p: int) -> InertiaClass:
    assert p >= 5, p
    if v_q_j >= 0:
        return InertiaClass.POT_GOOD
    if v_q_j % p:
        return InertiaClass.POT_MULT_P
    return InertiaClass.POT_MULT_SMALL


# -- semistability away from S and m -----------------------------------------

@dataclass(frozen=True)
class SemistabilityReport:
    prime: str
    v_delta: int
    v_c4: int
    reduction: str
    conductor_cap: int
    # primes above 3 are reported, not asserted
    above_3: bool

    def to_dict(self) -> dict:
        return asdict(self)


def semistability_report(fd: FreyData, q: OddPrime) -> SemistabilityReport:
    if any(valuation(x, q) for x in (fd.A, fd.B, fd.C)):
        raise HypothesisFailure(f"{q} divides a coefficient")
    if all(valuation(x, q) > 0 for x in (fd.a, fd.b, fd.c)):
        raise HypothesisFailure(f"{q} divides gcd(a, b, c)")
    vd, vc = valuation(fd.delta, q), valuation(fd.c4, q)
    above_3 = q.q == 3
    if vd == 0:
        kind = "good"
    elif vc == 0:
        kind = "multiplicative"
    else:
        if not above_3:
            raise HypothesisFailure(f"v(delta) = {vd} and v(c4) = {vc} at {q}")
        kind = "unresolved"
    v3 = valuation(as_element(3, fd.field), q)
    return SemistabilityReport(str(q), vd, vc, kind, 2 + 3 * v3, above_3)


# -- Legendre form -----------------------------------------------------------

def _exact(v):
    return Fraction(v) if isinstance(v, int) else v


def legendre_lambda(e1, e2, e3):
    e1, e2, e3 = _exact(e1), _exact(e2), _exact(e3)
    if e1 == e2 or e1 == e3 or e2 == e3:
        raise DegenerateRoots(f"roots {e1}, {e2}, {e3} are not distinct")
    return (e3 - e1) / (e2 - e1)


def j_of_lambda(lam):
    lam = _exact(lam)
    if lam == 0 or lam == 1:
        raise DegenerateLambda(f"lambda = {lam}")
    return 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (1 - lam) ** 2)


def j_of_lambda_mu(lam, mu):
    s = _exact(lam) * _exact(mu)
    if s == 0:
        raise DegenerateLambda("lambda * mu = 0")
    return 256 * (1 - s) ** 3 / (s * s)


# -- random solutions for testing ---------------------------------------------

def random_integral(field: ImagQuadField, rng: random.Random, bound: int) -> Element:
    return rng.randint(-bound, bound) + rng.randint(-bound, bound) * field.theta


def random_solution(field: ImagQuadField, p: int, rng: random.Random, bound: int = 5) -> FreyData:
    """Sample a, b and odd A, B; c = 1 and C = -(A a^p + B b^p), redrawing if C is even."""
    while True:
        a, b = random_integral(field, rng, bound), random_integral(field, rng, bound)
        A, B = random_integral(field, rng, bound), random_integral(field, rng, bound)
        if (a * b).is_zero() or val2_norm(A) != 0 or val2_norm(B) != 0:
            continue
        C = -(A * a**p + B * b**p)
        if C.is_zero() or val2_norm(C) != 0:
            continue
        return frey_invariants(A, B, C, a, b, 1, p)


__all__ = [
    "FreyData", "frey_invariants", "UReport", "valuation_identity_U", "MReport", "vm_analysis",
    "InertiaClass", "classify_inertia", "SemistabilityReport", "semistability_report",
    "legendre_lambda", "j_of_lambda", "j_of_lambda_mu", "random_solution", "random_integral",
    "valuation",
]
