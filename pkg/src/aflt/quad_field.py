"""Exact arithmetic in imaginary quadratic fields K = Q(sqrt(-d)).

Elements are stored as reduced triples (x, y, den) meaning
(x + y*sqrt(-d)) / den, for every d, including -d = 1 (mod 4) where the
ring of integers also contains half-integral elements.  Integrality is a
predicate, not a change of representation.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import gcd, inf

from . import arith
from .errors import (
    AllZero, DivisionByZero, EvenRadical, NonPositive, NotInert,
    NotSplit, NotSquarefree, PrecisionFailure,
)


class Splitting(str, enum.Enum):
    RAMIFIED = "Ramified"
    SPLIT = "Split"
    INERT = "Inert"


class BasisKind(str, enum.Enum):
    ONE_AND_SQRT = "OneAndSqrt"     # -d = 2, 3 (mod 4): Z[sqrt(-d)]
    ONE_AND_HALF = "OneAndHalf"     # -d = 1 (mod 4): Z[(1 + sqrt(-d))/2]


@dataclass(frozen=True)
class ImagQuadField:
    d: int
    two_splitting: Splitting
    basis_kind: BasisKind
    discriminant: int
    extra_units: bool = False

    def __call__(self, x, y=0, den=1) -> "Element":
        return Element(x, y, den, self)

    @property
    def sqrt(self) -> "Element":
        return Element(0, 1, 1, self)

    @property
    def theta(self) -> "Element":
        """Canonical integral generator: sqrt(-d) or (1 + sqrt(-d))/2."""
        if self.basis_kind is BasisKind.ONE_AND_SQRT:
            return Element(0, 1, 1, self)
        return Element(1, 1, 2, self)

    def __repr__(self) -> str:
        return f"Q(sqrt(-{self.d}))"


def two_splitting_of(d: int) -> Splitting:
    m = -d % 8
    if m == 1:
        return Splitting.SPLIT
    if m == 5:
        return Splitting.INERT
    return Splitting.RAMIFIED


def is_dt1_shape(d: int) -> bool:
    """-d = 2, 3 (mod 4): the congruence in the first density statement."""
    return -d % 4 in (2, 3)


def is_norel_shape(d: int) -> bool:
    """-d = 2, 3 (mod 8): the congruence under which S = {P, q} has no relevant solutions."""
    return -d % 8 in (2, 3)


@lru_cache(maxsize=4096)
def make_field(d: int) -> ImagQuadField:
    if d <= 0:
        raise NonPositive(f"d must be positive, got {d}")
    if d > 1 and not arith.is_squarefree(d):
        raise NotSquarefree(f"d={d} is not squarefree")
    if -d % 4 == 1:
        kind, disc = BasisKind.ONE_AND_HALF, -d
    else:
        kind, disc = BasisKind.ONE_AND_SQRT, -4 * d
    return ImagQuadField(d, two_splitting_of(d), kind, disc, extra_units=d in (1, 3))


class Element:
    """(x + y*sqrt(-d)) / den, kept reduced with den > 0."""

    __slots__ = ("x", "y", "den", "field")

    def __init__(self, x: int, y: int = 0, den: int = 1, field: ImagQuadField | None = None):
        if field is None:
            raise TypeError("Element needs a field")
        if den == 0:
            raise DivisionByZero("zero denominator")
        if den < 0:
            x, y, den = -x, -y, -den
        g = gcd(gcd(x, y), den)
        if g > 1:
            x, y, den = x // g, y // g, den // g
        self.x, self.y, self.den, self.field = x, y, den, field

    @property
    def d(self) -> int:
        return self.field.d

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other) -> "Element | None":
        if isinstance(other, Element):
            if other.field.d != self.field.d:
                raise ValueError(f"mixing elements of {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return Element(other, 0, 1, self.field)
        if isinstance(other, Fraction):
            return Element(other.numerator, 0, other.denominator, self.field)
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = self.den * o.den
        return Element(self.x * o.den + o.x * self.den, self.y * o.den + o.y * self.den, den, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Element(-self.x, -self.y, self.den, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.d
        return Element(self.x * o.x - d * self.y * o.y, self.x * o.y + self.y * o.x,
                       self.den * o.den, self.field)

    __rmul__ = __mul__

    def inv(self) -> "Element":
        n = self.x * self.x + self.field.d * self.y * self.y
        if n == 0:
            raise DivisionByZero("inverse of zero")
        # 1/z = den * conj(x + y sqrt) / (x^2 + d y^2)
        return Element(self.den * self.x, -self.den * self.y, n, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = Element(1, 0, 1, self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "Element":
        return Element(self.x, -self.y, self.den, self.field)

    def norm(self) -> Fraction:
        return Fraction(self.x * self.x + self.field.d * self.y * self.y, self.den * self.den)

    def trace(self) -> Fraction:
        return Fraction(2 * self.x, self.den)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_rational(self) -> bool:
        return self.y == 0

    def to_fraction(self) -> Fraction:
        if self.y:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.x, self.den)

    def is_integral(self) -> bool:
        if self.den == 1:
            return True
        return (self.den == 2 and (self.x - self.y) % 2 == 0
                and self.field.basis_kind is BasisKind.ONE_AND_HALF)

    def key(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.den)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.field.d == other.field.d and self.key() == other.key()
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and Fraction(self.x, self.den) == other
        return NotImplemented

    def __hash__(self):
        if self.y == 0:
            return hash(Fraction(self.x, self.den))
        return hash((self.x, self.y, self.den, self.field.d))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Element({self})"

    def __str__(self):
        return f"({self.x}{self.y:+d}*sqrt(-{self.field.d}))/{self.den}"


_ELEMENT_RE = re.compile(r"^\(\s*(-?\d+)\s*([+-]\s*\d+)\s*\*\s*sqrt\(\s*-\s*(\d+)\s*\)\s*\)\s*/\s*(\d+)$")


def parse_element(text: str, field: ImagQuadField | None = None) -> Element:
    """Inverse of ``str(Element)``; plain integers and fractions are accepted too."""
    text = text.strip()
    m = _ELEMENT_RE.match(text)
    if m:
        x, y, d, den = int(m[1]), int(m[2].replace(" ", "")), int(m[3]), int(m[4])
        if field is not None and field.d != d:
            raise ValueError(f"{text} does not live in {field}")
        return Element(x, y, den, field or make_field(d))
    if field is None:
        raise ValueError(f"cannot parse {text!r} without a field")
    q = Fraction(text)
    return Element(q.numerator, 0, q.denominator, field)


def as_element(value, field: ImagQuadField) -> Element:
    if isinstance(value, Element):
        return value
    if isinstance(value, str):
        return parse_element(value, field)
    q = Fraction(value)
    return Element(q.numerator, 0, q.denominator, field)


# -- 2-adic square roots --------------------------------------------------

@dataclass(frozen=True)
class TwoAdicSqrt:
    d: int
    precision_N: int
    s: int

    def check(self) -> bool:
        mod = 1 << self.precision_N
        return (self.s * self.s + self.d) % mod == 0 and (self.precision_N < 2 or self.s % 4 == 1)


def _lift_root_mod_2(a: int, k: int) -> int:
    """Some s with s^2 = a (mod 2^k), for a = 1 (mod 8) and k >= 3.

    Classical lifting: if s^2 != a mod 2^(j+1) then (s + 2^(j-1))^2 is.
    The result is correct mod 2^(k-1) up to sign.
    """
    s = 1
    for j in range(3, k):
        if (s * s - a) >> j & 1:
            s += 1 << (j - 1)
    return s % (1 << k)


@lru_cache(maxsize=1024)
def hensel_sqrt(d: int, N: int) -> TwoAdicSqrt:
    """The 2-adic square root of -d that is 1 mod 4, reduced mod 2^N."""
    if -d % 8 != 1:
        raise NotSplit(f"-{d} is not 1 mod 8; 2 does not split")
    if N < 1:
        raise ValueError("precision must be positive")
    k = max(N + 1, 3)
    s = _lift_root_mod_2(-d, k)
    # s is determined mod 2^(k-1) = 2^N up to sign; pick the root that is 1 mod 4
    s %= 1 << N
    if N >= 2 and s % 4 == 3:
        s = -s % (1 << N)
    return TwoAdicSqrt(d, N, s)


# -- primes above 2 and valuations ----------------------------------------

@dataclass(frozen=True)
class PrimeAbove2:
    label: str                      # "P", "P1", "P2"
    ramification_e: int
    residue_degree_f: int
    v_of_2: int
    d: int
    # +1 for P1 (sqrt(-d) -> s), -1 for P2 (sqrt(-d) -> -s); 0 if not split
    sign: int = 0

    @property
    def in_U(self) -> bool:
        return self.residue_degree_f == 1

    @property
    def embedding(self) -> TwoAdicSqrt | None:
        return hensel_sqrt(self.d, 64) if self.sign else None

    def __str__(self) -> str:
        return self.label


def primes_above_2(field: ImagQuadField) -> list[PrimeAbove2]:
    d = field.d
    if field.two_splitting is Splitting.RAMIFIED:
        return [PrimeAbove2("P", 2, 1, 2, d)]
    if field.two_splitting is Splitting.INERT:
        return [PrimeAbove2("P", 1, 2, 1, d)]
    return [PrimeAbove2("P1", 1, 1, 1, d, +1), PrimeAbove2("P2", 1, 1, 1, d, -1)]


START_PRECISION = 64
SAFETY_BAND = 8
MAX_PRECISION = 1 << 20


def val_above_2(z: Element, P: PrimeAbove2) -> int | float:
    if z.is_zero():
        return inf
    if P.ramification_e == 2:
        return arith.vp(z.norm().numerator, 2) - arith.vp(z.norm().denominator, 2)
    if P.residue_degree_f == 2:
        n = z.norm()
        return (arith.vp(n.numerator, 2) - arith.vp(n.denominator, 2)) // 2
    N = START_PRECISION
    while N <= MAX_PRECISION:
        s = hensel_sqrt(P.d, N).s
        mod = 1 << N
        image = (z.x + P.sign * z.y * s) % mod
        if image % (1 << (N - SAFETY_BAND)):
            return arith.vp(image, 2) - arith.vp(z.den, 2)
        N *= 2
    raise PrecisionFailure(f"valuation of {z} at {P} exceeds {MAX_PRECISION} bits")


def val2_norm(z: Element) -> int | float:
    if z.is_zero():
        return inf
    n = z.norm()
    return arith.vp(n.numerator, 2) - arith.vp(n.denominator, 2)


# -- odd primes --------------------------------------------------------------

def _hensel_root_odd(root: int, a: int, b: int, p: int, k: int) -> int:
    """Lift a simple root of X^2 + a*X + b from mod p to mod p^k."""
    r, mod = root % p, p
    for _ in range(1, k):
        mod = min(mod * mod, p**k)
        f = r * r + a * r + b
        df = 2 * r + a
        r = (r - f * pow(df, -1, mod)) % mod
        if mod == p**k:
            break
    return r % p**k


@dataclass(frozen=True)
class OddPrime:
    """A prime of O_K above the odd rational prime q.

    kind is Inert, Split or Ramified.  Split primes carry the residue of
    sqrt(-d) modulo the prime (in Z/qZ), which fixes which of the two it is.
    """
    q: int
    kind: Splitting
    d: int
    root: int | None = None
    label: str = ""

    @property
    def norm(self) -> int:
        return self.q * self.q if self.kind is Splitting.INERT else self.q

    def valuation(self, z: Element) -> int | float:
        if z.is_zero():
            return inf
        q = self.q
        n = z.norm()
        vn = arith.vp(n.numerator, q) - arith.vp(n.denominator, q)
        if self.kind is Splitting.INERT:
            return vn // 2
        if self.kind is Splitting.RAMIFIED:
            return vn
        num_norm = z.x * z.x + self.d * z.y * z.y
        k = arith.vp(num_norm, q) + 1
        r = _hensel_root_odd(self.root, 0, self.d, q, k)
        image = (z.x + z.y * r) % q**k
        return arith.vp(image, q) - arith.vp(z.den, q)

    def __str__(self) -> str:
        return self.label or f"q{self.q}"


def legendre(a: int, q: int) -> int:
    return arith.jacobi(a, q)


def primes_above_odd(field: ImagQuadField, q: int) -> list[OddPrime]:
    assert q % 2 == 1 and arith.is_prime(q), q
    d = field.d
    if d % q == 0:
        return [OddPrime(q, Splitting.RAMIFIED, d, label=f"q{q}")]
    if legendre(-d, q) == -1:
        return [OddPrime(q, Splitting.INERT, d, label=f"({q})")]
    r = next(x for x in range(1, q) if (x * x + d) % q == 0)
    r = min(r, q - r)
    return [OddPrime(q, Splitting.SPLIT, d, r, f"q{q}a"),
            OddPrime(q, Splitting.SPLIT, d, q - r, f"q{q}b")]


def val_inert_odd(z: Element, q: int) -> int | float:
    if q % 2 == 0 or z.field.d % q == 0 or legendre(-z.field.d, q) != -1:
        raise NotInert(f"{q} is not inert in {z.field}")
    if z.is_zero():
        return inf
    n = z.norm()
    return (arith.vp(n.numerator, q) - arith.vp(n.denominator, q)) // 2


# -- ideals in Hermite normal form ----------------------------------------

def _theta_coords(z: Element) -> tuple[int, int]:
    """Coordinates (u, w) of an integral z = u + w*theta."""
    if not z.is_integral():
        raise ValueError(f"{z} is not integral")
    if z.field.basis_kind is BasisKind.ONE_AND_SQRT:
        return z.x, z.y
    # sqrt(-d) = 2*theta - 1
    if z.den == 1:
        return z.x - z.y, 2 * z.y
    return (z.x - z.y) // 2, z.y


def _times_theta(u: int, w: int, field: ImagQuadField) -> tuple[int, int]:
    if field.basis_kind is BasisKind.ONE_AND_SQRT:
        return -field.d * w, u
    # theta^2 = theta - (1 + d)/4
    return -w * (1 + field.d) // 4, u + w


@dataclass(frozen=True)
class IdealHNF:
    """Z-module with basis [a, b + c*theta]."""
    a: int
    b: int
    c: int
    field: ImagQuadField = dc_field(compare=True, repr=False)

    @property
    def norm(self) -> int:
        return self.a * self.c

    def contains(self, z: Element) -> bool:
        if not z.is_integral():
            return False
        u, w = _theta_coords(z)
        if w % self.c:
            return False
        return (u - (w // self.c) * self.b) % self.a == 0

    def is_closed(self) -> bool:
        f = self.field
        ok = self.c > 0 and self.a > 0 and self.a % self.c == 0 and self.b % self.c == 0 and 0 <= self.b < self.a
        for u, w in ((self.a, 0), (self.b, self.c)):
            tu, tw = _times_theta(u, w, f)
            ok = ok and self._contains_coords(tu, tw)
        return ok

    def _contains_coords(self, u: int, w: int) -> bool:
        return w % self.c == 0 and (u - (w // self.c) * self.b) % self.a == 0

    def is_prime(self) -> bool:
        if arith.is_prime(self.norm):
            return True
        q = self.a
        if self.c != q or not arith.is_prime(q):
            return False
        # the ideal (q): prime iff q is inert
        if q == 2:
            return self.field.two_splitting is Splitting.INERT
        return self.field.d % q != 0 and legendre(-self.field.d, q) == -1

    def prime_descriptor(self) -> OddPrime:
        """The OddPrime this ideal equals (odd primes only)."""
        if not self.is_prime():
            raise ValueError(f"{self} is not prime")
        n = self.norm
        if self.a == self.c:
            return OddPrime(self.a, Splitting.INERT, self.field.d, label=f"({self.a})")
        q = n
        if q % 2 == 0:
            raise ValueError("primes above 2 use PrimeAbove2")
        if self.field.d % q == 0:
            return OddPrime(q, Splitting.RAMIFIED, self.field.d, label=f"q{q}")
        # theta = -b in O_K / m
        if self.field.basis_kind is BasisKind.ONE_AND_SQRT:
            root = -self.b % q
        else:
            root = (-2 * self.b - 1) % q
        return OddPrime(q, Splitting.SPLIT, self.field.d, root, f"m{q}")

    def __str__(self) -> str:
        return f"[{self.a}, {self.b}+{self.c}*theta]"


def _hnf(vectors: list[tuple[int, int]], field: ImagQuadField) -> IdealHNF:
    pivot = None
    flat = []
    for r in vectors:
        if r[1] == 0:
            flat.append(r)
            continue
        if pivot is None:
            pivot = r
            continue
        a, b = pivot, r
        while b[1]:
            q = a[1] // b[1]
            a, b = b, (a[0] - q * b[0], a[1] - q * b[1])
        pivot = a
        flat.append(b)
    a = 0
    for r in flat:
        a = gcd(a, r[0])
    if pivot is None or a == 0:
        raise ValueError("generators do not span a full-rank lattice")
    if pivot[1] < 0:
        pivot = (-pivot[0], -pivot[1])
    return IdealHNF(a, pivot[0] % a, pivot[1], field)


def gcd_ideal(elements: list[Element]) -> IdealHNF:
    """HNF of the ideal a_1 O_K + ... + a_n O_K."""
    if not elements or all(z.is_zero() for z in elements):
        raise AllZero("all generators are zero")
    field = elements[0].field
    vecs = []
    for z in elements:
        u, w = _theta_coords(z)
        vecs.append((u, w))
        vecs.append(_times_theta(u, w, field))
    ideal = _hnf(vecs, field)
    assert ideal.is_closed(), ideal
    return ideal


def principal_ideal(z: Element) -> IdealHNF:
    return gcd_ideal([z])


# -- the sets S, T, U ---------------------------------------------------------

@dataclass(frozen=True)
class PrimeSets:
    S: tuple
    T: tuple
    U: tuple
    odd_primes: tuple[int, ...]


def u_set(field: ImagQuadField, odd_radical: int) -> PrimeSets:
    if odd_radical < 1:
        raise ValueError("radical must be positive")
    if odd_radical % 2 == 0:
        raise EvenRadical(f"radical {odd_radical} is even; A, B, C must be odd")
    T = tuple(primes_above_2(field))
    U = tuple(P for P in T if P.in_U)
    odd = tuple(arith.prime_factors(odd_radical)) if odd_radical > 1 else ()
    S = T + tuple(Q for q in odd for Q in primes_above_odd(field, q))
    return PrimeSets(S, T, U, odd)
