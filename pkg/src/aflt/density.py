"""Counting squarefree d, the exceptional set C', and Mersenne statistics.

N^sf is the set of squarefree d >= 2.  C' is the set of d in N^sf for
which the split S-unit equation has a relevant solution; these are exactly
the squarefree kernels d of 2^(r+2) - 1 = d v^2, plus the exceptional
exponent pairs (which only contribute d = 7).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from . import arith
from .errors import SNotSquarefree
from .sunit import EXCEPTIONAL_PAIRS


# -- squarefree sieve ------------------------------------------------------

@dataclass(frozen=True)
class SieveTable:
    X: int
    # flags[n] for 0 <= n <= X; flags[0] is False
    flags: np.ndarray = field(repr=False)

    def __getitem__(self, n: int) -> bool:
        return bool(self.flags[n])


def sieve_squarefree(X: int) -> SieveTable:
    assert X >= 2, X
    flags = np.ones(X + 1, dtype=bool)
    flags[0] = False
    for p in arith.primes_below(isqrt(X) + 1):
        flags[p * p::p * p] = False
    return SieveTable(X, flags)


def count_class(r: int, N: int, X: int, table: SieveTable | None = None) -> int:
    """#{d in N^sf : d <= X, d = r (mod N)}; d = 1 is not counted."""
    if table is None or table.X < X:
        table = sieve_squarefree(X)
    start = r % N
    n = int(np.count_nonzero(table.flags[start:X + 1:N]))
    if start == 1 % N and X >= 1:
        n -= 1                                   # drop d = 1
    return n


def landau_estimate(r: int, N: int, X: float) -> float:
    s = gcd(r, N)
    if not arith.is_squarefree(s):
        raise SNotSquarefree(f"gcd({r}, {N}) = {s} is not squarefree")
    coeff = Fraction(arith.totient(N), s * arith.totient(N // s) * N)
    for q in (arith.prime_factors(N) if N > 1 else []):
        coeff /= 1 - Fraction(1, q * q)
    return float(coeff) * 6 / math.pi**2 * X


# -- C' ---------------------------------------------------------------------

@dataclass(frozen=True)
class Provenance:
    r: int
    v: int
    kind: str = "main"              # "main", "alpha" or "exceptional(r1,r2)"


@dataclass
class CPrimeEntry:
    d: int
    sources: list[Provenance]
    complete: bool = True


@dataclass
class CPrimeSet:
    X: int
    r_min: int
    r_max: int
    entries: dict[int, CPrimeEntry]
    # exponents whose 2^(r+2) - 1 could not be factored within budget
    unfactored: list[int]

    def members(self, complete_only: bool = True) -> list[int]:
        return sorted(d for d, e in self.entries.items() if e.complete or not complete_only)

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["d", "r", "v", "complete"])
        for d in sorted(self.entries):
            e = self.entries[d]
            for s in e.sources:
                if s.kind == "main":
                    w.writerow([d, s.r, s.v, int(e.complete)])
        return out.getvalue()


def _kernel(n: int, budget: int) -> tuple[int, int] | None:
    f = arith.factorint(n, budget)
    return arith.squarefree_split(f) if f.complete else None


def enumerate_cprime(X: int, r_max: int = 64, factor_budget: int = arith.DEFAULT_BUDGET,
                     r_min: int = 1) -> CPrimeSet:
    """d <= X with d v^2 = 2^(r+2) - 1 for some r_min <= r <= r_max.

    For 2^(r+2) - 1 = d w^2 the only square divisor leaving a squarefree
    cofactor is the largest one, so each r contributes at most one d.  For
    even r = 2s the factor pair 2^(s+1) +- 1 is coprime, and the product of
    their kernels is checked against the direct kernel.
    """
    assert 1 <= r_min <= r_max, (r_min, r_max)
    entries: dict[int, CPrimeEntry] = {}
    unfactored = []
    for r in range(r_min, r_max + 1):
        n = (1 << (r + 2)) - 1
        split = _kernel(n, factor_budget)
        if split is None:
            unfactored.append(r)
            continue
        d, v = split
        if r % 2 == 0:
            s = r // 2
            a1, a2 = (1 << (s + 1)) + 1, (1 << (s + 1)) - 1
            k1, k2 = _kernel(a1, factor_budget), _kernel(a2, factor_budget)
            if k1 and k2:
                assert k1[0] * k2[0] == d and k1[1] * k2[1] == v, (r, k1, k2, d, v)
        if d < 2 or d > X:
            continue
        assert d * v * v == n and v & 1
        e = entries.setdefault(d, CPrimeEntry(d, []))
        e.sources.append(Provenance(r, v))
        if r % 2 == 0:
            e.sources.append(Provenance(r, v, "alpha"))
    for r1, r2 in EXCEPTIONAL_PAIRS:
        t = (1 << r1) - (1 << r2) + 1
        rest = (1 << (r1 + 2)) - t * t
        split = _kernel(rest, factor_budget) if rest > 0 else None
        if split and 2 <= split[0] <= X:
            d, v = split
            e = entries.setdefault(d, CPrimeEntry(d, []))
            e.sources.append(Provenance(r1, v, f"exceptional({r1},{r2})"))
    # if some exponent was not factored, a d <= X could be missing; flag every entry
    if unfactored:
        for e in entries.values():
            e.complete = False
    return CPrimeSet(X, r_min, r_max, dict(sorted(entries.items())), unfactored)


# -- Mersenne numbers -------------------------------------------------------

@dataclass(frozen=True)
class MersenneStat:
    m: int
    M: int
    omega: int
    fully_factored: bool
    factors: tuple[tuple[int, int], ...]

    @property
    def is_lower_bound(self) -> bool:
        return not self.fully_factored


def mersenne_stat(m: int, factor_budget: int = arith.DEFAULT_BUDGET) -> MersenneStat:
    assert m >= 1, m
    M = (1 << m) - 1
    if M == 1:
        return MersenneStat(m, M, 0, True, ())
    f = arith.factorint(M, factor_budget)
    if f.complete:
        assert f.value() == M
    return MersenneStat(m, M, f.omega, f.complete, tuple(f.factors.items()))


def mersenne_stats(m_max: int, factor_budget: int = arith.DEFAULT_BUDGET) -> list[MersenneStat]:
    return [mersenne_stat(m, factor_budget) for m in range(1, m_max + 1)]


@dataclass(frozen=True)
class Approx2Bound:
    m: int
    h: int
    square: Fraction                # (m / 2^(h/2))^2 = m^2 / 2^h, exact
    value: float                    # m / 2^(h/2)


def bound_approx2(m: int, factor_budget: int = arith.DEFAULT_BUDGET) -> Approx2Bound:
    st = mersenne_stat(m, factor_budget)
    h = st.omega
    return Approx2Bound(m, h, Fraction(m * m, 1 << h), m / 2 ** (h / 2))


def check_h_lower(m: int, factor_budget: int = arith.DEFAULT_BUDGET) -> bool | None:
    """h_m >= 2^omega(m) - 2; None when M_m is not fully factored."""
    st = mersenne_stat(m, factor_budget)
    if not st.fully_factored:
        return None
    w = arith.omega(m) if m > 1 else 0
    return st.omega >= 2**w - 2


def alpha(i: int, s: int) -> int:
    assert i in (1, 2)
    return (1 << (s + 1)) + (1 if i == 1 else -1)


def alpha_congruence(m: int, s1: int, s2: int) -> bool:
    """alpha_{i,s1} = alpha_{i,s2} (mod M_m) for i = 1, 2 whenever s1 = s2 (mod m)."""
    assert (s1 - s2) % m == 0
    M = (1 << m) - 1
    if M == 1:
        return True
    return all((alpha(i, s1) - alpha(i, s2)) % M == 0 for i in (1, 2))


# -- summary ------------------------------------------------------------------

@dataclass(frozen=True)
class DensityReport:
    X: int
    r_max: int
    n_sf: int
    n_sf_3_8: int
    cprime: tuple[int, ...]
    cprime_complete: bool
    delta_C: float
    delta_D: float
    delta_C_ref: float = 1.0
    delta_D_ref: float = 5 / 6
    sf_ratio: float = 0.0
    sf_ratio_ref: float = 6 / math.pi**2

    def to_dict(self) -> dict:
        return {
            "X": self.X, "r_max": self.r_max, "n_sf": self.n_sf, "n_sf_3_8": self.n_sf_3_8,
            "cprime": list(self.cprime), "cprime_count": len(self.cprime),
            "cprime_complete": self.cprime_complete,
            "delta_rel_C": self.delta_C, "delta_rel_C_ref": self.delta_C_ref,
            "delta_rel_D": self.delta_D, "delta_rel_D_ref": self.delta_D_ref,
            "sf_ratio": self.sf_ratio, "sf_ratio_ref": self.sf_ratio_ref,
        }


def density_report(X: int, r_max: int = 64, factor_budget: int = arith.DEFAULT_BUDGET,
                   table: SieveTable | None = None) -> DensityReport:
    assert X >= 100, X
    table = table if table is not None and table.X >= X else sieve_squarefree(X)
    n_sf = count_class(0, 1, X, table)
    n38 = count_class(3, 8, X, table)
    cp = enumerate_cprime(X, r_max, factor_budget)
    members = cp.members()
    outside = [d for d in members if d % 8 != 3]
    return DensityReport(
        X, r_max, n_sf, n38, tuple(members), not cp.unfactored,
        1 - len(members) / n_sf,
        (n_sf - n38 - len(outside)) / n_sf,
        sf_ratio=n_sf / X,
    )
