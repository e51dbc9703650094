"""Verdicts for the asymptotic Fermat criterion over Q(sqrt(-d)).

The criterion holds when every solution of the S-unit equation has some
prime P above 2 of residue degree one with

    max(|v_P(lambda)|, |v_P(mu)|) <= 4 v_P(2).

Solutions are gathered by certificate where one applies, by closed-form
parametrization where the (d, radical) shape allows one, and by a bounded
brute-force scan otherwise.  "Holds" without qualification is only returned
when the gathering step is provably exhaustive.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict

from . import arith
from .errors import ExtraUnits, NotSquarefree
from .quad_field import (PrimeAbove2, Splitting, as_element, legendre, make_field, u_set,
                         val_above_2)
from .sunit import (Certificate, Conclusion, SUnitSolution, brute_force,
                    certificate_norel, certificate_ramified, make_solution, obstruction_chain,
                    param_split2, param_with_q, rational_solutions, s3_images)


class Outcome(str, enum.Enum):
    HOLDS_UNCONDITIONAL = "HoldsUnconditional"
    HOLDS_BOUNDED = "HoldsBounded"
    FAILS = "Fails"
    NOT_APPLICABLE = "NotApplicable"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SearchBounds:
    r_max: int = 64
    s_max: int = 16
    v_max: int = 10**6
    coord_bound: int = 1000
    den_pow2: int = 1
    den_powq: int = 1

    def __post_init__(self):
        for k, v in asdict(self).items():
            if v < (0 if k.startswith("den") else 1):
                raise ValueError(f"bound {k} = {v} must be positive")


@dataclass(frozen=True)
class Verdict:
    d: int
    radical: int
    outcome: Outcome
    threshold: int | None
    bounds: SearchBounds
    method: str
    witness: SUnitSolution | None = None
    t_value: int | None = None
    best_prime: str | None = None
    certificate: Certificate | None = None
    orbits: int = 0
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        out = {
            "d": _num(self.d),
            "radical": _num(self.radical),
            "outcome": self.outcome.value,
            "method": self.method,
            "threshold": self.threshold,
            "bounds": asdict(self.bounds),
            "orbits": self.orbits,
        }
        out["bounds"]["v_max"] = _num(out["bounds"]["v_max"])
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.t_value is not None:
            out["t"] = self.t_value
            out["prime"] = self.best_prime
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _num(n: int):
    """JSON-safe integer: exact ints beyond 64 bits become strings."""
    return n if -2**63 <= n < 2**63 else str(n)


# -- the valuation test -------------------------------------------------------

def max_abs_val(sol: SUnitSolution, P: PrimeAbove2) -> int:
    return max(abs(val_above_2(sol.lam, P)), abs(val_above_2(sol.mu, P)))


def orbit_t(sol: SUnitSolution, U) -> dict[str, int]:
    """t at each P in U, asserted equal on all six orbit members."""
    field = sol.lam.field
    out = {}
    members = [make_solution(as_element(z, field)) for z in s3_images(sol.lam)]
    for P in U:
        ts = {max_abs_val(m, P) for m in members}
        assert len(ts) == 1, (sol.lam, str(P), ts)
        out[str(P)] = ts.pop()
    return out


@dataclass(frozen=True)
class OrbitResult:
    solution: SUnitSolution
    t: dict[str, int]
    # smallest t - 4 v_P(2) over P in U, and the P achieving it
    margin: int
    prime: str
    passes: bool


def evaluate_orbit(sol: SUnitSolution, U) -> OrbitResult:
    ts = orbit_t(sol, U)
    margins = sorted((ts[str(P)] - 4 * P.v_of_2, str(P)) for P in U)
    margin, prime = margins[0]
    return OrbitResult(sol, ts, margin, prime, margin <= 0)


# -- gathering ----------------------------------------------------------------

def _irrelevant(field) -> SUnitSolution:
    return make_solution(as_element(2, field))


def _decide(d, radical, U, sols, bounds, method, exhaustive, cert=None, notes=()) -> Verdict:
    field = make_field(d)
    results = [evaluate_orbit(s, U) for s in [_irrelevant(field), *sols]]
    assert results[0].passes, results[0]
    failing = [r for r in results if not r.passes]
    threshold = {str(P): 4 * P.v_of_2 for P in U}
    if failing:
        worst = max(failing, key=lambda r: (r.margin, r.solution.orbit_id))
        return Verdict(d, radical, Outcome.FAILS, threshold[worst.prime], bounds, method,
                       worst.solution, worst.t[worst.prime], worst.prime, cert, len(results), notes)
    worst = max(results, key=lambda r: (r.margin, r.solution.orbit_id))
    if exhaustive:
        outcome = Outcome.HOLDS_UNCONDITIONAL
    elif method == "brute_force":
        outcome = Outcome.INCONCLUSIVE
    else:
        outcome = Outcome.HOLDS_BOUNDED
    return Verdict(d, radical, outcome, threshold[worst.prime], bounds, method,
                   None, worst.t[worst.prime], worst.prime, cert, len(results), notes)


def check_criterion(d: int, odd_radical: int = 1, bounds: SearchBounds | None = None,
                    force_brute: bool = False) -> Verdict:
    """Decide the criterion for Q(sqrt(-d)) with S the primes above 2 * odd_radical.

    force_brute skips certificates and parametrizations; used to cross-check them.
    """
    bounds = bounds or SearchBounds()
    if d < 1 or not arith.is_squarefree(d):
        raise NotSquarefree(f"d = {d} is not a positive squarefree integer")
    field = make_field(d)
    sets = u_set(field, odd_radical)
    if not sets.U:
        return Verdict(d, odd_radical, Outcome.NOT_APPLICABLE, None, bounds, "no_U")
    if field.extra_units:
        raise ExtraUnits(f"d = {d}: the unit group is larger than +-1")
    U = sets.U
    odd = sets.odd_primes

    if force_brute:
        pass
    elif field.two_splitting is Splitting.SPLIT and not odd:
        cert = obstruction_chain(d)
        if cert.conclusion is Conclusion.NO_RELEVANT:
            sols = param_split2(d, 4)
            return _decide(d, odd_radical, U, sols, bounds, "obstruction_chain", True, cert)
        sols = param_split2(d, bounds.r_max)
        return _decide(d, odd_radical, U, sols, bounds, "param_split2", False, cert)

    elif field.two_splitting is Splitting.RAMIFIED and not odd:
        cert = certificate_ramified(d)
        assert cert.conclusion is Conclusion.NO_RELEVANT, cert
        return _decide(d, odd_radical, U, [], bounds, "ramified_no_relevant", True, cert)

    elif (field.two_splitting is Splitting.RAMIFIED and len(odd) == 1 and d > 2
            and d % odd[0] and legendre(-d, odd[0]) == -1):
        q = odd[0]
        cert = certificate_norel(d, q)
        if cert.conclusion is Conclusion.NO_RELEVANT:
            return _decide(d, odd_radical, U, [], bounds, "norel", True, cert)
        sols = list(param_with_q(d, q, bounds.r_max, bounds.s_max, bounds.v_max))
        sols += rational_solutions(field, odd, 2 * bounds.r_max)
        return _decide(d, odd_radical, U, sols, bounds, "param_with_q", False, cert)

    sols = brute_force(field, odd, bounds.coord_bound, bounds.den_pow2, bounds.den_powq)
    return _decide(d, odd_radical, U, sols.relevant(), bounds, "brute_force", False,
                   notes=(f"box |x|,|y| <= {bounds.coord_bound}",))


# -- scanning -----------------------------------------------------------------

@dataclass(frozen=True)
class ScanRow:
    d: int
    verdict: Verdict | None
    skipped: str | None = None

    def to_row(self) -> dict:
        v = self.verdict
        if v is None:
            return {"d": self.d, "outcome": self.skipped, "t": "", "threshold": "",
                    "certificate_kind": ""}
        return {"d": self.d, "outcome": v.outcome.value,
                "t": "" if v.t_value is None else v.t_value,
                "threshold": "" if v.threshold is None else v.threshold,
                "certificate_kind": v.certificate.kind if v.certificate else ""}


def _scan_one(args) -> ScanRow:
    d, radical, bounds = args
    if not arith.is_squarefree(d):
        return ScanRow(d, None, "NotSquarefree")
    try:
        return ScanRow(d, check_criterion(d, radical, bounds))
    except ExtraUnits:
        return ScanRow(d, None, "ExtraUnits")


def default_jobs() -> int:
    env = os.environ.get("AFLT_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def scan(d_range, odd_radical: int = 1, bounds: SearchBounds | None = None,
         jobs: int | None = None) -> list[ScanRow]:
    """One row per d, ascending; non-squarefree d are marked, not checked."""
    ds = sorted(set(d_range))
    assert ds, "empty range"
    bounds = bounds or SearchBounds()
    jobs = jobs or default_jobs()
    work = [(d, odd_radical, bounds) for d in ds]
    if jobs == 1 or len(ds) < 64:
        return [_scan_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_scan_one, work, chunksize=max(1, len(work) // (4 * jobs))))


__all__ = [
    "Outcome", "SearchBounds", "Verdict", "max_abs_val", "orbit_t", "OrbitResult", "evaluate_orbit",
    "check_criterion", "ScanRow", "scan", "default_jobs",
]
