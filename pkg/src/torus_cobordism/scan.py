"""Batch checks of the torus-link claims over parameter ranges.

Each claim expands a range bound into parameter tuples and checks them one
by one.  Cases are split into chunks that may run in worker processes; the
merged result does not depend on the split.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import json
import os
import sys
import time

from .bounds import delta_chi, tau
from .links import chi, normalize
from .planner import best_upper, theorem2_upper
from .seifert import AmbiguousSignature, oracle_signature, oracle_thetas, seifert_matrix_torus
from .signature import (
    classical_signature, lattice_hits, profile, signature_at, sigma_chi_limit, slope_sequence,
)

OK, VIOLATION, REJECTED = "ok", "violation", "rejected"
HALF = Fraction(1, 2)


class UnknownClaim(KeyError):
    pass


@dataclass
class ScanResult:
    claim_id: str
    range: dict
    checked: int = 0
    violations: list = field(default_factory=list)
    rejected: int = 0
    elapsed: float = 0.0

    @property
    def holds(self):
        return not self.violations

    def to_dict(self):
        return {
            "claim_id": self.claim_id,
            "range": self.range,
            "checked": self.checked,
            "violations": [list(v) for v in self.violations],
            "rejected": self.rejected,
            "elapsed": round(self.elapsed, 3),
        }

    def to_json(self):
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    default_max: int
    cases: object
    check: object


def _sig(p, q):
    return classical_signature(normalize(p, q))


# -- predicates ------------------------------------------------------------

def _glm_step(case):
    p, q = case
    step = -p * p + (1 if p % 2 else 0)
    return _sig(p, q + 2 * p) - _sig(p, q) == step


def _lemma1(case):
    # positive torus links have negative signature here, so the linear bound is
    # checked for -sigma; its slope is (p^2 - 1)/2p for odd p and p/2 for even p
    p, q = case
    centre = Fraction(p * q, 2) - (Fraction(q, 2 * p) if p % 2 else 0)
    return abs(-_sig(p, q) - centre) <= p


def _defect(case):
    p, m, n = case
    return abs(_sig(p, m + n) - _sig(p, m) - _sig(p, n)) <= p


def _theorem2(case):
    a, b, c, d = case
    f = theorem2_upper(a, b, c, d).total_cost - delta_chi(normalize(a, b), normalize(c, d))
    return 0 <= f <= 2 * (a + b + c + d)


def _prop1(case):
    a, b, c = case
    target = (b - 1) * abs(c - a)
    k, l = normalize(a * b, c), normalize(a, b * c)
    return delta_chi(k, l) == target and best_upper(a * b, c, a, b * c).total_cost == target


def _remark1(case):
    a, b, c = case
    return abs(chi(normalize(a * b, c)) - chi(normalize(a, b * c))) == abs(a * b + c - a - b * c)


def _family_a(case):
    (n,) = case
    return abs(_sig(2, n * n + 1) - _sig(n + 1, n + 1)) >= Fraction(n * n, 2)


def _family_b(case):
    (n,) = case
    return (_sig(6 * n, 12 * n + 1) == -36 * n * n
            and _sig(6 * n + 1, 12 * n - 1) == -36 * n * n - 4 * n)


def _first_jump(case):
    p, q = case
    prof = profile(normalize(p, q))
    return prof.interval_values[0] == 0 and prof.breakpoints[0] == Fraction(1, p * q)


def _symmetry(case):
    p, q = case
    prof = profile(normalize(p, q))
    n = len(prof.breakpoints)
    return all(
        prof.breakpoints[i] == 1 - prof.breakpoints[n - 1 - i]
        and prof.breakpoint_values[i] == prof.breakpoint_values[n - 1 - i]
        for i in range(n)
    ) and prof.interval_values == prof.interval_values[::-1]


def _oracle(case):
    p, q, k = case
    theta = Fraction(k, 60)
    link = normalize(p, q)
    try:
        value = oracle_signature(seifert_matrix_torus(p, q), theta)
    except AmbiguousSignature:
        return REJECTED
    return value == signature_at(link, theta)


def segment_slope(p, n, j):
    """Change of sigma(T(p, n)) across the inner part of (j/p, (j+1)/p), per n and per segment width."""
    delta = Fraction(1, 2 * n)
    a, b = Fraction(j, p) + delta, Fraction(j + 1, p) - delta
    prof = profile(normalize(p, n))
    return Fraction(prof.value_at(b) - prof.value_at(a)) / (n * p * (b - a))


def _slopes(case):
    p, n, j = case
    return abs(segment_slope(p, n, j) - slope_sequence(p)[j]) <= Fraction(4 * p, n)


def _ratio(case):
    # |sigma + lim*(p-1)n| <= p gives |sigma/chi - lim| <= (p + lim*p)/|chi| <= 2p/|chi|
    p, n = case
    c = chi(normalize(p, n))
    return abs(Fraction(_sig(p, n), c) - sigma_chi_limit(p)) <= Fraction(2 * p, abs(c))


# -- case generators -------------------------------------------------------

def _oracle_cases(m):
    out = []
    for p in range(2, min(m, 8) + 1):
        for q in range(p, min(m, 8) + 1):
            link = normalize(p, q)
            for theta in oracle_thetas(60):
                if lattice_hits(link, theta) == 0:
                    out.append((p, q, theta.numerator * 60 // theta.denominator))
    return out


def _prop1_cases(m):
    cases = {(a, b, c) for a in range(1, m + 1) for b in range(1, m + 1) for c in range(1, m + 1)}
    cases |= {(n, 2, n + 1) for n in range(1, m + 1)}
    return sorted(cases)


CLAIMS = {c.id: c for c in [
    Claim("glm-odd", "sigma(T(p,q+2p)) = sigma(T(p,q)) - p^2 + 1 for odd p <= 10, q <= max", 60,
          lambda m: [(p, q) for p in range(3, 11, 2) for q in range(1, m + 1)], _glm_step),
    Claim("glm-even", "sigma(T(p,q+2p)) = sigma(T(p,q)) - p^2 for even p <= 10, q <= max", 60,
          lambda m: [(p, q) for p in range(2, 11, 2) for q in range(1, m + 1)], _glm_step),
    Claim("lemma1-odd", "|-sigma(T(p,q)) - pq/2 + q/2p| <= p for odd p <= 11, q <= max", 200,
          lambda m: [(p, q) for p in range(3, 12, 2) for q in range(1, m + 1)], _lemma1),
    Claim("lemma1-even", "|-sigma(T(p,q)) - pq/2| <= p for even p <= 12, q <= max", 200,
          lambda m: [(p, q) for p in range(2, 13, 2) for q in range(1, m + 1)], _lemma1),
    Claim("quasimorphism-defect", "|sigma(T(p,m+n)) - sigma(T(p,m)) - sigma(T(p,n))| <= p, p <= 8", 40,
          lambda m: [(p, x, y) for p in range(2, 9) for x in range(1, m + 1) for y in range(1, m + 1)],
          _defect),
    Claim("theorem2-bound", "0 <= cost(theorem2_upper) - |delta chi| <= 2(a+b+c+d)", 30,
          lambda m: [(a, b, c, d) for a in range(1, m + 1) for b in range(1, m + 1)
                     for c in range(1, m + 1) for d in range(1, m + 1)], _theorem2),
    Claim("prop1-exactness", "best_upper(T(ab,c), T(a,bc)) = (b-1)|c-a| = |delta chi|", 10,
          _prop1_cases, _prop1),
    Claim("remark1-identity", "|chi(T(ab,c)) - chi(T(a,bc))| = |ab + c - a - bc|", 20,
          lambda m: [(a, b, c) for a in range(1, m + 1) for b in range(1, m + 1) for c in range(1, m + 1)],
          _remark1),
    Claim("section4-family-a", "|sigma(T(2,n^2+1)) - sigma(T(n+1,n+1))| >= n^2/2 for 4 <= n <= max", 12,
          lambda m: [(n,) for n in range(4, m + 1)], _family_a),
    Claim("section4-family-b", "sigma(T(6n,12n+1)) = -36n^2, sigma(T(6n+1,12n-1)) = -36n^2 - 4n", 6,
          lambda m: [(n,) for n in range(1, m + 1)], _family_b),
    Claim("first-jump", "sigma = 0 on (0, 1/pq) and the first breakpoint is 1/pq, 2 <= p <= q <= max", 20,
          lambda m: [(p, q) for p in range(2, m + 1) for q in range(p, m + 1)], _first_jump),
    Claim("profile-symmetry", "profiles are invariant under theta -> 1 - theta, p <= q <= max", 12,
          lambda m: [(p, q) for p in range(1, m + 1) for q in range(p, m + 1)], _symmetry),
    Claim("oracle-agreement", "lattice formula = Seifert form signature at theta = k/60, p <= q <= 8", 8,
          _oracle_cases, _oracle),
    Claim("slope-limits", "segment slopes of T(p,n), n in {50,100,200}, within 4p/n of the limits", 6,
          lambda m: [(p, n, j) for p in range(2, m + 1) for n in (50, 100, 200)
                     for j in range(len(slope_sequence(p)))], _slopes),
    Claim("ratio-limits", "|sigma/chi(T(p,n)) - limit| <= 2p/|chi| for 2 <= p <= max, 3 <= n <= 200", 8,
          lambda m: [(p, n) for p in range(2, m + 1) for n in range(3, 201)], _ratio),
]}


def _run_chunk(claim_id, chunk):
    check = CLAIMS[claim_id].check
    violations, rejected = [], 0
    for case in chunk:
        outcome = check(case)
        if outcome == REJECTED:
            rejected += 1
        elif not outcome:
            violations.append(tuple(case))
    return violations, rejected


def default_jobs():
    return os.cpu_count() or 1


def run_claim(claim_id, max_param=None, jobs=1, progress=False):
    """Check one registered claim over its range and collect counterexamples."""
    if claim_id not in CLAIMS:
        raise UnknownClaim(claim_id)
    claim = CLAIMS[claim_id]
    bound = claim.default_max if max_param is None else max_param
    started = time.perf_counter()
    cases = claim.cases(bound)
    result = ScanResult(claim_id, {"max": bound})
    result.checked = len(cases)
    jobs = max(1, min(jobs, len(cases) or 1))
    if jobs == 1:
        parts = [_run_chunk(claim_id, cases)]
    else:
        size = -(-len(cases) // (4 * jobs))
        chunks = [cases[i:i + size] for i in range(0, len(cases), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_chunk, [claim_id] * len(chunks), chunks))
    for violations, rejected in parts:
        result.violations.extend(violations)
        result.rejected += rejected
    result.violations.sort()
    result.elapsed = time.perf_counter() - started
    if progress:
        status = "ok" if result.holds else f"{len(result.violations)} violation(s)"
        print(f"[verify] {claim_id}: {result.checked} checked, {status}", file=sys.stderr)
    return result


def run_all(max_param=None, jobs=1, progress=False):
    return [run_claim(cid, max_param, jobs, progress) for cid in CLAIMS]


@dataclass
class ConsistencyResult:
    """tau <= best upper over all unordered pairs of torus links with parameters <= max."""

    max_param: int
    checked: int = 0
    violations: list = field(default_factory=list)
    worst_ratio: Fraction = Fraction(0)
    worst_pair: tuple = None
    non_exhaustive: int = 0
    elapsed: float = 0.0

    @property
    def holds(self):
        return not self.violations


def _consistency_chunk(chunk, budget):
    out = []
    for a, b, c, d in chunk:
        t = tau(normalize(a, b), normalize(c, d))
        plan = best_upper(a, b, c, d, budget)
        out.append(((a, b, c, d), t, plan.total_cost, plan.exhaustive))
    return out


def consistency_scan(max_param=20, jobs=1, budget=None):
    started = time.perf_counter()
    links = [(p, q) for p in range(1, max_param + 1) for q in range(p, max_param + 1)]
    pairs = [k + l for i, k in enumerate(links) for l in links[i:]]
    if jobs <= 1:
        rows = _consistency_chunk(pairs, budget)
    else:
        size = -(-len(pairs) // (8 * jobs))
        chunks = [pairs[i:i + size] for i in range(0, len(pairs), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = [r for part in pool.map(_consistency_chunk, chunks, [budget] * len(chunks)) for r in part]
    res = ConsistencyResult(max_param, len(rows))
    for case, t, upper, exhaustive in sorted(rows):
        if upper < t:
            res.violations.append(case + (t, upper))
        res.non_exhaustive += not exhaustive
        if t > 0 and Fraction(upper, t) > res.worst_ratio:
            res.worst_ratio, res.worst_pair = Fraction(upper, t), case
    res.elapsed = time.perf_counter() - started
    return res

