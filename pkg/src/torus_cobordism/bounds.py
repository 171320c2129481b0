"""Lower bounds for the cobordism distance and combined bound reports."""

from dataclasses import dataclass, field
from fractions import Fraction
import json

from .links import as_link, chi, normalize
from .planner import CobordismPlan, best_upper
from .signature import profile

REPORT_SCHEMA = "torus-bounds/1"


def delta_chi(k, l):
    return abs(chi(k) - chi(l))


def merged_grid(*profiles):
    """Breakpoints of all profiles plus one midpoint per open interval, ascending."""
    pts = sorted(set().union(*(p.breakpoints for p in profiles)))
    edges = [Fraction(0)] + pts + [Fraction(1)]
    mids = [(a + b) / 2 for a, b in zip(edges, edges[1:])]
    grid = []
    for i, m in enumerate(mids):
        grid.append(m)
        if i < len(pts):
            grid.append(pts[i])
    return grid, set(pts)


def delta_sigma_sup(k, l):
    """sup over theta of |sigma_theta(K) - sigma_theta(L)| and the first theta attaining it.

    Both profiles are constant on the open intervals of the merged partition,
    so checking every merged breakpoint and one point per interval is exact.
    """
    pk, pl = profile(as_link(k)), profile(as_link(l))
    grid, _ = merged_grid(pk, pl)
    best, witness = 0, None
    for theta in grid:
        diff = abs(pk.value_at(theta) - pl.value_at(theta))
        if diff > best:
            best, witness = diff, theta
    return best, witness


def tau(k, l):
    return max(delta_chi(k, l), delta_sigma_sup(k, l)[0])


@dataclass(frozen=True)
class BoundReport:
    pair: tuple
    delta_chi: int
    delta_sigma_sup: int
    tau: int
    witness_theta: object
    upper: int
    plan: CobordismPlan
    f_interval: tuple
    gamma_ratio: object
    notes: tuple = field(default=())

    @property
    def lower(self):
        return self.tau

    def to_dict(self):
        w = self.witness_theta
        return {
            "schema": REPORT_SCHEMA,
            "pair": [l.as_pair() for l in self.pair],
            "delta_chi": self.delta_chi,
            "delta_sigma_sup": self.delta_sigma_sup,
            "tau": self.tau,
            "witness_theta": None if w is None else [w.numerator, w.denominator],
            "upper": self.upper,
            "f_interval": list(self.f_interval),
            "gamma_ratio": None if self.gamma_ratio is None else [
                self.gamma_ratio.numerator, self.gamma_ratio.denominator],
            "exhaustive": self.plan.exhaustive,
            "notes": list(self.notes),
            "plan": self.plan.to_dict(),
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        if d.get("schema") != REPORT_SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        w, g = d["witness_theta"], d["gamma_ratio"]
        return cls(
            tuple(normalize(*l) for l in d["pair"]),
            d["delta_chi"], d["delta_sigma_sup"], d["tau"],
            None if w is None else Fraction(*w),
            d["upper"], CobordismPlan.from_dict(d["plan"]),
            tuple(d["f_interval"]),
            None if g is None else Fraction(*g),
            tuple(d["notes"]),
        )


def _case_ii_note(k, l):
    a, c = sorted((k.p, l.p))
    if c < a + 2:
        return None
    d = l.q if l.p == c else k.q
    if d < max(c ** 3, 120 * c ** 2):
        return f"outside the asymptotic range d >= max(c^3, 120c^2) for braid indices ({a},{c})"
    return None


def report(a, b, c, d, budget=None):
    """Lower bound tau, best constructed upper bound and derived quantities for T(a,b), T(c,d)."""
    k, l = normalize(a, b), normalize(c, d)
    dchi = delta_chi(k, l)
    dsig, witness = delta_sigma_sup(k, l)
    t = max(dchi, dsig)
    plan = best_upper(a, b, c, d, budget)
    upper = plan.total_cost
    notes = []
    if not k.is_knot or not l.is_knot:
        notes.append("multi-component link: bounds rely on components being positively linked")
    case_ii = _case_ii_note(k, l)
    if case_ii:
        notes.append(case_ii)
    if not plan.exhaustive:
        notes.append("search budget exhausted: upper bound may not be the best reachable")
    return BoundReport(
        pair=(k, l),
        delta_chi=dchi,
        delta_sigma_sup=dsig,
        tau=t,
        witness_theta=witness,
        upper=upper,
        plan=plan,
        f_interval=(t - dchi, upper - dchi),
        gamma_ratio=Fraction(upper, t) if t > 0 else None,
        notes=tuple(notes),
    )
