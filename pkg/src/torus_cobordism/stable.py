"""Bounds for the stable 4-genus on the span of two torus knots.

A point (x, y) of Q^2 stands for x T(a, b) + y T(c, d) in the rationalized
concordance group.  Negative coefficients mean mirror images, with
sigma(-K) = -sigma(K) and chi(-K) = chi(K).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
import csv
import io
import json

from .bounds import merged_grid
from .links import DomainError, as_link, chi, genus4
from .planner import best_upper
from .signature import profile

BALL_SCHEMA = "torus-ball/1"


def gst_axis(link):
    """Stable 4-genus (p-1)(q-1)/2 of a positive torus knot."""
    return genus4(link)


@dataclass(frozen=True)
class PairSpanPoint:
    basis: tuple
    x: Fraction
    y: Fraction

    def __post_init__(self):
        k, l = (as_link(b) for b in self.basis)
        for b in (k, l):
            if not b.is_knot:
                raise DomainError(f"{b} is not a knot")
        object.__setattr__(self, "basis", (k, l))
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def scaled(self, factor):
        factor = Fraction(factor)
        return PairSpanPoint(self.basis, self.x * factor, self.y * factor)

    def primitive(self):
        """(m, n, scale) with (x, y) = scale * (m, n), gcd(m, n) = 1 and scale > 0."""
        if self.x == 0 and self.y == 0:
            return 0, 0, Fraction(0)
        den = lcm(self.x.denominator, self.y.denominator)
        m, n = int(self.x * den), int(self.y * den)
        g = gcd(m, n)
        return m // g, n // g, Fraction(g, den)


@dataclass(frozen=True)
class NormBounds:
    point: PairSpanPoint
    lower: Fraction
    upper: Fraction


@lru_cache(maxsize=256)
def _cobordism_genus(k, l, budget):
    plan = best_upper(k.p, k.q, l.p, l.q, budget)
    # cost is |chi| of a cobordism between knots, hence even
    return Fraction(plan.total_cost, 2), plan.exhaustive


def _upper_integral(m, n, gk, gl, g_cob):
    if m == 0 or n == 0 or (m > 0) == (n > 0):
        return abs(m) * gk + abs(n) * gl
    g_cob = min(g_cob, gk + gl)
    shared = min(abs(m), abs(n))
    return shared * g_cob + (abs(m) - shared) * gk + (abs(n) - shared) * gl


def norm_upper(pt, budget=None, *, with_flag=False):
    """Upper bound from sub-additivity and the best cobordism between the basis knots.

    For an integral point with coefficients of opposite sign, min(|m|, |n|)
    copies of K - L are bounded by the genus of a cobordism from K to L and
    the remaining copies by the axis values.  Rational points are reduced to
    a primitive integral direction times a positive scale.
    """
    k, l = pt.basis
    m, n, scale = pt.primitive()
    exhaustive = True
    if scale == 0:
        value = Fraction(0)
    else:
        g_cob = Fraction(0)
        if m and n and (m > 0) != (n > 0):
            g_cob, exhaustive = _cobordism_genus(k, l, budget)
        value = scale * _upper_integral(m, n, gst_axis(k), gst_axis(l), g_cob)
    return (value, exhaustive) if with_flag else value


def norm_lower(pt):
    """Largest available lower bound.

    Two sources: |x sigma_theta(K) + y sigma_theta(L)| / 2 over theta off all
    jump points, and |x (1 - chi(K)) + y (1 - chi(L))| / 2, the value of an
    additive concordance invariant that equals the 4-genus on positive torus
    knots.
    """
    k, l = pt.basis
    x, y = pt.x, pt.y
    if x == 0 and y == 0:
        return Fraction(0)
    chi_bound = abs(x * (1 - chi(k)) + y * (1 - chi(l))) / 2
    pk, pl = profile(k), profile(l)
    grid, jumps = merged_grid(pk, pl)
    sig_bound = Fraction(0)
    for theta in grid:
        if theta in jumps:
            continue
        v = abs(x * pk.value_at(theta) + y * pl.value_at(theta)) / 2
        if v > sig_bound:
            sig_bound = v
    return max(chi_bound, sig_bound)


def norm_bounds(pt, budget=None):
    return NormBounds(pt, norm_lower(pt), norm_upper(pt, budget))


def ball_directions(resolution):
    """``resolution`` evenly spaced points on the boundary of the square max(|x|, |y|) = 1.

    Starts at (1, 0) and runs counter-clockwise; axis directions appear when
    resolution is a multiple of 4, diagonals when it is a multiple of 8.
    """
    if resolution < 4:
        raise DomainError("resolution must be at least 4")
    out = []
    for i in range(resolution):
        s = Fraction(8 * i, resolution)  # arclength along the square from (1, 0)
        if s <= 1:
            out.append((Fraction(1), s))
        elif s <= 3:
            out.append((2 - s, Fraction(1)))
        elif s <= 5:
            out.append((Fraction(-1), 4 - s))
        elif s <= 7:
            out.append((s - 6, Fraction(-1)))
        else:
            out.append((Fraction(1), s - 8))
    return out


@dataclass(frozen=True)
class BallRow:
    direction: tuple
    lower_norm: Fraction
    upper_norm: Fraction

    @property
    def lower_radius(self):
        """Radius of the inner polygon: the ball surely reaches this far; None when unbounded."""
        return None if self.upper_norm == 0 else 1 / self.upper_norm

    @property
    def upper_radius(self):
        """Radius of the outer polygon; None when unbounded."""
        return None if self.lower_norm == 0 else 1 / self.lower_norm


def ball_polygon(basis, resolution=64, budget=None):
    """Inner/outer radius data for the unit ball of the stable 4-genus in the given plane."""
    k, l = (as_link(b) for b in basis)
    rows = []
    for dx, dy in ball_directions(resolution):
        pt = PairSpanPoint((k, l), dx, dy)
        rows.append(BallRow((dx, dy), norm_lower(pt), norm_upper(pt, budget)))
    return rows


def _frac(v):
    return None if v is None else f"{v.numerator}/{v.denominator}"


def ball_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["direction_x", "direction_y", "lower_radius", "upper_radius"])
    for r in rows:
        w.writerow([_frac(r.direction[0]), _frac(r.direction[1]),
                    _frac(r.lower_radius) or "inf", _frac(r.upper_radius) or "inf"])
    return buf.getvalue()


def ball_to_json(rows, basis):
    return json.dumps({
        "schema": BALL_SCHEMA,
        "basis": [as_link(b).as_pair() for b in basis],
        "rows": [
            {"direction_x": _frac(r.direction[0]), "direction_y": _frac(r.direction[1]),
             "lower_radius": _frac(r.lower_radius), "upper_radius": _frac(r.upper_radius)}
            for r in rows
        ],
    })
