from fractions import Fraction
from math import gcd
import csv
import io
import json

import pytest
from hypothesis import assume, given, settings, strategies as st

from torus_cobordism.links import DomainError, normalize
from torus_cobordism.stable import (
    PairSpanPoint, ball_directions, ball_polygon, ball_to_csv, ball_to_json, gst_axis, norm_bounds,
    norm_lower, norm_upper,
)

BASIS = (normalize(5, 8), normalize(4, 11))
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=7)


def test_axis_values():
    assert gst_axis(normalize(5, 8)) == 14
    assert gst_axis(normalize(4, 11)) == 15


def test_worked_example_diagonal():
    pt = PairSpanPoint(BASIS, 1, -1)
    assert norm_upper(pt) <= 2
    assert norm_lower(pt) >= 1
    # sup |sigma difference| = 4 pins the diagonal exactly
    assert norm_lower(pt) == norm_upper(pt) == 2


def test_flat_ball_shape():
    rows = {r.direction: r for r in ball_polygon(BASIS, 8)}
    assert rows[(1, 0)].lower_radius == rows[(1, 0)].upper_radius == Fraction(1, 14)
    assert rows[(0, 1)].lower_radius == rows[(0, 1)].upper_radius == Fraction(1, 15)
    diag = rows[(1, -1)]
    assert diag.lower_radius >= Fraction(1, 2)
    assert diag.lower_radius > 5 * rows[(1, 1)].upper_radius


def test_non_knot_basis_rejected():
    with pytest.raises(DomainError):
        PairSpanPoint((normalize(2, 4), normalize(2, 3)), 1, 1)


def test_zero_point():
    pt = PairSpanPoint(BASIS, 0, 0)
    assert norm_lower(pt) == norm_upper(pt) == 0


def test_axis_consistency():
    knots = [normalize(p, q) for p in range(1, 13) for q in range(p, 13) if gcd(p, q) == 1]
    for i, k in enumerate(knots):
        l = knots[(7 * i + 3) % len(knots)]
        for x, y, g in ((1, 0, gst_axis(k)), (-1, 0, gst_axis(k)), (0, 1, gst_axis(l)), (0, -1, gst_axis(l))):
            pt = PairSpanPoint((k, l), x, y)
            assert norm_upper(pt) == norm_lower(pt) == g


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=9))
def test_homogeneity(x, y, lam):
    pt = PairSpanPoint(BASIS, x, y)
    assert norm_upper(pt.scaled(lam)) == lam * norm_upper(pt)
    assert norm_lower(pt.scaled(lam)) == lam * norm_lower(pt)
    b = norm_bounds(pt)
    assert 0 <= b.lower <= b.upper


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, rationals, rationals)
def test_upper_subadditive(x1, y1, x2, y2):
    p1, p2 = PairSpanPoint(BASIS, x1, y1), PairSpanPoint(BASIS, x2, y2)
    total = PairSpanPoint(BASIS, x1 + x2, y1 + y2)
    assert norm_upper(total) <= norm_upper(p1) + norm_upper(p2)


def test_mixed_signs_other_basis():
    pt = PairSpanPoint((normalize(2, 3), normalize(2, 5)), 2, -1)
    # on (1/6, 3/10) both signatures are -2, so |2(-2) - (-2)| / 2 = 1;
    # upper: one cobordism T(2,3) -> T(2,5) of genus 1 plus one T(2,3) of genus 1
    assert norm_lower(pt) == 1
    assert norm_upper(pt) == 2


def test_directions():
    dirs = ball_directions(8)
    assert dirs[0] == (1, 0) and dirs[2] == (0, 1) and dirs[6] == (0, -1)
    assert all(max(abs(x), abs(y)) == 1 for x, y in ball_directions(36))
    with pytest.raises(DomainError):
        ball_directions(3)


def test_csv_and_json_output():
    rows = ball_polygon((normalize(2, 3), normalize(2, 5)), 4)
    table = list(csv.DictReader(io.StringIO(ball_to_csv(rows))))
    assert [r["direction_x"] for r in table] == ["1/1", "0/1", "-1/1", "0/1"]
    for r in table:
        assert Fraction(r["lower_radius"]) <= Fraction(r["upper_radius"])
    doc = json.loads(ball_to_json(rows, (normalize(2, 3), normalize(2, 5))))
    assert doc["schema"] == "torus-ball/1"
    assert len(doc["rows"]) == 4
