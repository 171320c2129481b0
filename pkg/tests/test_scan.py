from fractions import Fraction
import json

import pytest

from torus_cobordism.links import normalize
from torus_cobordism.scan import CLAIMS, ScanResult, UnknownClaim, run_claim, segment_slope
from torus_cobordism.signature import classical_signature, glm_signature, slope_sequence


@pytest.mark.parametrize("claim_id", list(CLAIMS))
def test_claim_holds_on_default_range(claim_id):
    result = run_claim(claim_id)
    assert result.checked > 0
    assert result.violations == [], f"{claim_id}: {len(result.violations)} counterexamples, e.g. {result.violations[:5]}"


def test_family_b_examples():
    assert classical_signature(normalize(6, 13)) == -36
    assert classical_signature(normalize(7, 11)) == -40


@pytest.mark.parametrize("n", range(4, 13))
def test_family_a_exact_gap(n):
    # two-bridge: sigma(T(2, n^2 + 1)) = -n^2; T(n+1, n+1) via the recursion
    gap = abs(-n * n - glm_signature(n + 1, n + 1))
    assert gap == abs(classical_signature(normalize(2, n * n + 1)) - classical_signature(normalize(n + 1, n + 1)))
    assert gap == (n - 1) ** 2 // 2
    assert gap < Fraction(n * n, 2)


def test_oracle_claim_has_no_rejections():
    result = run_claim("oracle-agreement")
    assert result.rejected == 0
    assert result.checked > 1000


@pytest.mark.parametrize("claim_id,bound", [("glm-odd", 30), ("quasimorphism-defect", 12),
                                            ("first-jump", 12), ("section4-family-a", 9)])
def test_partition_independent(claim_id, bound):
    one = run_claim(claim_id, bound, jobs=1)
    two = run_claim(claim_id, bound, jobs=2)
    assert (one.checked, one.violations, one.rejected) == (two.checked, two.violations, two.rejected)


def test_violations_sorted_and_serializable():
    r = run_claim("first-jump", 8, jobs=2)
    assert r.violations == sorted(r.violations)
    doc = json.loads(r.to_json())
    assert doc["claim_id"] == "first-jump" and doc["checked"] == r.checked


def test_unknown_claim():
    with pytest.raises(UnknownClaim):
        run_claim("no-such-claim")


def test_final_segment_slopes():
    # odd p ends flat, even p ends at -2/p
    for p in range(2, 7):
        last = len(slope_sequence(p)) - 1
        assert slope_sequence(p)[last] == (0 if p % 2 else Fraction(-2, p))
        assert abs(segment_slope(p, 200, last) - slope_sequence(p)[last]) <= Fraction(4 * p, 200)


def test_scan_result_holds():
    assert ScanResult("x", {}).holds
    assert not ScanResult("x", {}, violations=[(1,)]).holds


def test_consistency_scan_small_and_partition_independent():
    from torus_cobordism.scan import consistency_scan
    one, two = consistency_scan(7, jobs=1), consistency_scan(7, jobs=2)
    assert one.holds and one.checked == 28 * 29 // 2
    assert (one.violations, one.worst_ratio, one.worst_pair) == (two.violations, two.worst_ratio, two.worst_pair)
