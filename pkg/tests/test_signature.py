from fractions import Fraction
from math import gcd, lcm
import json
import threading

import pytest
from hypothesis import given, settings, strategies as st

from torus_cobordism.links import DomainError, normalize
from torus_cobordism.seifert import oracle_signature, seifert_matrix_torus
from torus_cobordism.signature import (
    LatticeSpectrum, ProfileCache, SignatureProfile, classical_signature, compute_profile, epsilon,
    glm_signature, lattice_hits, profile, sigma_chi_limit, signature_at, slope_sequence,
)

HALF = Fraction(1, 2)


def _brute_force_signature(p, q, theta):
    # float-free restatement straight from the lattice sum, one Fraction per term
    total = 0
    for x in range(1, q):
        for y in range(1, p):
            s = (theta + Fraction(x, q) + Fraction(y, p)) % 2
            if s in (0, 1):
                continue
            total += 1 if s < 1 else -1
    return total


@pytest.mark.parametrize("p,q,expected", [(2, 3, -2), (3, 4, -6), (4, 5, -8), (2, 13, -12)])
def test_classical_spot_values(p, q, expected):
    assert signature_at(normalize(p, q), HALF) == expected


@pytest.mark.parametrize("n", range(3, 40, 2))
def test_two_strand_knots(n):
    # T(2, n) is a two-bridge knot with signature -(n - 1)
    assert classical_signature(normalize(2, n)) == -(n - 1)


def test_hopf_link_constant():
    prof = profile(normalize(2, 2))
    assert prof.breakpoints == ()
    assert prof.interval_values == (-1,)
    assert oracle_signature(seifert_matrix_torus(2, 2), Fraction(1, 3)) == -1


def test_unknot_and_degenerate():
    for q in (1, 2, 9):
        link = normalize(1, q)
        assert signature_at(link, Fraction(1, 3)) == 0
        assert profile(link).interval_values == (0,)


def test_trefoil_profile():
    prof = profile(normalize(2, 3))
    assert prof.breakpoints == (Fraction(1, 6), Fraction(5, 6))
    assert prof.interval_values == (0, -2, 0)
    # nullity one at the Alexander roots
    assert prof.breakpoint_values == (-1, -1)


@given(st.integers(1, 9), st.integers(1, 9), st.integers(1, 59))
def test_matches_fraction_brute_force(p, q, k):
    theta = Fraction(k, 60)
    link = normalize(p, q)
    assert signature_at(link, theta) == _brute_force_signature(link.p, link.q, theta)


def test_epsilon_zero_on_integer_sum():
    link = normalize(2, 3)
    assert epsilon(Fraction(1, 6), 1, 1, link) == 0
    assert epsilon(Fraction(1, 6), 2, 1, link) == -1
    assert epsilon(Fraction(1, 12), 1, 1, link) == 1
    with pytest.raises(DomainError):
        epsilon(HALF, 3, 1, link)


def test_lattice_hits_counts_zero_terms():
    link = normalize(2, 3)
    assert lattice_hits(link, Fraction(1, 6)) == 1
    assert lattice_hits(link, Fraction(1, 5)) == 0


def test_spectrum_windowed_count_equals_direct_sum():
    for p in range(1, 9):
        for q in range(p, 11):
            spec = LatticeSpectrum.of(normalize(p, q))
            assert len(spec) == (p - 1) * (q - 1)
            for k in range(1, 24):
                theta = Fraction(k, 24)
                assert spec.signature(theta) == signature_at(normalize(p, q), theta)


def test_rearrangement_equivalence_midpoints():
    for p in range(1, 13):
        for q in range(p, 13):
            link = normalize(p, q)
            prof = compute_profile(link)
            for mid, value in zip(prof.interval_midpoints(), prof.interval_values):
                assert signature_at(link, mid) == value, (p, q, mid)
            for b, value in zip(prof.breakpoints, prof.breakpoint_values):
                assert signature_at(link, b) == value, (p, q, b)


@pytest.mark.parametrize("p,q", [(p, q) for p in range(2, 13) for q in range(p, 25) if gcd(p, q) == 1])
def test_knot_breakpoints_are_alexander_roots(p, q):
    # roots of (t^pq - 1)(t - 1)/((t^p - 1)(t^q - 1)) on the circle
    expected = tuple(Fraction(j, p * q) for j in range(1, p * q) if j % p and j % q)
    assert profile(normalize(p, q)).breakpoints == expected


def test_links_start_at_minus_components_minus_one():
    # a d-component torus link has sigma = -(d - 1) near omega = 1, jumping first at 1/lcm
    for p in range(2, 13):
        for q in range(p, 13):
            g = gcd(p, q)
            prof = profile(normalize(p, q))
            assert prof.interval_values[0] == -(g - 1)
            if prof.breakpoints:
                assert prof.breakpoints[0] == Fraction(1, lcm(p, q))


@settings(max_examples=60)
@given(st.integers(1, 11), st.integers(1, 11), st.integers(1, 99))
def test_symmetry(p, q, k):
    theta = Fraction(k, 100)
    assert signature_at(normalize(p, q), theta) == signature_at(normalize(q, p), 1 - theta)
    prof = profile(normalize(p, q))
    assert prof.interval_values == prof.interval_values[::-1]
    assert prof.breakpoints == tuple(1 - b for b in reversed(prof.breakpoints))


def test_glm_consistency():
    for p in range(2, 11):
        for q in range(1, 61):
            assert glm_signature(p, q) == classical_signature(normalize(p, q)), (p, q)


def test_glm_rejects_single_strand():
    with pytest.raises(DomainError):
        glm_signature(1, 5)


def test_slope_sequence_examples():
    assert list(slope_sequence(2)) == [-1]
    assert list(slope_sequence(3)) == [Fraction(-4, 3), 0]
    assert list(slope_sequence(4)) == [Fraction(-3, 2), Fraction(-1, 2)]
    assert sigma_chi_limit(4) == Fraction(2, 3)
    assert sigma_chi_limit(2) == 1


def test_profile_value_at_and_round_trips():
    prof = profile(normalize(4, 6))
    assert SignatureProfile.from_dict(json.loads(prof.to_json())) == prof
    assert SignatureProfile.from_text(prof.link, prof.to_text()) == prof
    for theta in (Fraction(1, 24), Fraction(1, 12), Fraction(1, 2), Fraction(11, 12)):
        assert prof.value_at(theta) == signature_at(prof.link, theta)
    rows = prof.to_csv().splitlines()
    assert rows[0] == "theta_numerator,theta_denominator,value,kind"
    assert len(rows) == 1 + len(prof.breakpoints) + len(prof.interval_values)


def test_cache_get_or_compute_is_atomic(tmp_path, monkeypatch):
    import torus_cobordism.signature as sig
    calls = []
    real = sig.compute_profile

    def counting(link):
        calls.append(link)
        return real(link)

    monkeypatch.setattr(sig, "compute_profile", counting)
    cache = ProfileCache()
    results = []
    threads = [threading.Thread(target=lambda: results.append(cache.get(normalize(7, 9)))) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(calls) == 1
    assert all(r is results[0] for r in results)


def test_cache_directory_persists(tmp_path):
    cache = ProfileCache(str(tmp_path))
    prof = cache.get(normalize(6, 9))
    path = tmp_path / "T_6_9.txt"
    assert path.exists()
    assert ProfileCache(str(tmp_path)).get(normalize(9, 6)) == prof
