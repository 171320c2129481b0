from fractions import Fraction

import numpy as np
import pytest

from torus_cobordism.links import DomainError, normalize
from torus_cobordism.seifert import (
    AmbiguousSignature, hermitian_form, oracle_signature, oracle_thetas, seifert_matrix_torus,
)
from torus_cobordism.signature import lattice_hits, signature_at


def test_trefoil_matrix_and_calibration():
    m = seifert_matrix_torus(2, 3)
    assert m.entries.tolist() == [[-1, 1], [0, -1]]
    assert oracle_signature(m, Fraction(1, 2)) == -2


@pytest.mark.parametrize("p,q", [(2, 3), (3, 4), (3, 5), (4, 7), (5, 8), (2, 6), (6, 8)])
def test_matrix_size_is_first_betti_number(p, q):
    assert seifert_matrix_torus(p, q).size == (p - 1) * (q - 1)


def test_alexander_polynomial_from_matrix():
    # det(t M - M^T) is +-t^k times the Alexander polynomial; check T(2,3) and T(3,4) at t = 2
    for p, q, delta in [(2, 3, lambda t: t * t - t + 1), (3, 4, lambda t: t**6 - t**5 + t**3 - t + 1)]:
        m = seifert_matrix_torus(p, q).entries.astype(float)
        val = np.linalg.det(2 * m - m.T)
        ratio = val / delta(2)
        assert abs(abs(ratio) - 2 ** round(np.log2(abs(ratio)))) < 1e-6


def test_form_is_hermitian():
    h = hermitian_form(seifert_matrix_torus(4, 5), Fraction(7, 60))
    assert np.allclose(h, h.conj().T)


def test_rejects_at_alexander_root():
    with pytest.raises(AmbiguousSignature):
        oracle_signature(seifert_matrix_torus(2, 3), Fraction(1, 6))


def test_domain():
    with pytest.raises(DomainError):
        seifert_matrix_torus(3, 9)
    with pytest.raises(DomainError):
        seifert_matrix_torus(1, 4)


def test_oracle_agrees_on_small_grid():
    for p in range(2, 6):
        for q in range(p, 7):
            m = seifert_matrix_torus(p, q)
            for theta in oracle_thetas(24):
                if lattice_hits(normalize(p, q), theta):
                    continue
                assert oracle_signature(m, theta) == signature_at(normalize(p, q), theta)
