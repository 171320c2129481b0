"""Seifert-matrix signature oracle for small torus links.

The fiber surface of the closed positive braid (s_1 ... s_{p-1})^q is built
by Seifert's algorithm: p disks joined by q half-twisted bands in each of the
p-1 columns.  A basis of H_1 is given by the bricks, i.e. pairs of
consecutive bands in one column, ordered row-major over the (q-1) x (p-1)
brick grid.  Linking numbers between a brick and its push-off are

    -1 with itself, +1 with the brick below or to the right,
    -1 with the brick diagonally below-right, 0 otherwise,

which is -(A_{q-1} kron A_{p-1}) with A_k = I - (superdiagonal of ones).
The sign convention is pinned by sigma(T(2, 3)) = -2.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from .links import DomainError, as_theta

ORACLE_MAX = 8
EIGEN_TOL = 2.0 ** -30


class AmbiguousSignature(ArithmeticError):
    """An eigenvalue is too close to zero to read off its sign."""


@dataclass(frozen=True)
class SeifertMatrix:
    p: int
    q: int
    entries: np.ndarray

    @property
    def size(self):
        return self.entries.shape[0]


def _a_block(k):
    return np.eye(k, dtype=np.int64) - np.eye(k, k=1, dtype=np.int64)


def seifert_matrix_torus(p, q):
    """Integer Seifert matrix of the fiber surface of T(p, q), 2 <= p <= q <= 8."""
    if not (2 <= p <= q <= ORACLE_MAX):
        raise DomainError(f"oracle restricted to 2 <= p <= q <= {ORACLE_MAX}, got ({p}, {q})")
    m = -np.kron(_a_block(q - 1), _a_block(p - 1))
    return SeifertMatrix(p, q, m)


def hermitian_form(matrix, theta):
    """(1 - w) M + (1 - conj w) M^T at w = exp(2 pi i theta)."""
    theta = as_theta(theta)
    w = complex(math.cos(2 * math.pi * theta), math.sin(2 * math.pi * theta))
    m = matrix.entries.astype(complex)
    return (1 - w) * m + (1 - w.conjugate()) * m.T


def oracle_signature(matrix, theta):
    """Signature of the Hermitian form; raises AmbiguousSignature near a zero eigenvalue."""
    theta = as_theta(theta)
    if matrix.size == 0:
        return 0
    h = hermitian_form(matrix, theta)
    eig = np.linalg.eigvalsh(h)
    tol = EIGEN_TOL * float(np.abs(h).max()) * matrix.size
    small = np.abs(eig) < tol
    if small.any():
        raise AmbiguousSignature(
            f"{int(small.sum())} eigenvalue(s) of T({matrix.p},{matrix.q}) at theta={theta} below {tol:.3g}"
        )
    return int((eig > 0).sum()) - int((eig < 0).sum())


def oracle_thetas(denominator=60):
    return [Fraction(k, denominator) for k in range(1, denominator)]
