"""Torus links T(p, q) and their elementary invariants."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
import re


class DomainError(ValueError):
    """Raised when an operation is called outside its domain."""


@dataclass(frozen=True, order=True)
class TorusLink:
    """The torus link T(p, q), stored with p <= q.

    Build instances through :func:`normalize`; the constructor only
    validates.
    """

    p: int
    q: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise DomainError(f"torus link parameters must be integers, got {self.p!r}, {self.q!r}")
        if self.p < 1 or self.q < 1:
            raise DomainError(f"torus link parameters must be positive, got ({self.p}, {self.q})")
        if self.p > self.q:
            raise DomainError(f"TorusLink expects p <= q, use normalize({self.p}, {self.q})")

    @property
    def component_count(self):
        return gcd(self.p, self.q)

    @property
    def is_knot(self):
        return self.component_count == 1

    @property
    def is_unknot(self):
        return self.p == 1

    @property
    def braid_index(self):
        return self.p

    def same_type(self, other):
        """Link-type equality; every T(1, q) is the unknot."""
        return self == other or (self.is_unknot and other.is_unknot)

    def as_pair(self):
        return [self.p, self.q]

    def __str__(self):
        return f"T({self.p},{self.q})"


def normalize(p, q):
    """Return T(p, q) with the smaller parameter first."""
    if isinstance(p, bool) or isinstance(q, bool):
        raise DomainError("torus link parameters must be integers")
    p, q = int(p), int(q)
    if p < 1 or q < 1:
        raise DomainError(f"torus link parameters must be positive, got ({p}, {q})")
    return TorusLink(min(p, q), max(p, q))


def as_link(obj):
    """Accept a TorusLink or a (p, q) pair."""
    if isinstance(obj, TorusLink):
        return obj
    p, q = obj
    return normalize(p, q)


def chi(link):
    """Maximal Euler characteristic -pq + p + q of a surface in the 4-ball."""
    link = as_link(link)
    return -link.p * link.q + link.p + link.q


def genus4(link):
    """Smooth 4-genus (p-1)(q-1)/2 of a torus knot."""
    link = as_link(link)
    if not link.is_knot:
        raise DomainError(f"{link} has {link.component_count} components; 4-genus is defined for knots")
    return Fraction((link.p - 1) * (link.q - 1), 2)


_FRACTION_RE = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")


def as_theta(value):
    """Coerce ``value`` to an exact rational strictly between 0 and 1.

    Strings must have the form ``NUM/DEN``; decimals and floats are rejected
    so that no rounding enters the classification paths.
    """
    if isinstance(value, Fraction):
        theta = value
    elif isinstance(value, str):
        m = _FRACTION_RE.match(value)
        if m is None:
            raise DomainError(f"theta must be an exact fraction NUM/DEN, got {value!r}")
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise DomainError("theta denominator must be positive")
        theta = Fraction(num, den)
    elif isinstance(value, tuple) and len(value) == 2:
        theta = Fraction(int(value[0]), int(value[1]))
    elif isinstance(value, int) and not isinstance(value, bool):
        theta = Fraction(value)
    else:
        raise DomainError(f"theta must be a Fraction, 'NUM/DEN' or (num, den), got {type(value).__name__}")
    if not 0 < theta < 1:
        raise DomainError(f"theta must lie strictly between 0 and 1, got {theta}")
    return theta
