"""Levine-Tristram signatures of torus links.

Values follow the lattice-point formula

    sigma_theta(T(p, q)) = sum over 1 <= x < q, 1 <= y < p of eps_theta(x, y)

where eps is +1, -1 or 0 according to whether theta + x/q + y/p reduced
mod 2 lies in (0, 1), in (1, 2) or is an integer.  With this convention
positive torus knots have negative signature, e.g. sigma(T(2, 3)) = -2.
"""

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
import csv
import io
import json
import os
import threading

from .links import DomainError, TorusLink, as_link, as_theta, normalize

PROFILE_SCHEMA = "torus-profile/1"
CACHE_ENV = "TORUS_CACHE_DIR"


def epsilon(theta, x, y, link):
    """Sign of one lattice term, classified with integer arithmetic only."""
    link = as_link(link)
    theta = as_theta(theta)
    p, q = link.p, link.q
    if not (1 <= x <= q - 1 and 1 <= y <= p - 1):
        raise DomainError(f"lattice point ({x}, {y}) outside 1..{q - 1} x 1..{p - 1} for {link}")
    den = lcm(theta.denominator, p, q)
    r = (theta.numerator * (den // theta.denominator) + x * (den // q) + y * (den // p)) % (2 * den)
    if r == 0 or r == den:
        return 0
    return 1 if r < den else -1


def signature_at(link, theta):
    """Direct lattice sum of the signature at omega = exp(2 pi i theta)."""
    link = as_link(link)
    theta = as_theta(theta)
    p, q = link.p, link.q
    den = lcm(theta.denominator, p, q)
    two = 2 * den
    t = theta.numerator * (den // theta.denominator)
    step_x, step_y = den // q, den // p
    total = 0
    for x in range(1, q):
        base = t + x * step_x
        for y in range(1, p):
            r = (base + y * step_y) % two
            if r == 0 or r == den:
                continue
            total += 1 if r < den else -1
    return total


def lattice_hits(link, theta):
    """Number of lattice terms with theta + x/q + y/p an integer (where eps = 0)."""
    link = as_link(link)
    theta = as_theta(theta)
    hits = 0
    for k in (1, 2):
        t = (k - theta) * link.p * link.q
        if t.denominator == 1:
            hits += _spectrum(link).count_of(t.numerator)
    return hits


def classical_signature(link):
    """The signature at omega = -1."""
    return signature_at(link, Fraction(1, 2))


@dataclass(frozen=True)
class LatticeSpectrum:
    """Sorted multiset of x/q + y/p, stored as integer numerators over pq."""

    link: TorusLink
    numerators: tuple

    @classmethod
    def of(cls, link):
        link = as_link(link)
        p, q = link.p, link.q
        nums = sorted(x * p + y * q for x in range(1, q) for y in range(1, p))
        return cls(link, tuple(nums))

    @property
    def denominator(self):
        return self.link.p * self.link.q

    @property
    def values(self):
        d = self.denominator
        return tuple(Fraction(k, d) for k in self.numerators)

    def __len__(self):
        return len(self.numerators)

    def count_of(self, k):
        return bisect_right(self.numerators, k) - bisect_left(self.numerators, k)

    def signature(self, theta):
        """Windowed count: #{s < 1-t} - #{1-t < s < 2-t} + #{s > 2-t}."""
        theta = as_theta(theta)
        scale, d = theta.denominator, self.denominator
        ks = [k * scale for k in self.numerators]
        lo = (scale - theta.numerator) * d
        hi = (2 * scale - theta.numerator) * d
        return _window_count(ks, lo, hi)


_spectra = {}


def _spectrum(link):
    key = (link.p, link.q)
    spec = _spectra.get(key)
    if spec is None:
        spec = _spectra[key] = LatticeSpectrum.of(link)
    return spec


def _window_count(ks, lo, hi):
    n = len(ks)
    inside = bisect_left(ks, hi) - bisect_right(ks, lo)
    return bisect_left(ks, lo) - inside + (n - bisect_right(ks, hi))


@dataclass(frozen=True)
class SignatureProfile:
    """The signature of a torus link as an integer step function of theta.

    ``interval_values[i]`` is the value on the open interval to the left of
    ``breakpoints[i]`` (the last entry covers ``(breakpoints[-1], 1)``);
    ``breakpoint_values[i]`` is the value exactly at ``breakpoints[i]``.
    """

    link: TorusLink
    breakpoints: tuple
    interval_values: tuple
    breakpoint_values: tuple

    def value_at(self, theta):
        theta = as_theta(theta)
        i = bisect_left(self.breakpoints, theta)
        if i < len(self.breakpoints) and self.breakpoints[i] == theta:
            return self.breakpoint_values[i]
        return self.interval_values[i]

    def interval_midpoints(self):
        edges = (Fraction(0),) + self.breakpoints + (Fraction(1),)
        return tuple((a + b) / 2 for a, b in zip(edges, edges[1:]))

    def rows(self):
        """(theta, value, kind) for interval midpoints and breakpoints, ascending."""
        mids = self.interval_midpoints()
        out = []
        for i, v in enumerate(self.interval_values):
            out.append((mids[i], v, "interval"))
            if i < len(self.breakpoints):
                out.append((self.breakpoints[i], self.breakpoint_values[i], "breakpoint"))
        return out

    def to_dict(self):
        return {
            "schema": PROFILE_SCHEMA,
            "link": self.link.as_pair(),
            "breakpoints": [[b.numerator, b.denominator] for b in self.breakpoints],
            "interval_values": list(self.interval_values),
            "breakpoint_values": list(self.breakpoint_values),
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        if data.get("schema") != PROFILE_SCHEMA:
            raise ValueError(f"unsupported profile schema {data.get('schema')!r}")
        return cls(
            normalize(*data["link"]),
            tuple(Fraction(n, d) for n, d in data["breakpoints"]),
            tuple(data["interval_values"]),
            tuple(data["breakpoint_values"]),
        )

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theta_numerator", "theta_denominator", "value", "kind"])
        for theta, value, kind in self.rows():
            w.writerow([theta.numerator, theta.denominator, value, kind])
        return buf.getvalue()

    def to_text(self):
        """Cache-file format: one breakpoint per line, ``num,den,right_value,point_value``.

        A leading ``0,1,v,0`` row carries the value v on the first interval
        (nonzero for multi-component links).
        """
        lines = [f"# {PROFILE_SCHEMA} T({self.link.p},{self.link.q})",
                 f"0,1,{self.interval_values[0]},0"]
        for b, right, point in zip(self.breakpoints, self.interval_values[1:], self.breakpoint_values):
            lines.append(f"{b.numerator},{b.denominator},{right},{point}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, link, text):
        first, bps, rights, points = 0, [], [], []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            num, den, right, point = (int(v) for v in line.split(","))
            if num == 0:
                first = right
                continue
            bps.append(Fraction(num, den))
            rights.append(right)
            points.append(point)
        return cls(as_link(link), tuple(bps), (first,) + tuple(rights), tuple(points))


def compute_profile(link):
    """Build the full step function from the sorted lattice spectrum.

    Candidate breakpoints are j/pq.  All thresholds are compared in units of
    1/(2pq) so midpoints stay integral.
    """
    link = as_link(link)
    spec = LatticeSpectrum.of(link)
    n_den = spec.denominator
    ks2 = [2 * k for k in spec.numerators]

    def value(t2):
        return _window_count(ks2, 2 * n_den - t2, 4 * n_den - t2)

    if not ks2:
        return SignatureProfile(link, (), (0,), ())
    intervals = [value(2 * j + 1) for j in range(n_den)]
    bps, ivals, pvals = [], [intervals[0]], []
    for j in range(1, n_den):
        left, right = intervals[j - 1], intervals[j]
        point = value(2 * j)
        if left != right or point != left:
            bps.append(Fraction(j, n_den))
            pvals.append(point)
            ivals.append(right)
    return SignatureProfile(link, tuple(bps), tuple(ivals), tuple(pvals))


class ProfileCache:
    """Per-process map (p, q) -> SignatureProfile with atomic get-or-compute.

    When ``directory`` is set, profiles are also read from and written to
    text files named ``T_<p>_<q>.txt`` there.
    """

    def __init__(self, directory=None):
        self.directory = directory
        self._data = {}
        self._lock = threading.Lock()
        self._key_locks = {}

    def _path(self, link):
        return os.path.join(self.directory, f"T_{link.p}_{link.q}.txt")

    def get(self, link):
        link = as_link(link)
        key = (link.p, link.q)
        prof = self._data.get(key)
        if prof is not None:
            return prof
        with self._lock:
            key_lock = self._key_locks.setdefault(key, threading.Lock())
        with key_lock:
            prof = self._data.get(key)
            if prof is None:
                prof = self._load(link) or compute_profile(link)
                self._data[key] = prof
        return prof

    def _load(self, link):
        if not self.directory:
            return None
        path = self._path(link)
        if os.path.exists(path):
            with open(path) as fh:
                return SignatureProfile.from_text(link, fh.read())
        prof = compute_profile(link)
        os.makedirs(self.directory, exist_ok=True)
        tmp = f"{path}.{os.getpid()}.tmp"
        with open(tmp, "w") as fh:
            fh.write(prof.to_text())
        os.replace(tmp, path)
        return prof

    def clear(self):
        with self._lock:
            self._data.clear()
            self._key_locks.clear()

    def __len__(self):
        return len(self._data)


_cache = ProfileCache(os.environ.get(CACHE_ENV) or None)


def profile_cache():
    return _cache


def profile(link):
    """Cached :func:`compute_profile`."""
    return _cache.get(link)


def glm_signature(p, q):
    """Classical signature of T(p, q) via the Gordon-Litherland-Murasugi recursion.

    q is reduced by steps of 2p down to 1 <= q' <= 2p; each step adds
    -p**2 + 1 (p odd) or -p**2 (p even).
    """
    if p < 2:
        raise DomainError("glm_signature needs p >= 2")
    if q < 1:
        raise DomainError("glm_signature needs q >= 1")
    steps = (q - 1) // (2 * p)
    base = q - 2 * p * steps
    per_step = -p * p + (1 if p % 2 else 0)
    return classical_signature(normalize(p, base)) + steps * per_step


def slope_sequence(p):
    """Asymptotic change of sigma(T(p, n)) / n across each segment (j/p, (j+1)/p) up to 1/2."""
    if p < 2:
        raise DomainError("slope_sequence needs p >= 2")
    return tuple(Fraction(-2 * (p - 1 - 2 * j), p) for j in range((p + 1) // 2))


def sigma_chi_limit(p):
    """lim sigma(T(p, n)) / chi(T(p, n)) as n grows."""
    if p < 2:
        raise DomainError("sigma_chi_limit needs p >= 2")
    if p % 2:
        return Fraction(p + 1, 2 * p)
    return Fraction(p, 2 * (p - 1))
