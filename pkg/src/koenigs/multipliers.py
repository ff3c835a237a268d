"""Multiplier arithmetic: classification, small divisors, Bruno sums.

The small divisors of a multiplier lambda are omega_n = |lambda^n - 1|
together with their running minima Omega_n.  On the unit circle these
quantities control the homological divisors |lambda^m - lambda| =
omega_{m-1}, and the summability of 2^{-k} log(1/Omega_{2^k}) (the Bruno
sum) decides whether the quadratic linearization scheme certifies a
positive radius.

Power tables are accumulated by repeated multiplication, renormalizing the
modulus every 2**10 steps when the multiplier lies on the circle, so that
modulus drift cannot corrupt omega_n at large n.  The running minima at the
dyadic positions 2^k needed by Bruno sums are instead computed from an
exactly reduced phase: positions up to 2^30 are far beyond what repeated
multiplication keeps accurate, while n * theta mod 1 can be evaluated with
about 1e-16 absolute phase error by splitting theta into a high part whose
products are exact doubles and a small remainder.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import RootOfUnityDivisor

__all__ = [
    "Multiplier",
    "SmallDivisorTable",
    "BrunoEstimate",
    "DiophantineReport",
    "OmegaPowers",
    "classify",
    "small_divisors",
    "bruno_sum",
    "diophantine_check",
    "multiplier_from_angle",
    "omega_power_minima",
]

ZERO = "zero"
HYPERBOLIC = "hyperbolic"
ELLIPTIC = "elliptic"
ROOT_OF_UNITY = "root_of_unity"

DEFAULT_TOL = 1e-12
DEFAULT_CLASSIFY_HORIZON = 1 << 16
DEFAULT_OMEGA_HORIZON = 1 << 26

_RENORM_EVERY = 1 << 10
_CIRCLE_TOL = 1e-9
_CHUNK = 1 << 21


def multiplier_from_angle(theta: float) -> complex:
    """exp(2 pi i theta) with theta measured in turns.

    Quarter turns are folded out exactly, so rational angles with
    denominator four produce exact values (theta = 1/4 gives exactly i).
    """
    t = float(theta) % 1.0
    quadrant, u = divmod(4.0 * t, 1.0)
    a = 0.5 * math.pi * u
    c, s = math.cos(a), math.sin(a)
    q = int(quadrant) % 4
    if q == 0:
        return complex(c, s)
    if q == 1:
        return complex(-s, c)
    if q == 2:
        return complex(-c, -s)
    return complex(s, -c)


@dataclass(frozen=True)
class Multiplier:
    """A multiplier value together with its classification."""

    value: complex
    kind: str
    period: int | None = None

    @property
    def is_elliptic(self) -> bool:
        return self.kind == ELLIPTIC

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind == HYPERBOLIC

    def describe(self) -> str:
        if self.kind == ROOT_OF_UNITY:
            return f"root of unity of period {self.period}"
        return self.kind


def _power_blocks(lam: complex, n_max: int, renormalize: bool):
    """Yield (n_start, powers) blocks of lam^n for n = n_start..n_start+len-1.

    Powers accumulate by repeated multiplication; the carry is renormalized
    to unit modulus at every block boundary when requested.
    """
    block = min(_RENORM_EVERY, n_max)
    base = np.cumprod(np.full(block, complex(lam)))
    done = 0
    carry = 1.0 + 0.0j
    while done < n_max:
        m = min(block, n_max - done)
        powers = carry * base[:m]
        yield done + 1, powers
        carry = powers[-1]
        if renormalize:
            carry /= abs(carry)
        done += m


def classify(lam: complex, n_max: int = DEFAULT_CLASSIFY_HORIZON,
             tol: float = DEFAULT_TOL) -> Multiplier:
    """Classify a multiplier as zero, hyperbolic, root of unity or elliptic.

    Root-of-unity detection scans |lambda^n - 1| <= tol for n <= n_max and
    reports the smallest such period; elliptic is the fall-through for
    unit-modulus multipliers with no detected period.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    lam = complex(lam)
    if abs(lam) <= tol:
        return Multiplier(lam, ZERO)
    if abs(abs(lam) - 1.0) > tol:
        return Multiplier(lam, HYPERBOLIC)
    for n_start, powers in _power_blocks(lam, n_max, renormalize=True):
        hits = np.nonzero(np.abs(powers - 1.0) <= tol)[0]
        if hits.size:
            return Multiplier(lam, ROOT_OF_UNITY, period=n_start + int(hits[0]))
    return Multiplier(lam, ELLIPTIC)


@dataclass(frozen=True, eq=False)
class SmallDivisorTable:
    """omega_n = |lambda^n - 1| and running minima Omega_n for n = 1..n_max."""

    lam: complex
    n_max: int
    omega: np.ndarray
    Omega: np.ndarray

    def omega_at(self, n: int) -> float:
        return float(self.omega[n - 1])

    def Omega_at(self, n: int) -> float:
        return float(self.Omega[n - 1])

    def to_csv_text(self) -> str:
        lines = ["n,omega,Omega"]
        for i in range(self.n_max):
            lines.append("%d,%s,%s" % (
                i + 1, format(self.omega[i], ".17g"), format(self.Omega[i], ".17g")))
        return "\n".join(lines) + "\n"


def small_divisors(lam: complex, n_max: int) -> SmallDivisorTable:
    """Tabulate omega_n and Omega_n for n = 1..n_max.

    Meaningful on the unit circle, where all entries lie in [0, 2]; allowed
    off the circle for diagnostics, in which case no clamping or modulus
    renormalization is applied.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    lam = complex(lam)
    on_circle = abs(abs(lam) - 1.0) <= _CIRCLE_TOL
    parts = []
    for _, powers in _power_blocks(lam, n_max, renormalize=on_circle):
        w = np.abs(powers - 1.0)
        if on_circle:
            np.clip(w, 0.0, 2.0, out=w)
        parts.append(w)
    omega = np.concatenate(parts)
    Omega = np.minimum.accumulate(omega)
    omega.setflags(write=False)
    Omega.setflags(write=False)
    return SmallDivisorTable(lam=lam, n_max=int(n_max), omega=omega, Omega=Omega)


# -- running minima at dyadic positions -------------------------------------


@dataclass(frozen=True)
class OmegaPowers:
    """Omega_{2^k} for k = 1..K, possibly saturated beyond the scan horizon.

    ``saturated_from`` is the smallest k whose value reuses the running
    minimum at the horizon instead of a literal scan; since Omega is
    non-increasing, saturated entries are upper bounds for the true values.
    """

    K: int
    values: np.ndarray
    horizon: int
    saturated_from: int | None = None

    def value_at(self, k: int) -> float:
        return float(self.values[k - 1])


@functools.lru_cache(maxsize=16)
def _dyadic_minima(lam: complex, jmax: int) -> tuple[float, ...]:
    """Running minima of omega at n = 2^1, ..., 2^jmax via exact phase splits."""
    theta = math.atan2(lam.imag, lam.real) / (2.0 * math.pi) % 1.0
    bits = max(1, 52 - jmax)
    th_hi = math.ldexp(round(math.ldexp(theta, bits)), -bits)
    th_lo = theta - th_hi
    run = math.inf
    out = []
    n0 = 1
    for j in range(1, jmax + 1):
        end = 1 << j
        while n0 <= end:
            stop = min(end, n0 + _CHUNK - 1)
            nn = np.arange(n0, stop + 1, dtype=np.float64)
            y = nn * th_hi
            y %= 1.0
            y += nn * th_lo
            d = np.abs(y - np.round(y))
            m = float(d.min())
            if m < run:
                run = m
            n0 = stop + 1
        out.append(2.0 * math.sin(math.pi * run))
    return tuple(out)


def omega_power_minima(lam: complex, K: int,
                       horizon: int | None = None) -> OmegaPowers:
    """Omega_{2^k} for k = 1..K, scanning literally up to ``horizon``.

    The default horizon is min(2^K, 2^26).  Entries with 2^k beyond the
    horizon saturate at the horizon's running minimum and are flagged; they
    remain valid upper bounds because Omega is non-increasing, so every
    schedule inequality built from them stays internally consistent.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > _CIRCLE_TOL:
        raise ValueError("dyadic minima are defined for unit-modulus multipliers")
    if horizon is None:
        horizon = min(1 << K, DEFAULT_OMEGA_HORIZON)
    jmax = max(1, int(horizon).bit_length() - 1)
    scanned = _dyadic_minima(lam, min(jmax, K))
    values = list(scanned[:K])
    saturated_from = None
    if K > len(scanned):
        saturated_from = len(scanned) + 1
        values += [scanned[-1]] * (K - len(scanned))
    arr = np.array(values)
    arr.setflags(write=False)
    return OmegaPowers(K=K, values=arr, horizon=1 << min(jmax, K),
                       saturated_from=saturated_from)


@dataclass(frozen=True, eq=False)
class BrunoEstimate:
    """Partial Bruno sum b_K = sum_{k=1..K} 2^{-k} log(1/Omega_{2^k})."""

    K: int
    terms: np.ndarray
    partial_sum: float
    omega_pow2: np.ndarray = field(repr=False)
    horizon: int = 0
    saturated_from: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "K": self.K,
            "terms": [float(t) for t in self.terms],
            "partial_sum": self.partial_sum,
            "horizon": self.horizon,
            "saturated_from": self.saturated_from,
        }


def bruno_sum(lam: complex, K: int, horizon: int | None = None) -> BrunoEstimate:
    """All K terms and the partial sum of the Bruno series of lambda.

    Raises RootOfUnityDivisor when some Omega_{2^k} vanishes, in which case
    the sum diverges by definition.
    """
    po = omega_power_minima(lam, K, horizon)
    zeros = np.nonzero(po.values == 0.0)[0]
    if zeros.size:
        raise RootOfUnityDivisor(
            f"Omega_{{2^{int(zeros[0]) + 1}}} = 0: lambda is a root of unity")
    ks = np.arange(1, K + 1)
    terms = np.ldexp(np.log(1.0 / po.values), -ks)
    partial = math.fsum(terms)
    terms.setflags(write=False)
    return BrunoEstimate(K=K, terms=terms, partial_sum=partial,
                         omega_pow2=po.values, horizon=po.horizon,
                         saturated_from=po.saturated_from)


@dataclass(frozen=True)
class DiophantineReport:
    """Outcome of checking Omega_n >= a n^{-b} over 1 <= n <= n_max."""

    ok: bool
    first_violation: int | None
    a: float
    b: float
    n_max: int


def diophantine_check(lam: complex, a: float, b: float,
                      n_max: int) -> DiophantineReport:
    """Check the polynomial lower bound Omega_n >= a n^{-b} up to n_max."""
    a = float(a)
    b = float(b)
    if a <= 0 or b < 0:
        raise ValueError("need a > 0 and b >= 0")
    table = small_divisors(lam, n_max)
    n = np.arange(1, n_max + 1, dtype=np.float64)
    bad = np.nonzero(table.Omega < a * n ** (-b))[0]
    if bad.size:
        return DiophantineReport(False, int(bad[0]) + 1, a, b, int(n_max))
    return DiophantineReport(True, None, a, b, int(n_max))
