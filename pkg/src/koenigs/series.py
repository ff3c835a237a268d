"""Dense truncated complex power series with exact order bookkeeping.

A series is stored as its truncation to some degree N together with a
certified vanishing order: the guarantee that every coefficient below that
order is exactly the zero double, not merely small.  All operations
propagate both pieces of information, and coefficients implied to vanish by
the propagated order are stored as exact zeros, never as round-off residue.
That exactness is load bearing: the iteration counts of the inversion and
linearization routines are driven by the order bookkeeping.

Every value is immutable after construction and every operation is a pure
function, so series may be shared freely between threads or processes.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeOutOfRange, MajorantOverflow, OrderClaimViolated

__all__ = [
    "TruncatedSeries",
    "MajorantSeries",
    "make_series",
    "cauchy_product",
    "truncate",
    "majorant",
    "zero",
    "identity",
    "monomial",
]


def _as_complex_array(coeffs: Iterable[complex]) -> np.ndarray:
    c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                 dtype=np.complex128)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("coefficients must form a nonempty one-dimensional sequence")
    if not np.all(np.isfinite(c)):
        raise ValueError("coefficients must be finite")
    return c


class TruncatedSeries:
    """Truncation [f]_N of a complex power series, plus a certified order.

    ``coeffs[i]`` is the coefficient of z^i for ``i = 0..trunc_order``.  The
    ``order`` attribute certifies that all coefficients with index strictly
    below it are exactly zero; ``order == trunc_order + 1`` encodes the zero
    truncation.
    """

    __slots__ = ("_c", "_order")

    def __init__(self, coeffs: Iterable[complex], order_bound: int = 0):
        c = _as_complex_array(coeffs)
        if not 0 <= order_bound <= len(c):
            raise OrderClaimViolated(
                f"order claim {order_bound} outside 0..{len(c)}")
        bad = np.nonzero(c[:order_bound])[0]
        if bad.size:
            raise OrderClaimViolated(
                f"coefficient of degree {bad[0]} is nonzero but the order "
                f"claim is {order_bound}")
        c.setflags(write=False)
        self._c = c
        self._order = int(order_bound)

    @classmethod
    def _certified(cls, c: np.ndarray, order: int) -> "TruncatedSeries":
        # Trusted path for results of internal operations: coefficients below
        # the propagated order are forced to exact zero instead of validated.
        order = min(int(order), len(c))
        c[:order] = 0.0
        obj = object.__new__(cls)
        c.setflags(write=False)
        obj._c = c
        obj._order = order
        return obj

    # -- basic views ---------------------------------------------------

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array of length ``trunc_order + 1``."""
        return self._c

    @property
    def trunc_order(self) -> int:
        return len(self._c) - 1

    @property
    def order(self) -> int:
        """Certified vanishing order (structural, never a numerical scan)."""
        return self._order

    def __len__(self) -> int:
        return len(self._c)

    def __repr__(self) -> str:
        head = np.array2string(self._c[: min(len(self._c), 6)], precision=6)
        return (f"TruncatedSeries(N={self.trunc_order}, order={self._order}, "
                f"coeffs={head}{'...' if len(self._c) > 6 else ''})")

    # -- structure -----------------------------------------------------

    def truncate(self, degree: int) -> "TruncatedSeries":
        """Return [f]_degree.  The order bound is preserved, capped at degree+1."""
        if not 0 <= degree <= self.trunc_order:
            raise DegreeOutOfRange(
                f"degree {degree} outside 0..{self.trunc_order}")
        return TruncatedSeries._certified(
            self._c[: degree + 1].copy(), min(self._order, degree + 1))

    def extended(self, trunc_order: int) -> "TruncatedSeries":
        """Extend with exact zero coefficients up to ``trunc_order``.

        Valid when the stored coefficients are regarded as a polynomial that
        really ends at the current degree (e.g. a stage polynomial), in which
        case the added zeros are exact.
        """
        if trunc_order < self.trunc_order:
            raise DegreeOutOfRange("extension must not drop coefficients")
        c = np.zeros(trunc_order + 1, dtype=np.complex128)
        c[: len(self._c)] = self._c
        return TruncatedSeries._certified(c, self._order)

    def majorant(self) -> "MajorantSeries":
        """Series of coefficient moduli, used for convergence bounds."""
        return MajorantSeries(np.abs(self._c), self._order)

    # -- evaluation ------------------------------------------------------

    def eval(self, z: complex) -> complex:
        """Partial sum at z, evaluated by Horner nesting."""
        return complex(np.polyval(self._c[::-1], complex(z)))

    __call__ = eval

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        f, g = _common_truncation(self, other)
        return TruncatedSeries._certified(f._c + g._c, min(f._order, g._order))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        f, g = _common_truncation(self, other)
        return TruncatedSeries._certified(f._c - g._c, min(f._order, g._order))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries._certified(-self._c.copy(), self._order)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return cauchy_product(self, other)
        return self.scaled(other)

    def __rmul__(self, scalar: complex) -> "TruncatedSeries":
        return self.scaled(scalar)

    def scaled(self, scalar: complex) -> "TruncatedSeries":
        return TruncatedSeries._certified(self._c * complex(scalar), self._order)

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "N": self.trunc_order,
            "order": self._order,
            "coeffs": [[float(c.real), float(c.imag)] for c in self._c],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "TruncatedSeries":
        n = int(obj["N"])
        pairs = obj["coeffs"]
        if len(pairs) != n + 1:
            raise ValueError("coeffs length must be N+1")
        c = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
        return cls(c, int(obj["order"]))


class MajorantSeries:
    """Truncated series with nonnegative real coefficients.

    Evaluation results that leave the finite double range are reported as a
    :class:`MajorantOverflow` instead of a float infinity, because downstream
    convergence arguments hinge on finiteness of composed majorant values.
    """

    __slots__ = ("_c", "_order")

    def __init__(self, coeffs: Sequence[float], order_bound: int = 0):
        c = np.asarray(coeffs, dtype=np.float64).copy()
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must form a nonempty one-dimensional sequence")
        if np.any(c < 0) or not np.all(np.isfinite(c)):
            raise ValueError("majorant coefficients must be finite and >= 0")
        if not 0 <= order_bound <= len(c):
            raise OrderClaimViolated(f"order claim {order_bound} outside 0..{len(c)}")
        c.setflags(write=False)
        self._c = c
        self._order = int(order_bound)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def trunc_order(self) -> int:
        return len(self._c) - 1

    @property
    def order(self) -> int:
        return self._order

    def eval(self, r: float) -> float:
        """Value at r >= 0; raises MajorantOverflow instead of returning inf."""
        r = float(r)
        if r < 0:
            raise ValueError("majorants are evaluated at nonnegative radii")
        value = float(np.polyval(self._c[::-1], r))
        if not math.isfinite(value):
            raise MajorantOverflow(f"majorant value at r={r!r} overflowed")
        return value

    __call__ = eval

    def __repr__(self) -> str:
        return f"MajorantSeries(N={self.trunc_order}, order={self._order})"


# -- module-level operations ----------------------------------------------


def make_series(coeffs: Iterable[complex], order_claim: int = 0) -> TruncatedSeries:
    """Build a series from coefficients, validating the claimed order.

    Raises OrderClaimViolated if any coefficient below ``order_claim`` is
    nonzero; the claim becomes the certified order of the result.
    """
    return TruncatedSeries(coeffs, order_claim)


def zero(trunc_order: int) -> TruncatedSeries:
    """The zero truncation at the given degree (order bound N+1)."""
    return TruncatedSeries._certified(
        np.zeros(trunc_order + 1, dtype=np.complex128), trunc_order + 1)


def identity(trunc_order: int) -> TruncatedSeries:
    """The series z at the given truncation degree."""
    return monomial(1.0, 1, trunc_order)


def monomial(coefficient: complex, degree: int, trunc_order: int) -> TruncatedSeries:
    """The series ``coefficient * z**degree`` at the given truncation degree."""
    if not 0 <= degree <= trunc_order:
        raise DegreeOutOfRange(f"degree {degree} outside 0..{trunc_order}")
    c = np.zeros(trunc_order + 1, dtype=np.complex128)
    c[degree] = coefficient
    order = degree if coefficient != 0 else trunc_order + 1
    return TruncatedSeries._certified(c, order)


def _common_truncation(f: TruncatedSeries, g: TruncatedSeries):
    """Resolve mixed truncation degrees by truncating to the minimum."""
    if f.trunc_order == g.trunc_order:
        return f, g
    n = min(f.trunc_order, g.trunc_order)
    return f.truncate(n), g.truncate(n)


def cauchy_product(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product [f*g]_N at the common truncation degree.

    The coefficient of degree k is sum_{i=0..k} f_i g_{k-i}, accumulated in
    ascending i so the result agrees term by term with a naive double loop.
    The certified order of the result is min(N+1, order(f) + order(g)).
    """
    f, g = _common_truncation(f, g)
    n = f.trunc_order
    fc, gc = f.coeffs, g.coeffs
    out = np.zeros(n + 1, dtype=np.complex128)
    lo = g.order
    for i in range(f.order, n + 1 - lo):
        ci = fc[i]
        if ci != 0:
            out[i + lo:] += ci * gc[lo: n + 1 - i]
    return TruncatedSeries._certified(out, min(n + 1, f.order + g.order))


def truncate(f: TruncatedSeries, degree: int) -> TruncatedSeries:
    """[f]_degree, see :meth:`TruncatedSeries.truncate`."""
    return f.truncate(degree)


def majorant(f: TruncatedSeries) -> MajorantSeries:
    """Majorant of f, see :meth:`TruncatedSeries.majorant`."""
    return f.majorant()
