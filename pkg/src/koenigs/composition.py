"""Composition of truncated series.

Composition is evaluated by Horner nesting, accumulating
``(((f_K g + f_{K-1}) g + ...) g + f_0)`` with truncation at the working
degree after every product.  Coefficients of the outer series whose
contribution falls entirely beyond the working degree are skipped, which is
exact because the skipped terms consist of structural zeros; the quadratic
linearization stages rely on this when the inner series has high order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstantTermNonzero
from .series import TruncatedSeries, _common_truncation, cauchy_product

__all__ = ["power", "compose", "eval_composition_check", "CompositionCheck"]


def power(g: TruncatedSeries, k: int) -> TruncatedSeries:
    """k-fold Cauchy product of g with itself; g**0 is the constant 1."""
    if k < 0:
        raise ValueError("exponent must be a natural number")
    if k == 0:
        c = np.zeros(g.trunc_order + 1, dtype=np.complex128)
        c[0] = 1.0
        return TruncatedSeries._certified(c, 0)
    out = g
    for _ in range(k - 1):
        out = cauchy_product(out, g)
    return out


def _mul_arrays(a: np.ndarray, b: np.ndarray, b_low: int) -> np.ndarray:
    # Shift-and-add convolution truncated at len(a)-1; ascending index i so
    # each output coefficient accumulates exactly like a naive double loop.
    n = len(a) - 1
    out = np.zeros(n + 1, dtype=np.complex128)
    for i in range(0, n + 1 - b_low):
        v = a[i]
        if v != 0:
            out[i + b_low:] += v * b[b_low: n + 1 - i]
    return out


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """[f o g]_N at the common truncation degree N.

    Requires g to have zero constant term.  Equals [[f]_N o [g]_N]_N, and the
    certified order of the result is min(N+1, order(f) * max(1, order(g))).
    """
    f, g = _common_truncation(f, g)
    gc = g.coeffs
    if gc[0] != 0:
        raise ConstantTermNonzero("inner series must have zero constant term")
    n = f.trunc_order
    q = max(1, g.order)
    # f_j g^j lies in O_{j q}, so indices beyond n // q contribute nothing.
    kmax = min(n, n // q)
    fc = f.coeffs
    nz = np.nonzero(fc[: kmax + 1])[0]
    bound = min(n + 1, f.order * q)
    if nz.size == 0:
        return TruncatedSeries._certified(np.zeros(n + 1, dtype=np.complex128), n + 1)
    jtop = int(nz[-1])
    acc = np.zeros(n + 1, dtype=np.complex128)
    acc[0] = fc[jtop]
    for j in range(jtop - 1, -1, -1):
        acc = _mul_arrays(acc, gc, g.order)
        acc[0] += fc[j]
    return TruncatedSeries._certified(acc, bound)


@dataclass(frozen=True)
class CompositionCheck:
    """Comparison of eval(f o g, z) against eval(f, eval(g, z))."""

    z: complex
    composed_value: complex
    nested_value: complex
    discrepancy: float
    inner_bound: float
    outer_bound: float
    tol: float
    within_tol: bool

    def to_json_dict(self) -> dict:
        return {
            "z": [self.z.real, self.z.imag],
            "composed": [self.composed_value.real, self.composed_value.imag],
            "nested": [self.nested_value.real, self.nested_value.imag],
            "discrepancy": self.discrepancy,
            "inner_bound": self.inner_bound,
            "outer_bound": self.outer_bound,
            "tol": self.tol,
            "within_tol": self.within_tol,
        }


def eval_composition_check(f: TruncatedSeries, g: TruncatedSeries, z: complex,
                           tol: float | None = None) -> CompositionCheck:
    """Check that composing then evaluating matches evaluating then nesting.

    The hypothesis that the nested majorant value f_hat(g_hat(|z|)) is finite
    is verified first; a MajorantOverflow means the check point lies outside
    the region where the comparison is meaningful.  The default tolerance is
    loose enough for points well inside the radii of both truncations; pass an
    explicit ``tol`` near the boundary, where truncation tails dominate.
    """
    inner_bound = g.majorant().eval(abs(z))
    outer_bound = f.majorant().eval(inner_bound)
    composed = compose(f, g).eval(z)
    nested = f.eval(g.eval(z))
    disc = abs(composed - nested)
    if tol is None:
        tol = 1e-10 * max(1.0, abs(nested))
    return CompositionCheck(
        z=complex(z),
        composed_value=composed,
        nested_value=nested,
        discrepancy=disc,
        inner_bound=inner_bound,
        outer_bound=outer_bound,
        tol=float(tol),
        within_tol=disc <= tol,
    )
