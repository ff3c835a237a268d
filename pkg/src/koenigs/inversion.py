"""Compositional inverse of f = lambda*z + F with F of order two.

The inverse g = (1/lambda)*z + G is produced by the order-by-order fixed
point of G = -mu * F o (mu*I + G) with mu = 1/lambda: the truncation of the
iterate stabilizes one degree per step, so the k-th step only contributes the
coefficient of degree k.  A majorant certificate for the tail G is available
when a radius r and a margin alpha with F_hat(r) <= |lambda| alpha r are
supplied.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .composition import compose
from .errors import ConstantTermNonzero, HypothesisFailed, ZeroMultiplier
from .series import TruncatedSeries, make_series

__all__ = ["invert", "inverse_tail", "inverse_majorant_certificate",
           "InverseCertificate"]


def inverse_tail(F: TruncatedSeries, lam: complex) -> TruncatedSeries:
    """The order-two tail G of the inverse of lambda*z + F.

    F must have exactly vanishing coefficients of degree zero and one.  Each
    step k evaluates [-mu * F o (mu*I + G)]_k and appends its degree-k
    coefficient; lower coefficients are already stable.
    """
    lam = complex(lam)
    if lam == 0:
        raise ZeroMultiplier("cannot invert a map with zero linear part")
    F = make_series(F.coeffs, 2)
    mu = 1.0 / lam
    n = F.trunc_order
    tail = np.zeros(n + 1, dtype=np.complex128)
    for k in range(2, n + 1):
        inner = np.zeros(k + 1, dtype=np.complex128)
        inner[1] = mu
        inner[2:k] = tail[2:k]
        t = compose(F.truncate(k), TruncatedSeries._certified(inner, 1))
        tail[k] = -mu * t.coeffs[k]
    return TruncatedSeries._certified(tail, 2)


def invert(f: TruncatedSeries, lam: complex | None = None) -> TruncatedSeries:
    """Compositional inverse g with [f o g]_N = [g o f]_N = [z]_N.

    ``lam`` is the linear coefficient of f; when omitted it is read from the
    series, when given it must match exactly.
    """
    if f.trunc_order < 1:
        raise ValueError("a map to invert needs at least the linear coefficient")
    if f.coeffs[0] != 0:
        raise ConstantTermNonzero("a map to invert must fix the origin")
    lam0 = complex(f.coeffs[1])
    if lam is None:
        lam = lam0
    elif complex(lam) != lam0:
        raise ValueError(f"lambda {lam!r} does not match the linear coefficient {lam0!r}")
    if lam == 0:
        raise ZeroMultiplier("cannot invert a map with zero linear part")
    Fc = f.coeffs.copy()
    Fc[1] = 0.0
    tail = inverse_tail(TruncatedSeries._certified(Fc, 2), lam)
    g = tail.coeffs.copy()
    g[1] = 1.0 / lam
    return TruncatedSeries._certified(g, 1)


@dataclass(frozen=True)
class InverseCertificate:
    """Majorant bound G_hat(|lambda|(1-alpha) r) <= alpha r for the inverse tail.

    ``valid`` records whether the computed left-hand side satisfies the bound.
    ``rigorous`` means the bound statement applies to the polynomial map
    defined by exactly the supplied coefficients (evaluations are plain double
    arithmetic, not interval arithmetic); for data truncated from a longer
    series the certificate is heuristic because the hypothesis was only
    checked on the truncation.
    """

    r: float
    alpha: float
    lambda_mod: float
    bound_point: float
    bound_value: float
    lhs: float
    hypothesis_lhs: float
    hypothesis_rhs: float
    valid: bool
    rigorous: bool

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "alpha": self.alpha,
            "lhs": self.lhs,
            "rhs": self.bound_value,
            "rigorous": self.rigorous,
        }


def inverse_majorant_certificate(F: TruncatedSeries, lam: complex, r: float,
                                 alpha: float) -> InverseCertificate:
    """Certify the inverse tail bound under F_hat(r) <= |lambda| alpha r.

    Raises HypothesisFailed when the hypothesis does not hold for the
    supplied (r, alpha).  The reported left-hand side evaluates the majorant
    of the computed truncation of G, which can only underestimate the full
    tail; the bound itself is guaranteed by the hypothesis.
    """
    lam = complex(lam)
    if lam == 0:
        raise ZeroMultiplier("certificate needs a nonzero linear part")
    r = float(r)
    alpha = float(alpha)
    if not (r > 0 and 0 < alpha < 1):
        raise ValueError("need r > 0 and alpha in (0, 1)")
    F = make_series(F.coeffs, 2)
    hyp_lhs = F.majorant().eval(r)
    hyp_rhs = abs(lam) * alpha * r
    if hyp_lhs > hyp_rhs:
        raise HypothesisFailed(
            f"F_hat({r}) = {hyp_lhs} exceeds |lambda| alpha r = {hyp_rhs}")
    tail = inverse_tail(F, lam)
    bound_point = abs(lam) * (1.0 - alpha) * r
    lhs = tail.majorant().eval(bound_point)
    bound_value = alpha * r
    return InverseCertificate(
        r=r,
        alpha=alpha,
        lambda_mod=abs(lam),
        bound_point=bound_point,
        bound_value=bound_value,
        lhs=lhs,
        hypothesis_lhs=hyp_lhs,
        hypothesis_rhs=hyp_rhs,
        valid=lhs <= bound_value,
        rigorous=True,
    )
