"""Linearization of germs f = lambda*z + F around a fixed point at 0.

Two constructions of the tangent-to-identity conjugacy h with
h(lambda*z) = f(h(z)) are provided.  The direct route solves the homological
equation order by order through the diagonal operator
(L H)_m = (lambda^m - lambda) H_m and stabilizes after at most N steps.  The
quadratic route conjugates away the lowest-order block of the nonlinearity
at every stage, doubling the vanishing order of the remainder each time,
and tracks alongside the radius schedule r_k whose limit certifies a lower
bound for the radius of convergence of h in terms of the Bruno sum of the
multiplier.

Residuals measure the defect f o h - h o (lambda*z), which vanishes exactly
when h conjugates f to its linear part.  This form keeps every intermediate
quantity the size of one composition of h-like series, which is what the
default residual tolerance, scaling with the square of the largest
coefficient of h, accounts for.  Composing with the inverse of h instead
would inflate the float noise by the growth of the inverse's own
coefficients without changing the mathematical content.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .composition import compose
from .errors import (
    HypothesisFailed,
    NotHyperbolic,
    NoValidRadius,
    ResonantDivisor,
    ScheduleCollapse,
    StructuralOrderViolation,
    ZeroMultiplier,
)
from .inversion import invert
from .multipliers import omega_power_minima
from .series import TruncatedSeries, make_series

__all__ = [
    "HomologicalOperator",
    "HyperbolicCertificate",
    "EllipticSchedule",
    "StageDiagnostics",
    "LinearizationResult",
    "BoundCheck",
    "BoundsReport",
    "solve_homological",
    "linearize_direct",
    "linearize_quadratic",
    "auto_r0",
    "hyperbolic_certificate",
    "elliptic_schedule",
    "verify_bounds",
]

DEFAULT_RESIDUAL_REL = 1e-8
DEFAULT_DIVISOR_TOL = 1e-12
DEFAULT_CLEANUP_REL = 1e-8

_CIRCLE_TOL = 1e-9


def _require_order_two(F: TruncatedSeries) -> TruncatedSeries:
    # Re-certify at order >= 2; rejects maps whose low coefficients are not
    # exact zeros instead of silently absorbing them into the nonlinearity.
    return make_series(F.coeffs, max(F.order, 2))


class HomologicalOperator:
    """Diagonal operator H -> H(lambda*z) - lambda*H on order-two tails.

    Caches the divisors lambda^m - lambda for m = 2..N, accumulated by
    repeated multiplication.  The operator is invertible on truncations iff
    no cached divisor vanishes; ``resonant_degree`` reports the first degree
    whose divisor modulus is at or below the tolerance, if any.
    """

    def __init__(self, lam: complex, trunc_order: int,
                 tol: float = DEFAULT_DIVISOR_TOL):
        self.lam = complex(lam)
        self.trunc_order = int(trunc_order)
        self.tol = float(tol)
        div = np.zeros(self.trunc_order + 1, dtype=np.complex128)
        p = self.lam
        for m in range(2, self.trunc_order + 1):
            p = p * self.lam
            div[m] = p - self.lam
        div.setflags(write=False)
        self.divisors = div
        self.resonant_degree = None
        if self.trunc_order >= 2:
            small = np.nonzero(np.abs(div[2:]) <= self.tol)[0]
            if small.size:
                self.resonant_degree = int(small[0]) + 2

    def solve(self, F: TruncatedSeries) -> TruncatedSeries:
        """P with (lambda^m - lambda) P_m = F_m for every degree m >= 2."""
        if self.resonant_degree is not None:
            raise ResonantDivisor(self.resonant_degree)
        F = _require_order_two(F)
        if F.trunc_order != self.trunc_order:
            raise ValueError("operator and series truncation degrees differ")
        out = np.zeros(self.trunc_order + 1, dtype=np.complex128)
        out[2:] = F.coeffs[2:] / self.divisors[2:]
        return TruncatedSeries._certified(out, F.order)


def solve_homological(F: TruncatedSeries, lam: complex,
                      tol: float = DEFAULT_DIVISOR_TOL) -> TruncatedSeries:
    """Solve the homological equation coefficientwise, see HomologicalOperator."""
    return HomologicalOperator(lam, F.trunc_order, tol).solve(F)


# -- results ----------------------------------------------------------------


@dataclass(frozen=True)
class HyperbolicCertificate:
    """Majorant bound H_hat((omega^2 - alpha) r) <= alpha r, Koenigs regime.

    ``omega`` is a certified lower bound for inf_{m>=2} |lambda^m - lambda|,
    attained within ``scan_limit`` for expanding multipliers and combined
    with the analytic tail bound |lambda| (1 - |lambda|^M) for contracting
    ones.  ``rigorous`` has the same meaning as for inverse certificates:
    the statement applies to the polynomial map given by the exact
    coefficients supplied, evaluated in double arithmetic.
    """

    omega: float
    scan_limit: int
    alpha: float
    r: float
    hypothesis_lhs: float
    hypothesis_rhs: float
    radius: float
    lhs: float
    bound: float
    valid: bool
    rigorous: bool

    def to_json_dict(self) -> dict:
        return {
            "omega": self.omega,
            "scan_limit": self.scan_limit,
            "alpha": self.alpha,
            "r": self.r,
            "radius": self.radius,
            "lhs": self.lhs,
            "rhs": self.bound,
            "rigorous": self.rigorous,
        }


@dataclass(frozen=True, eq=False)
class EllipticSchedule:
    """Radius schedule of the quadratic scheme for a unit-modulus multiplier.

    Stage k shrinks the certified radius by the factor
    (1 - a_k) (1 + alpha_k a_k)^{-1} (1 + a_k)^{-1} gamma_k with
    alpha_k = Omega_{2^{k+1}}, a_k = min(1/10, 1/k^2) (1/10 at stage zero)
    and gamma_k = (alpha_k a_k)^{2^{-k}}.  ``radii`` holds r_0..r_K and
    ``r_infinity`` is the K-stage value r_K, an upper partial-product
    estimate of the limit radius.  ``bruno_bound`` is the closed-form lower
    bound c_partial * r_0 * exp(-2 b_K) built from the same running minima,
    so r_K >= bruno_bound holds by construction (alpha_k <= 2).
    """

    lam: complex
    K: int
    alpha: np.ndarray
    a: np.ndarray
    gamma: np.ndarray
    radii: np.ndarray
    r_infinity: float
    c_partial: float
    bruno_partial: float
    bruno_bound: float
    horizon: int
    saturated_from: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "K": self.K,
            "lambda": [self.lam.real, self.lam.imag],
            "alpha": [float(x) for x in self.alpha],
            "a": [float(x) for x in self.a],
            "gamma": [float(x) for x in self.gamma],
            "radii": [float(x) for x in self.radii],
            "r_infinity": self.r_infinity,
            "c_partial": self.c_partial,
            "bruno_partial": self.bruno_partial,
            "bruno_bound": self.bruno_bound,
            "horizon": self.horizon,
            "saturated_from": self.saturated_from,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "EllipticSchedule":
        return cls(
            lam=complex(obj["lambda"][0], obj["lambda"][1]),
            K=int(obj["K"]),
            alpha=np.array(obj["alpha"], dtype=float),
            a=np.array(obj["a"], dtype=float),
            gamma=np.array(obj["gamma"], dtype=float),
            radii=np.array(obj["radii"], dtype=float),
            r_infinity=float(obj["r_infinity"]),
            c_partial=float(obj["c_partial"]),
            bruno_partial=float(obj["bruno_partial"]),
            bruno_bound=float(obj["bruno_bound"]),
            horizon=int(obj["horizon"]),
            saturated_from=(None if obj.get("saturated_from") is None
                            else int(obj["saturated_from"])),
        )


@dataclass(frozen=True, eq=False)
class StageDiagnostics:
    """Snapshot of one quadratic stage."""

    k: int
    alpha: float
    a: float
    gamma: float
    r: float
    order_F: int
    deg_P: int
    sub_order_residue: float
    residual_after: float
    F: TruncatedSeries
    P: TruncatedSeries
    h_after: TruncatedSeries | None = field(default=None, repr=False)

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "alpha": self.alpha,
            "a": self.a,
            "gamma": self.gamma,
            "r": self.r,
            "order_F": self.order_F,
            "deg_P": self.deg_P,
            "sub_order_residue": self.sub_order_residue,
            "residual_after": self.residual_after,
            "F": self.F.to_json_dict(),
            "P": self.P.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "StageDiagnostics":
        return cls(
            k=int(obj["k"]),
            alpha=float(obj["alpha"]),
            a=float(obj["a"]),
            gamma=float(obj["gamma"]),
            r=float(obj["r"]),
            order_F=int(obj["order_F"]),
            deg_P=int(obj["deg_P"]),
            sub_order_residue=float(obj["sub_order_residue"]),
            residual_after=float(obj["residual_after"]),
            F=TruncatedSeries.from_json_dict(obj["F"]),
            P=TruncatedSeries.from_json_dict(obj["P"]),
        )


@dataclass(frozen=True, eq=False)
class LinearizationResult:
    """Conjugacy h with h'(0) = 1, its inverse, and run diagnostics.

    ``residual`` is the largest coefficient modulus of the defect
    [f o h - h o (lambda z)]_N and ``residual_tol`` the accepted level,
    which scales with the square of the largest coefficient of h.
    """

    lam: complex
    f: TruncatedSeries
    h: TruncatedSeries
    h_inverse: TruncatedSeries
    residual: float
    residual_tol: float
    method: str
    stages: tuple[StageDiagnostics, ...] = ()
    radius_certificate: EllipticSchedule | None = None
    final_remainder: TruncatedSeries | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.residual <= self.residual_tol

    def to_json_dict(self) -> dict:
        return {
            "method": self.method,
            "lambda": [self.lam.real, self.lam.imag],
            "f": self.f.to_json_dict(),
            "h": self.h.to_json_dict(),
            "h_inverse": self.h_inverse.to_json_dict(),
            "residual": self.residual,
            "residual_tol": self.residual_tol,
            "stages": [s.to_json_dict() for s in self.stages],
            "schedule": (None if self.radius_certificate is None
                         else self.radius_certificate.to_json_dict()),
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "LinearizationResult":
        sched = obj.get("schedule")
        return cls(
            lam=complex(obj["lambda"][0], obj["lambda"][1]),
            f=TruncatedSeries.from_json_dict(obj["f"]),
            h=TruncatedSeries.from_json_dict(obj["h"]),
            h_inverse=TruncatedSeries.from_json_dict(obj["h_inverse"]),
            residual=float(obj["residual"]),
            residual_tol=float(obj["residual_tol"]),
            method=str(obj["method"]),
            stages=tuple(StageDiagnostics.from_json_dict(s)
                         for s in obj.get("stages", [])),
            radius_certificate=(None if sched is None
                                else EllipticSchedule.from_json_dict(sched)),
        )

    def to_csv_text(self) -> str:
        lines = ["stage,order_F,deg_P,r_k,residual_so_far"]
        for s in self.stages:
            lines.append("%d,%d,%d,%s,%s" % (
                s.k, s.order_F, s.deg_P,
                format(s.r, ".17g"), format(s.residual_after, ".17g")))
        return "\n".join(lines) + "\n"


# -- direct construction -----------------------------------------------------


def _conjugacy_tail(op: HomologicalOperator, F: TruncatedSeries) -> TruncatedSeries:
    """h = z + H by the order-by-order fixed point H <- Linv(F o (z + H))."""
    n = F.trunc_order
    h = np.zeros(n + 1, dtype=np.complex128)
    h[1] = 1.0
    cur = TruncatedSeries._certified(h, 1)
    for _ in range(n + 1):
        t = compose(F, cur)
        nxt = np.zeros(n + 1, dtype=np.complex128)
        nxt[1] = 1.0
        nxt[2:] = t.coeffs[2:] / op.divisors[2:]
        if np.array_equal(nxt, cur.coeffs):
            break
        cur = TruncatedSeries._certified(nxt, 1)
    return cur


def _full_map(lam: complex, F: TruncatedSeries) -> TruncatedSeries:
    c = F.coeffs.copy()
    c[1] += lam
    return TruncatedSeries._certified(c, 1)


def _conjugacy_residual(lam: complex, f: TruncatedSeries, h: TruncatedSeries,
                        residual_rel: float) -> tuple[float, float]:
    n = h.trunc_order
    lhs = compose(f, h).coeffs
    powers = np.cumprod(np.concatenate(([1.0 + 0j], np.full(n, lam))))
    defect = lhs - h.coeffs * powers
    residual = float(np.max(np.abs(defect)))
    scale = (1.0 + float(np.max(np.abs(h.coeffs)))) ** 2
    return residual, residual_rel * scale


def linearize_direct(lam: complex, F: TruncatedSeries, *,
                     residual_rel: float = DEFAULT_RESIDUAL_REL,
                     divisor_tol: float = DEFAULT_DIVISOR_TOL) -> LinearizationResult:
    """Linearize by the order-by-order homological iteration.

    Works for any multiplier whose divisors lambda^m - lambda stay away from
    zero up to the truncation degree; raises ResonantDivisor otherwise.
    """
    lam = complex(lam)
    if lam == 0:
        raise ZeroMultiplier("a zero multiplier cannot be linearized")
    F = _require_order_two(F)
    op = HomologicalOperator(lam, F.trunc_order, divisor_tol)
    if op.resonant_degree is not None:
        raise ResonantDivisor(op.resonant_degree)
    h = _conjugacy_tail(op, F)
    h_inv = invert(h)
    f = _full_map(lam, F)
    residual, tol = _conjugacy_residual(lam, f, h, residual_rel)
    return LinearizationResult(lam=lam, f=f, h=h, h_inverse=h_inv,
                               residual=residual, residual_tol=tol,
                               method="direct")


# -- radius schedule ---------------------------------------------------------


def _stage_a(k: int) -> float:
    # min(1/10, 1/k^2) with the k = 0 stage pinned at 1/10.
    if k == 0:
        return 0.1
    return min(0.1, 1.0 / (k * k))


def elliptic_schedule(lam: complex, r0: float, K: int,
                      horizon: int | None = None) -> EllipticSchedule:
    """Radius schedule r_0..r_K plus the Bruno-sum lower bound for r_K."""
    lam = complex(lam)
    r0 = float(r0)
    if r0 <= 0:
        raise ValueError("r0 must be positive")
    if K < 1:
        raise ValueError("K must be at least 1")
    po = omega_power_minima(lam, K, horizon)
    zeros = np.nonzero(po.values == 0.0)[0]
    if zeros.size:
        raise ScheduleCollapse(
            f"Omega_{{2^{int(zeros[0]) + 1}}} = 0: the schedule degenerates")
    alpha = po.values
    a = np.array([_stage_a(k) for k in range(K)])
    gamma = (alpha * a) ** np.ldexp(1.0, -np.arange(K))
    radii = np.empty(K + 1)
    radii[0] = r0
    c_partial = 1.0
    for k in range(K):
        radii[k + 1] = ((1.0 - a[k]) / (1.0 + alpha[k] * a[k])
                        / (1.0 + a[k]) * gamma[k] * radii[k])
        c_partial *= ((1.0 - a[k]) / (1.0 + 2.0 * a[k]) / (1.0 + a[k])
                      * a[k] ** math.ldexp(1.0, -k))
    ks = np.arange(1, K + 1)
    bruno_partial = math.fsum(np.ldexp(np.log(1.0 / alpha), -ks))
    bruno_bound = c_partial * r0 * math.exp(-2.0 * bruno_partial)
    if not radii[K] >= bruno_bound * (1.0 - 1e-9):
        raise ArithmeticError("schedule inequality r_K >= C r0 exp(-2 b_K) "
                              "failed, which indicates corrupted minima")
    for arr in (alpha, a, gamma, radii):
        arr.setflags(write=False)
    return EllipticSchedule(lam=lam, K=K, alpha=alpha, a=a, gamma=gamma,
                            radii=radii, r_infinity=float(radii[K]),
                            c_partial=c_partial, bruno_partial=bruno_partial,
                            bruno_bound=bruno_bound, horizon=po.horizon,
                            saturated_from=po.saturated_from)


def auto_r0(F: TruncatedSeries) -> float:
    """Largest grid radius r in {2^-j : j = 0..60} with F_hat(r) <= r.

    Such a radius exists for every sensible order-two nonlinearity because
    the majorant has vanishing derivative at zero; coefficients so large
    that no grid point works raise NoValidRadius.
    """
    maj = _require_order_two(F).majorant()
    for j in range(61):
        r = math.ldexp(1.0, -j)
        if maj.eval(r) <= r:
            return r
    raise NoValidRadius("no radius in {2^-j : j <= 60} satisfies F_hat(r) <= r")


# -- quadratic construction --------------------------------------------------


def linearize_quadratic(lam: complex, F: TruncatedSeries,
                        r0: float | None = None, *,
                        residual_rel: float = DEFAULT_RESIDUAL_REL,
                        divisor_tol: float = DEFAULT_DIVISOR_TOL,
                        cleanup_rel: float = DEFAULT_CLEANUP_REL,
                        horizon: int | None = None) -> LinearizationResult:
    """Linearize a unit-modulus multiplier by the stage-doubling scheme.

    Stage k removes the block of degrees up to 2^{k+1} from the remainder
    F_k by conjugating with z + P_k, P_k the truncated homological solution,
    so the next remainder has vanishing order 1 + 2^{k+1}.  Stages run until
    the remainder order exceeds the truncation degree.  The returned result
    carries per-stage diagnostics and the radius schedule.

    The coefficients of each conjugated remainder below its certified order
    cancel only up to round-off; they are checked against a threshold that
    scales with the stage's coefficient sizes (``cleanup_rel``) and then
    stored as exact zeros, keeping the order bookkeeping exact.
    """
    lam = complex(lam)
    if lam == 0:
        raise ZeroMultiplier("a zero multiplier cannot be linearized")
    if abs(abs(lam) - 1.0) > _CIRCLE_TOL:
        raise ValueError("the quadratic scheme expects |lambda| = 1; "
                         "use linearize_direct for hyperbolic multipliers")
    F = _require_order_two(F)
    n = F.trunc_order
    if n < 2:
        raise ValueError("need a truncation degree of at least 2")
    op = HomologicalOperator(lam, n, divisor_tol)
    if op.resonant_degree is not None:
        raise ResonantDivisor(op.resonant_degree)
    if r0 is None:
        r0 = auto_r0(F)
    else:
        r0 = float(r0)
        bound = F.majorant().eval(r0)
        if bound > r0:
            raise HypothesisFailed(
                f"F_hat({r0}) = {bound} > {r0}; pick a smaller r0")

    stage_count = 0
    while 1 + (1 << stage_count) <= n:
        stage_count += 1
    schedule = elliptic_schedule(lam, r0, stage_count, horizon)

    Fk = F
    h = TruncatedSeries._certified(
        np.concatenate(([0.0 + 0j, 1.0 + 0j], np.zeros(n - 1, dtype=np.complex128))), 1)
    stages = []
    for k in range(stage_count):
        d = min(1 << (k + 1), n)
        P = op.solve(Fk).truncate(d).extended(n)
        g = P.coeffs.copy()
        g[1] += 1.0
        g_series = TruncatedSeries._certified(g, 1)
        g_inv = invert(g_series)
        conj = compose(g_inv, compose(_full_map(lam, Fk), g_series))
        raw = conj.coeffs.copy()
        raw[1] -= lam
        cut = min(1 + (1 << (k + 1)), n + 1)
        max_F = float(np.max(np.abs(Fk.coeffs)))
        max_P = float(np.max(np.abs(P.coeffs)))
        threshold = cleanup_rel * (1.0 + max_F) * (1.0 + max_P) ** 2
        worst = float(np.max(np.abs(raw[:cut])))
        if worst > threshold:
            raise StructuralOrderViolation(
                f"stage {k}: coefficient below order {cut - 1} has modulus "
                f"{worst:.3e}, beyond the cancellation threshold {threshold:.3e}")
        F_next = TruncatedSeries._certified(raw, cut)
        h = compose(h, g_series)
        nzP = np.nonzero(P.coeffs)[0]
        stages.append(StageDiagnostics(
            k=k,
            alpha=float(schedule.alpha[k]),
            a=float(schedule.a[k]),
            gamma=float(schedule.gamma[k]),
            r=float(schedule.radii[k]),
            order_F=Fk.order,
            deg_P=int(nzP[-1]) if nzP.size else 0,
            sub_order_residue=worst,
            residual_after=float(np.max(np.abs(F_next.coeffs))),
            F=Fk,
            P=P.truncate(d),
            h_after=h,
        ))
        Fk = F_next

    h_inv = invert(h)
    f = _full_map(lam, F)
    residual, tol = _conjugacy_residual(lam, f, h, residual_rel)
    return LinearizationResult(lam=lam, f=f, h=h, h_inverse=h_inv,
                               residual=residual, residual_tol=tol,
                               method="quadratic", stages=tuple(stages),
                               radius_certificate=schedule,
                               final_remainder=Fk)


# -- hyperbolic certificate --------------------------------------------------


def _divisor_infimum(lam: complex) -> tuple[float, int]:
    """Certified lower bound for inf_{m>=2} |lambda^m - lambda|.

    Expanding case: |lambda^m - lambda| >= |lambda|^m - |lambda| grows, and
    once |lambda|^M >= 3 |lambda| the tail beyond M dominates the value at
    m = 2, so the scan minimum is the exact infimum.  Contracting case: the
    tail tends to |lambda| from within |lambda| |lambda|^{m-1}, giving the
    analytic floor |lambda| (1 - |lambda|^M) beyond the scan.
    """
    mod = abs(lam)
    if mod > 1.0:
        M = 2
        while mod ** M < 3.0 * mod:
            M += 1
        p = lam
        best = math.inf
        for m in range(2, M + 1):
            p = p * lam
            best = min(best, abs(p - lam))
        return best, M
    M = 2
    if mod > 0:
        M = max(2, min(1 << 16, int(math.ceil(math.log(5e-17) / math.log(mod)))))
    p = lam
    best = math.inf
    for m in range(2, M + 1):
        p = p * lam
        best = min(best, abs(p - lam))
    tail = mod * (1.0 - mod ** M)
    return min(best, tail), M


def hyperbolic_certificate(lam: complex, F: TruncatedSeries, alpha: float,
                           r: float, *,
                           divisor_tol: float = DEFAULT_DIVISOR_TOL) -> HyperbolicCertificate:
    """Certify H_hat((omega^2 - alpha) r) <= alpha r for hyperbolic lambda.

    Requires the hypothesis F_hat(omega^2 r) <= alpha omega r with
    alpha in (0, omega^2); the conjugacy tail H is computed at the
    truncation degree of F, so pad F with zero coefficients to control the
    quality of the reported left-hand side.
    """
    lam = complex(lam)
    mod = abs(lam)
    if mod <= divisor_tol or abs(mod - 1.0) <= divisor_tol:
        raise NotHyperbolic(f"|lambda| = {mod} is not separated from 0 and 1")
    F = _require_order_two(F)
    omega, scan_limit = _divisor_infimum(lam)
    alpha = float(alpha)
    r = float(r)
    if not (0 < alpha < omega * omega):
        raise ValueError(f"alpha must lie in (0, omega^2) = (0, {omega * omega})")
    if r <= 0:
        raise ValueError("r must be positive")
    maj = F.majorant()
    hyp_lhs = maj.eval(omega * omega * r)
    hyp_rhs = alpha * omega * r
    if hyp_lhs > hyp_rhs:
        raise HypothesisFailed(
            f"F_hat(omega^2 r) = {hyp_lhs} exceeds alpha omega r = {hyp_rhs}")
    op = HomologicalOperator(lam, F.trunc_order, divisor_tol)
    if op.resonant_degree is not None:
        raise ResonantDivisor(op.resonant_degree)
    h = _conjugacy_tail(op, F)
    tail = h.coeffs.copy()
    tail[1] = 0.0
    H = TruncatedSeries._certified(tail, 2)
    radius = (omega * omega - alpha) * r
    lhs = H.majorant().eval(radius)
    bound = alpha * r
    return HyperbolicCertificate(
        omega=omega, scan_limit=scan_limit, alpha=alpha, r=r,
        hypothesis_lhs=hyp_lhs, hypothesis_rhs=hyp_rhs,
        radius=radius, lhs=lhs, bound=bound,
        valid=lhs <= bound, rigorous=True)


# -- bound verification ------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    """One evaluated inequality of the quadratic scheme."""

    kind: str
    stage: int | None
    lhs: float
    rhs: float
    passed: bool

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


@dataclass(frozen=True)
class BoundsReport:
    """All stage inequalities plus the radius bound on h itself."""

    checks: tuple[BoundCheck, ...]
    all_passed: bool

    def to_json_dict(self) -> dict:
        return {
            "all_passed": self.all_passed,
            "checks": [
                {"kind": c.kind, "stage": c.stage, "lhs": c.lhs,
                 "rhs": c.rhs, "passed": c.passed}
                for c in self.checks
            ],
        }

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            where = "" if c.stage is None else f" [stage {c.stage}]"
            lines.append("%-4s %s%s: lhs=%.6e rhs=%.6e margin=%.3e" % (
                "ok" if c.passed else "FAIL", c.kind, where, c.lhs, c.rhs,
                c.margin))
        return "\n".join(lines)


def verify_bounds(result: LinearizationResult) -> BoundsReport:
    """Evaluate the schedule inequalities on the computed truncations.

    Checks F_hat_k(r_k) <= r_k and P_hat_k(r_{k+1}) <= r_k - r_{k+1} per
    stage and h_hat(r_infinity) <= r_0 for the accumulated conjugacy.
    Truncated majorants can only underestimate the full series, so a failed
    check is a genuine failure; a passed check is exact for polynomial data.
    """
    sched = result.radius_certificate
    if sched is None:
        raise ValueError("result carries no radius schedule to verify")
    checks = []
    for s in result.stages:
        r_k = float(sched.radii[s.k])
        r_next = float(sched.radii[s.k + 1])
        lhs = s.F.majorant().eval(r_k)
        checks.append(BoundCheck("F_hat(r_k) <= r_k", s.k, lhs, r_k,
                                 lhs <= r_k))
        lhs = s.P.majorant().eval(r_next)
        rhs = r_k - r_next
        checks.append(BoundCheck("P_hat(r_{k+1}) <= r_k - r_{k+1}", s.k,
                                 lhs, rhs, lhs <= rhs))
    lhs = result.h.majorant().eval(sched.r_infinity)
    rhs = float(sched.radii[0])
    checks.append(BoundCheck("h_hat(r_inf) <= r_0", None, lhs, rhs,
                             lhs <= rhs))
    return BoundsReport(checks=tuple(checks),
                        all_passed=all(c.passed for c in checks))
