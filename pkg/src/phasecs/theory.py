"""Closed-form recovery constants for weighted l1 phaseless recovery.

All functions are pure scalar formulas in the prior-quality parameters
(omega, rho, alpha), the isometry order factor t, the isometry constant
delta_tk, and the two-sided row-subset isometry bounds (theta_minus,
theta_plus).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def gamma(omega: float, rho: float, alpha: float) -> float:
    """gamma = omega + (1 - omega) * sqrt(1 + rho - 2*alpha*rho)."""
    radicand = 1.0 + rho - 2.0 * alpha * rho
    if radicand < 0:
        raise ValueError("1 + rho - 2*alpha*rho must be nonnegative")
    return omega + (1.0 - omega) * math.sqrt(radicand)


def d_const(omega: float, rho: float, alpha: float) -> float:
    """d = 1 for omega = 1, else 1 - alpha*rho + max(alpha, 1 - alpha)*rho."""
    if omega == 1.0:
        return 1.0
    return 1.0 - alpha * rho + max(alpha, 1.0 - alpha) * rho


def delta_threshold(t: float, d: float, gam: float) -> float:
    """Largest admissible isometry constant: sqrt((t - d) / (t - d + gamma^2))."""
    if t <= d:
        raise ValueError(f"need t > d, got t={t}, d={d}")
    return math.sqrt((t - d) / (t - d + gam * gam))


def _branch(d: float, gam: float, theta: float) -> float:
    denom = 2.0 * theta - theta * theta
    if denom <= 0:
        raise ValueError(f"theta must lie in (0, 2), got {theta}")
    return d + gam * gam * (1.0 - theta) ** 2 / denom


def t_omega(
    omega: float,
    rho: float,
    alpha: float,
    theta_minus: float,
    theta_plus: float,
) -> float:
    """Smallest order factor t for which the two-sided isometry bounds suffice.

    Equals ``max over theta in {theta_minus, theta_plus} of
    d + gamma^2 (1 - theta)^2 / (2 theta - theta^2)``.
    """
    gam = gamma(omega, rho, alpha)
    d = d_const(omega, rho, alpha)
    return max(_branch(d, gam, theta_minus), _branch(d, gam, theta_plus))


def error_constants(
    t: float,
    delta_tk: float,
    omega: float,
    rho: float,
    alpha: float,
) -> tuple[float, float]:
    """Stability constants (C1, C2) of the weighted recovery error bound.

    Requires ``t > d`` and ``delta_tk`` below :func:`delta_threshold`; raises
    ``ValueError`` otherwise ("bound not applicable").  C2 includes the
    additive ``1/sqrt(d)`` term.
    """
    gam = gamma(omega, rho, alpha)
    d = d_const(omega, rho, alpha)
    thr = delta_threshold(t, d, gam)
    if not delta_tk < thr:
        raise ValueError(
            f"bound not applicable: delta_tk={delta_tk} >= threshold {thr:.6f}"
        )
    u = t - d
    s = u + gam * gam
    denom = s * (math.sqrt(u / s) - delta_tk)
    c1 = math.sqrt(2.0 * u * s * (1.0 + delta_tk)) / denom
    c2 = (
        math.sqrt(2.0) * delta_tk * gam + math.sqrt(s * (math.sqrt(u / s) - delta_tk) * delta_tk)
    ) / denom + 1.0 / math.sqrt(d)
    return c1, c2


def error_constants_unweighted(t: float, delta_tk: float) -> tuple[float, float]:
    """(c1, c2) of the classical unweighted bound; c2 without the 1/sqrt(d) term.

    c1 = sqrt(2 (1 + delta)) / (1 - sqrt(t/(t-1)) delta) and
    c2 = (sqrt(2) delta + sqrt((sqrt(t(t-1)) - delta t) delta)) / (sqrt(t(t-1)) - delta t).
    """
    if t <= 1:
        raise ValueError("need t > 1")
    if not delta_tk < math.sqrt((t - 1.0) / t):
        raise ValueError("bound not applicable")
    c1 = math.sqrt(2.0 * (1.0 + delta_tk)) / (1.0 - math.sqrt(t / (t - 1.0)) * delta_tk)
    root = math.sqrt(t * (t - 1.0)) - delta_tk * t
    c2 = (math.sqrt(2.0) * delta_tk + math.sqrt(root * delta_tk)) / root
    return c1, c2


def error_bound(
    c1: float,
    c2: float,
    zeta: float,
    eps: float,
    eta: float,
    k: int,
    omega: float,
    tail_t0: float,
    tail_joint: float,
) -> float:
    """Reconstruction error bound assembled from its constants and tail norms.

    ``C1 (zeta + eps) + 2 C2 (omega tail_t0 + (1 - omega) tail_joint) / sqrt(k)
    + C2 eta / sqrt(k)``, where ``tail_t0`` is the l1 mass off the dominant
    support and ``tail_joint`` the mass off both the support and the prior.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    rk = math.sqrt(k)
    return (
        c1 * (zeta + eps)
        + c2 * 2.0 * (omega * tail_t0 + (1.0 - omega) * tail_joint) / rk
        + c2 * eta / rk
    )


@dataclass(frozen=True)
class TheoryParams:
    """Inputs of the recovery bounds: prior quality, order factor, isometry data."""

    omega: float
    rho: float
    alpha: float
    t: float
    delta_tk: float
    theta_minus: float
    theta_plus: float

    def __post_init__(self):
        if not 0.0 <= self.omega <= 1.0:
            raise ValueError("omega must lie in [0, 1]")
        if self.rho < 0:
            raise ValueError("rho must be nonnegative")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if not 0.0 <= self.delta_tk < 1.0:
            raise ValueError("delta_tk must lie in [0, 1)")
        for theta in (self.theta_minus, self.theta_plus):
            if not 0.0 < theta < 2.0:
                raise ValueError("theta bounds must lie in (0, 2)")


@dataclass(frozen=True)
class BoundConstants:
    """Derived constants of the recovery bounds for one parameter point."""

    gamma: float
    a: float
    d: float
    t_omega: float
    c1: float
    c2: float
    delta_threshold: float


def bound_constants(params: TheoryParams) -> BoundConstants:
    """Assemble every derived constant for one parameter point.

    Requires ``t > d`` and ``delta_tk`` below the threshold, like
    :func:`error_constants`.
    """
    gam = gamma(params.omega, params.rho, params.alpha)
    d = d_const(params.omega, params.rho, params.alpha)
    c1, c2 = error_constants(params.t, params.delta_tk, params.omega,
                             params.rho, params.alpha)
    return BoundConstants(
        gamma=gam,
        a=max(params.alpha, 1.0 - params.alpha) * params.rho,
        d=d,
        t_omega=t_omega(params.omega, params.rho, params.alpha,
                        params.theta_minus, params.theta_plus),
        c1=c1,
        c2=c2,
        delta_threshold=delta_threshold(params.t, d, gam),
    )


@dataclass(frozen=True)
class ConstantsRow:
    """One grid point of the constants sweep."""

    alpha: float
    omega: float
    t_omega: float
    c1: float
    c2: float
    applicable: bool


def constants_table(
    rho: float,
    theta_minus: float,
    theta_plus: float,
    t: float,
    delta_tk: float,
    alphas,
    omegas,
) -> list[ConstantsRow]:
    """Sweep (alpha, omega) grids: t_omega plus (C1, C2) at the fixed (t, delta).

    Grid points where the bound is not applicable (delta at or above the
    threshold) are emitted with ``applicable=False`` and NaN constants rather
    than dropped, so downstream CSV stays rectangular.
    """
    alphas = list(alphas)
    omegas = list(omegas)
    if not alphas or not omegas:
        raise ValueError("alpha and omega grids must be nonempty")
    rows = []
    for alpha in alphas:
        for omega in omegas:
            tw = t_omega(omega, rho, alpha, theta_minus, theta_plus)
            try:
                c1, c2 = error_constants(t, delta_tk, omega, rho, alpha)
                applicable = True
            except ValueError:
                c1, c2 = math.nan, math.nan
                applicable = False
            rows.append(ConstantsRow(alpha, omega, tw, c1, c2, applicable))
    return rows
