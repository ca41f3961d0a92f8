"""Sharpness constants for the reverse Jensen inequality.

For a strictly convex twice differentiable ``g`` on ``[m, M]`` the secant line
``mu*t + nu`` through ``(m, g(m))`` and ``(M, g(M))`` dominates ``g``; the
sharp ratio ``gamma = (mu*t0 + nu) / g(t0)`` is attained at the unique
stationary point ``t0`` of the ratio, the root of
``mu*g(t) = g'(t)*(mu*t + nu)``. Power functions give the generalized
Kantorovich constant.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    IntervalError,
    ParameterError,
    RootBracketError,
    SingularConstantError,
)
from .functions import power_function

__all__ = [
    "GammaResult",
    "secant_coeffs",
    "solve_t0",
    "gamma_constant",
    "kantorovich_power",
    "kantorovich_abs_power",
]

#: Number of scan points used to bracket the root of the gamma equation.
SCAN_POINTS = 1024

#: Bisection terminates when the bracket is narrower than this.
BISECT_WIDTH = 1e-13


@dataclass(frozen=True)
class GammaResult:
    """Sharpness data for one interval: secant coefficients, root, ratio.

    ``residual`` is the value of ``mu*g(t0) - g'(t0)*(mu*t0 + nu)`` at the
    reported root.
    """

    m: float
    M: float
    mu: float
    nu: float
    t0: float
    gamma: float
    residual: float

    def __post_init__(self):
        if not self.m <= self.t0 <= self.M:
            raise ValueError(f"t0={self.t0!r} outside [{self.m!r}, {self.M!r}]")
        if not (self.gamma >= 1 - 1e-9 or np.isinf(self.gamma)):
            raise ValueError(f"gamma={self.gamma!r} below 1")


def secant_coeffs(g, m: float, M: float) -> tuple[float, float]:
    """Slope and intercept of the chord of g over [m, M]."""
    if not m < M:
        raise IntervalError(f"need m < M, got m={m!r}, M={M!r}")
    gm, gM = float(g(m)), float(g(M))
    mu = (gM - gm) / (M - m)
    nu = (M * gm - m * gM) / (M - m)
    return mu, nu


def _gamma_equation(g, mu, nu):
    def h(t):
        return mu * float(g(t)) - float(g.deriv(t)) * (mu * t + nu)

    return h


def solve_t0(g, m: float, M: float) -> float:
    """Root of ``mu*g(t) = g'(t)(mu*t + nu)`` in [m, M].

    Strategy per the uniqueness claim: a SCAN_POINTS-point scan for a sign
    change, bisection of the bracket down to BISECT_WIDTH, then two Newton
    polish steps (finite-difference derivative), clamped back into [m, M].
    Raises :class:`~superquad.errors.RootBracketError` when no sign change is
    found; warns if the scan sees more than one bracket.
    """
    mu, nu = secant_coeffs(g, m, M)
    h = _gamma_equation(g, mu, nu)
    ts = np.linspace(m, M, SCAN_POINTS)
    hs = np.array([h(t) for t in ts])
    signs = np.sign(hs)

    zeros = np.nonzero(signs == 0)[0]
    flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    if len(flips) + len(zeros) > 1:
        warnings.warn(
            f"gamma root equation shows {len(flips)} sign changes and "
            f"{len(zeros)} exact zeros on [{m!r}, {M!r}]; using the first "
            "(uniqueness assumed)",
            RuntimeWarning,
            stacklevel=2,
        )
    if zeros.size and (not flips.size or zeros[0] <= flips[0]):
        return float(ts[zeros[0]])
    if not flips.size:
        raise RootBracketError(
            f"no sign change of the gamma root equation on [{m!r}, {M!r}] "
            f"({SCAN_POINTS}-point scan)"
        )

    lo, hi = float(ts[flips[0]]), float(ts[flips[0] + 1])
    flo = h(lo)
    while hi - lo > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        fm = h(mid)
        if fm == 0.0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    t0 = 0.5 * (lo + hi)

    span = M - m
    if span > 1e4 * BISECT_WIDTH:  # Newton polish is pointless on hairline intervals
        for _ in range(2):
            eps = 1e-7 * max(1.0, abs(t0))
            d = (h(t0 + eps) - h(t0 - eps)) / (2 * eps)
            if d == 0.0:
                break
            t0 = t0 - h(t0) / d
        t0 = min(max(t0, m), M)
    return float(t0)


def gamma_constant(g, m: float, M: float) -> GammaResult:
    """Sharp reverse-Jensen constant of g over [m, M].

    A degenerate interval ``m == M`` returns ``gamma = 1`` (the inequality is
    an equality for scalar-spectrum arguments). ``g(t0)`` within 1e-14 of zero
    raises :class:`~superquad.errors.SingularConstantError` -- in particular
    the even powers ``g = |t|^p`` on an interval straddling 0, whose sharp
    ratio is unbounded.
    """
    if m > M:
        raise IntervalError(f"need m <= M, got m={m!r}, M={M!r}")
    if m == M:
        return GammaResult(m=m, M=M, mu=float(g.deriv(m)), nu=float(g(m) - g.deriv(m) * m),
                           t0=m, gamma=1.0, residual=0.0)
    mu, nu = secant_coeffs(g, m, M)
    t0 = solve_t0(g, m, M)
    gt0 = float(g(t0))
    scale = max(1.0, abs(mu) * max(abs(float(g(m))), abs(float(g(M)))))
    if abs(gt0) <= 1e-14 * scale:
        raise SingularConstantError(
            f"g(t0) = {gt0!r} at t0 = {t0!r}: sharpness constant is undefined "
            f"on [{m!r}, {M!r}] (unbounded ratio)"
        )
    residual = float(mu * g(t0) - g.deriv(t0) * (mu * t0 + nu))
    return GammaResult(m=m, M=M, mu=mu, nu=nu, t0=t0,
                       gamma=(mu * t0 + nu) / gt0, residual=residual)


def kantorovich_power(m: float, M: float, p: float) -> float:
    """Generalized Kantorovich constant K(m, M, p) via the gamma machinery."""
    if not 0 < m < M:
        raise ParameterError(f"need 0 < m < M, got m={m!r}, M={M!r}")
    if 0 <= p <= 1:
        raise ParameterError(f"need p outside [0, 1], got {p!r}")
    return float(gamma_constant(power_function(p), m, M).gamma)


def kantorovich_abs_power(m: float, M: float, p: float) -> float:
    """Closed form of K(m, M, g) for ``g(t) = |t|^p``.

    ``K = (m|M|^p - M|m|^p) / ((p-1)(M-m)) *
    |((p-1)/p) * (|M|^p - |m|^p) / (m|M|^p - M|m|^p)|^p``; agrees with
    :func:`kantorovich_power` whenever ``0 < m < M``. Raises
    :class:`~superquad.errors.SingularConstantError` when the denominator
    ``m|M|^p - M|m|^p`` vanishes.
    """
    if not m < M:
        raise ParameterError(f"need m < M, got m={m!r}, M={M!r}")
    if not p >= 2:
        raise ParameterError(f"need p >= 2, got {p!r}")
    am, aM = abs(m) ** p, abs(M) ** p
    den = m * aM - M * am
    scale = max(1.0, abs(m) * aM, abs(M) * am)
    if abs(den) <= 1e-14 * scale:
        raise SingularConstantError(
            f"denominator m|M|^p - M|m|^p = {den!r} vanishes for "
            f"m={m!r}, M={M!r}, p={p!r}"
        )
    lead = den / ((p - 1) * (M - m))
    inner = (p - 1) / p * (aM - am) / den
    return float(lead * abs(inner) ** p)
