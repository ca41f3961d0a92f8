"""Scalar superquadratic function models.

Four families are registered, split between the two structural subclasses:

* ``pow_p``        -- ``t^p`` for ``p >= 2``           (convex, increasing, positive)
* ``x2_log``       -- ``t^2 ln t`` with ``f(0) := 0``  (convex, increasing)
* ``neg_pow_q``    -- ``-t^q`` for ``q in [1, 2]``     (concave, decreasing)
* ``neg_root_sum`` -- ``-(1 + t^{1/r})^r``, ``r in (0, 1]`` (concave, decreasing)

plus the raw family ``pow`` (``t^p``, unrestricted exponent) used when a bare
power is needed as the ``g`` of a sharpness constant. Models evaluate on
scalars or arrays and carry an explicit derivative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, ParameterError

__all__ = [
    "ScalarFunctionModel",
    "make_function",
    "parse_function",
    "power_function",
    "abs_compose",
    "superquadratic_gap",
    "jensen_gap_scalar",
    "definition_margin",
    "FAMILIES",
]


@dataclass(frozen=True)
class ScalarFunctionModel:
    """A scalar function with derivative, domain and class flags.

    Flags are declared per family (not inferred): ``convex=False`` means
    concave, ``increasing=False`` means decreasing. ``positive`` marks the
    members mapping ``(0, inf)`` into ``(0, inf)``.
    """

    name: str
    params: tuple = ()
    domain_lo: float = 0.0
    superquadratic: bool = True
    convex: bool = True
    increasing: bool = True
    positive: bool = False
    strictly_convex: bool = False
    _eval: callable = field(default=None, repr=False, compare=False)
    _deriv: callable = field(default=None, repr=False, compare=False)

    def __call__(self, t):
        return self._eval(np.asarray(t, dtype=float))

    def deriv(self, t):
        return self._deriv(np.asarray(t, dtype=float))

    @property
    def concave(self) -> bool:
        return not self.convex

    @property
    def decreasing(self) -> bool:
        return not self.increasing

    @property
    def spec(self) -> str:
        """The CLI specifier string, e.g. ``"neg_pow_q:1.5"``."""
        if not self.params:
            return self.name
        return f"{self.name}:{self.params[0]!r}"


def _pow_p(p: float) -> ScalarFunctionModel:
    if not p >= 2:
        raise ParameterError(f"pow_p requires p >= 2, got {p!r}")
    return ScalarFunctionModel(
        name="pow_p", params=(p,), positive=True, strictly_convex=True,
        _eval=lambda t: t ** p,
        _deriv=lambda t: p * t ** (p - 1),
    )


def _neg_pow_q(q: float) -> ScalarFunctionModel:
    if not 1 <= q <= 2:
        raise ParameterError(f"neg_pow_q requires q in [1, 2], got {q!r}")
    # q=1 at t=0: one-sided derivative -1 comes out of the formula (0^0 == 1).
    return ScalarFunctionModel(
        name="neg_pow_q", params=(q,), convex=False, increasing=False,
        _eval=lambda t: -(t ** q),
        _deriv=lambda t: -q * t ** (q - 1),
    )


def _x2_log() -> ScalarFunctionModel:
    def ev(t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        return np.where(t > 0, t * t * np.log(safe), 0.0)

    def dv(t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        return np.where(t > 0, 2 * t * np.log(safe) + t, 0.0)

    # f(0)=f'(0)=0 by continuous extension so matrices with a zero
    # eigenvalue stay in domain.
    return ScalarFunctionModel(name="x2_log", _eval=ev, _deriv=dv)


def _neg_root_sum(r: float) -> ScalarFunctionModel:
    if not 0 < r <= 1:
        raise ParameterError(f"neg_root_sum requires r in (0, 1], got {r!r}")

    def ev(t):
        return -((1 + t ** (1 / r)) ** r)

    def dv(t):
        t = np.asarray(t, dtype=float)
        return -((1 + t ** (1 / r)) ** (r - 1)) * t ** (1 / r - 1)

    return ScalarFunctionModel(
        name="neg_root_sum", params=(r,), convex=False, increasing=False,
        _eval=ev, _deriv=dv,
    )


def power_function(p: float) -> ScalarFunctionModel:
    """Bare ``t^p`` without the registry's ``p >= 2`` restriction.

    Used as the ``g`` of sharpness constants; flags reflect behaviour on
    ``(0, inf)`` for ``p`` outside ``[0, 1]``.
    """
    if 0 <= p <= 1:
        raise ParameterError(f"pow requires p outside [0, 1], got {p!r}")
    return ScalarFunctionModel(
        name="pow", params=(p,), positive=True,
        convex=not 0 < p < 1, increasing=p > 0,
        strictly_convex=not 0 <= p <= 1,
        superquadratic=p >= 2,
        domain_lo=0.0 if p > 1 else np.nextafter(0.0, 1.0),
        _eval=lambda t: t ** p,
        _deriv=lambda t: p * t ** (p - 1),
    )


def abs_compose(f: ScalarFunctionModel) -> ScalarFunctionModel:
    """The even extension ``g(t) = f(|t|)`` on the whole real line."""
    return ScalarFunctionModel(
        name=f"abs_{f.name}", params=f.params, domain_lo=-np.inf,
        superquadratic=f.superquadratic, convex=f.convex,
        increasing=False, positive=f.positive,
        strictly_convex=f.strictly_convex,
        _eval=lambda t: f._eval(np.abs(t)),
        _deriv=lambda t: np.sign(t) * f._deriv(np.abs(t)),
    )


FAMILIES = {
    "pow_p": (_pow_p, "p >= 2"),
    "neg_pow_q": (_neg_pow_q, "q in [1, 2]"),
    "x2_log": (lambda: _x2_log(), "no parameter"),
    "neg_root_sum": (_neg_root_sum, "r in (0, 1]"),
    "pow": (power_function, "p outside [0, 1]"),
}


def make_function(name: str, *params: float) -> ScalarFunctionModel:
    """Build a registry member by family name and parameter."""
    if name not in FAMILIES:
        raise ParameterError(
            f"unknown function family {name!r}; known: {sorted(FAMILIES)}"
        )
    factory, _ = FAMILIES[name]
    try:
        return factory(*params)
    except TypeError as exc:
        raise ParameterError(f"wrong parameter count for {name!r}: {exc}") from exc


def parse_function(spec: str) -> ScalarFunctionModel:
    """Parse a ``name:param`` specifier; the parameter may be rational ("4/3")."""
    name, _, raw = spec.partition(":")
    if not raw:
        return make_function(name)
    try:
        value = float(Fraction(raw))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"cannot parse parameter {raw!r} in {spec!r}") from exc
    return make_function(name, value)


def superquadratic_gap(f: ScalarFunctionModel, s: float, t: float) -> float:
    """Defining-inequality slack ``f(s) - f(t) - f'(t)(s - t) - f(|s - t|)``.

    Nonnegative (up to rounding) for every superquadratic f, with the
    derivative as the canonical choice of supporting constant.
    """
    if s < 0 or t < 0:
        raise DomainError(f"superquadratic_gap needs s, t >= 0, got ({s!r}, {t!r})")
    return float(f(s) - f(t) - f.deriv(t) * (s - t) - f(abs(s - t)))


def jensen_gap_scalar(f: ScalarFunctionModel, t: float, s: float, alpha: float) -> float:
    """Slack of the refined Jensen inequality at the pair (t, s) and weight alpha.

    Returns RHS - LHS of
    ``f(at + (1-a)s) <= a f(t) + (1-a) f(s) - a f((1-a)|t-s|) - (1-a) f(a|t-s|)``.
    """
    if t < 0 or s < 0:
        raise DomainError(f"jensen_gap_scalar needs t, s >= 0, got ({t!r}, {s!r})")
    if not 0 <= alpha <= 1:
        raise ParameterError(f"alpha must lie in [0, 1], got {alpha!r}")
    d = abs(t - s)
    lhs = f(alpha * t + (1 - alpha) * s)
    rhs = (alpha * f(t) + (1 - alpha) * f(s)
           - alpha * f((1 - alpha) * d) - (1 - alpha) * f(alpha * d))
    return float(rhs - lhs)


def definition_margin(f: ScalarFunctionModel, t: float, s_grid, delta: float = 2.0,
                      candidates: int = 81) -> float:
    """Best achievable defining-inequality margin at t over a grid of s.

    For families satisfying ``f(0) = f'(0) = 0`` the supporting constant is
    ``f'(t)`` and this reduces to ``min_s superquadratic_gap``. For
    ``neg_root_sum`` (where that premise fails) the constant is searched over
    the bracket ``[f'(t) - delta, f'(t) + delta]``; the margin of the best
    candidate is returned.
    """
    s_grid = np.asarray(s_grid, dtype=float)
    base = float(f.deriv(t))
    if f.name != "neg_root_sum":
        cs = [base]
    else:
        cs = base + np.linspace(-delta, delta, candidates)
    vals = f(s_grid) - f(t) - f(np.abs(s_grid - t))
    best = -np.inf
    for c in np.atleast_1d(cs):
        best = max(best, float(np.min(vals - c * (s_grid - t))))
    return best
