"""Bound matrices and bound vectors for the eigenvalue inequalities.

Builders for the concave-decreasing bound S, the unital-positive-map vector
bound, the convex-increasing bound T with its sharpness corrections, the
power-mean corollaries, the subadditivity sandwich for matrix powers (both
correction variants), and the contraction dilation with its block conclusion.

Every builder returns a report carrying the left-hand side, the bound, a
recomputable verdict and the named intermediate quantities.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import GammaResult, gamma_constant
from .errors import (
    ClassificationError,
    DimensionError,
    DomainError,
    ParameterError,
    SingularityError,
    UnitalityError,
)
from .functions import ScalarFunctionModel, abs_compose
from .linalg import (
    OrderVerdict,
    Tolerance,
    apply_scalar_function,
    conjugating_orthogonal,
    congruence_orthogonal,
    eig_order_leq,
    loewner_leq,
    matrix_abs,
    spectral_range,
    sqrt_psd,
    symmetrize,
)

__all__ = [
    "PositiveMapCD",
    "BoundReport",
    "SandwichReport",
    "concave_bound_S",
    "cor_power_mean_reverse",
    "cor_sum_lower",
    "phi_bound",
    "combine_pair_bound",
    "convex_bound_T",
    "cor_midpoint_convex",
    "cor_power_convex",
    "subadditivity_sandwich",
    "dilation_pair",
    "dilation_block_bound",
]

UNITALITY_TOL = 1e-10


@dataclass(frozen=True)
class PositiveMapCD:
    """The unital positive map ``Phi(X) = c^T X c + d^T X d``.

    ``c`` and ``d`` may be rectangular (rows = input dimension, columns =
    output dimension); unitality means ``c^T c + d^T d = I`` on the output
    side.
    """

    c: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        d = np.asarray(self.d, dtype=float)
        if c.shape != d.shape:
            raise DimensionError(f"c and d must share a shape: {c.shape} vs {d.shape}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        res = self.unitality_residual
        if res > UNITALITY_TOL:
            raise UnitalityError(
                f"map is not unital: ||c^T c + d^T d - I||_F = {res:.3e}",
                residual=res,
            )

    @property
    def input_dim(self) -> int:
        return self.c.shape[0]

    @property
    def output_dim(self) -> int:
        return self.c.shape[1]

    @property
    def unitality_residual(self) -> float:
        eye = np.eye(self.output_dim)
        return float(np.linalg.norm(self.c.T @ self.c + self.d.T @ self.d - eye))

    def apply(self, m) -> np.ndarray:
        m = symmetrize(m)
        if m.shape[0] != self.input_dim:
            raise DimensionError(
                f"map expects {self.input_dim}x{self.input_dim} input, got {m.shape}"
            )
        out = self.c.T @ m @ self.c + self.d.T @ m @ self.d
        return (out + out.T) / 2


@dataclass
class BoundReport:
    """One bound evaluation: lhs, bound (matrix or spectrum), verdict, parts."""

    name: str
    lhs: np.ndarray
    verdict: OrderVerdict
    bound: np.ndarray | None = None
    bound_spectrum: np.ndarray | None = None
    ingredients: dict = field(default_factory=dict)


@dataclass
class SandwichReport:
    """Two-sided subadditivity report for ``(x + y)^q``."""

    lower: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    upper: np.ndarray
    v1: np.ndarray
    v2: np.ndarray
    correction_variant: str
    correction_value: float
    lower_verdict: OrderVerdict
    upper_verdict: OrderVerdict
    ingredients: dict = field(default_factory=dict)


def _require_flags(f: ScalarFunctionModel, **wanted):
    missing = [k for k, v in wanted.items() if getattr(f, k) != v]
    if missing:
        raise ClassificationError(
            f"function {f.spec} lacks required classification "
            f"{ {k: wanted[k] for k in missing} } (has "
            f"{ {k: getattr(f, k) for k in missing} })"
        )


def _scalar(f, t: float) -> float:
    return float(f(t))


def _eig_desc(m) -> np.ndarray:
    return np.linalg.eigvalsh(symmetrize(m))[::-1]


def _vector_order_verdict(lhs_spectrum, bound_spectrum, tol: Tolerance) -> OrderVerdict:
    gaps = np.asarray(bound_spectrum, float) - np.asarray(lhs_spectrum, float)
    margin = float(np.min(gaps))
    scale = max(float(np.max(np.abs(lhs_spectrum), initial=0.0)),
                float(np.max(np.abs(bound_spectrum), initial=0.0)))
    slack = tol.slack(scale)
    return OrderVerdict(passed=margin >= -slack, margin=margin,
                        mode="eig_order", slack=slack)


def concave_bound_S(f: ScalarFunctionModel, a, b, alpha: float,
                    tol: Tolerance | None = None) -> BoundReport:
    """Concave-decreasing bound: eigenvalues of ``f((1-a)A + aB)`` vs S.

    ``S = (1-a)(f(A) - f(gap_A) - f(a|A-B|)) + a(f(B) - f(gap_B) - f((1-a)|A-B|))``
    with ``gap = lambda_1 - lambda_n`` and scalars entering as multiples of I.
    """
    _require_flags(f, superquadratic=True, convex=False, increasing=False)
    if not 0 <= alpha <= 1:
        raise ParameterError(f"alpha must lie in [0, 1], got {alpha!r}")
    a = symmetrize(a)
    b = symmetrize(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    tol = tol or Tolerance()
    n = a.shape[0]
    eye = np.eye(n)
    ra, rb = spectral_range(a), spectral_range(b)
    absd = matrix_abs(a - b)
    fa = apply_scalar_function(f, a)
    fb = apply_scalar_function(f, b)
    s = ((1 - alpha) * (fa - _scalar(f, ra.width) * eye
                        - apply_scalar_function(f, alpha * absd))
         + alpha * (fb - _scalar(f, rb.width) * eye
                    - apply_scalar_function(f, (1 - alpha) * absd)))
    lhs = apply_scalar_function(f, (1 - alpha) * a + alpha * b)
    verdict = eig_order_leq(lhs, s, tol)
    return BoundReport(
        name="thm21", lhs=lhs, bound=s, verdict=verdict,
        ingredients={
            "f": f.spec, "alpha": alpha,
            "gap_a": ra.width, "gap_b": rb.width,
            "abs_diff_spectrum": _eig_desc(absd),
            "lhs_spectrum": _eig_desc(lhs),
            "bound_spectrum": _eig_desc(s),
        },
    )


def cor_power_mean_reverse(a, b, q: float, tol: Tolerance | None = None) -> BoundReport:
    """Reverse power-mean bound with an explicit conjugating orthogonal.

    ``(A^q + B^q)/2 <= V ((A+B)/2)^q V^T + |(A-B)/2|^q + s I`` where
    ``s = (gap_A^q + gap_B^q)/2``, in the Loewner order.
    """
    if not 1 <= q <= 2:
        raise ParameterError(f"q must lie in [1, 2], got {q!r}")
    from .functions import make_function

    f = make_function("neg_pow_q", q)
    tol = tol or Tolerance()
    rep = concave_bound_S(f, a, b, 0.5, tol)
    a = symmetrize(a)
    b = symmetrize(b)
    n = a.shape[0]
    mid_pow = apply_scalar_function(lambda t: np.abs(t) ** q, (a + b) / 2)
    v = conjugating_orthogonal(rep.lhs, rep.bound, Tolerance(max(tol.atol, 1e-8), tol.rtol))
    aq = apply_scalar_function(lambda t: np.abs(t) ** q, a)
    bq = apply_scalar_function(lambda t: np.abs(t) ** q, b)
    scalar = (rep.ingredients["gap_a"] ** q + rep.ingredients["gap_b"] ** q) / 2
    abs_half_pow = apply_scalar_function(lambda t: np.abs(t) ** q, matrix_abs((a - b) / 2))
    bound = v @ mid_pow @ v.T + abs_half_pow + scalar * np.eye(n)
    bound = (bound + bound.T) / 2
    lhs = (aq + bq) / 2
    verdict = loewner_leq(lhs, bound, tol)
    return BoundReport(
        name="cor23", lhs=lhs, bound=bound, verdict=verdict,
        ingredients={
            "q": q, "conjugator": v, "scalar_term": scalar,
            "lhs_spectrum": _eig_desc(lhs),
            "mid_power_spectrum": _eig_desc(mid_pow),
            "bound_spectrum": _eig_desc(bound),
        },
    )


def cor_sum_lower(a, b, q: float, tol: Tolerance | None = None) -> BoundReport:
    """Lower estimate for eigenvalues of ``(A + B)^q``.

    ``lambda[(A+B)^q] >= lambda[2^{q-1}(A^q + B^q - (gap_A^q + gap_B^q) I) - |A-B|^q]``.
    The equivalent midpoint form (the bound divided by ``2^q``) is recorded in
    the ingredients.
    """
    if not 1 <= q <= 2:
        raise ParameterError(f"q must lie in [1, 2], got {q!r}")
    tol = tol or Tolerance()
    a = symmetrize(a)
    b = symmetrize(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    pw = lambda t: np.abs(t) ** q
    ra, rb = spectral_range(a), spectral_range(b)
    for m, label in ((a, "a"), (b, "b")):
        if spectral_range(m).lo < -1e-10 * max(1.0, np.linalg.norm(m, 2)):
            raise DomainError(f"{label} must be PSD for the power-sum bound")
    aq = apply_scalar_function(pw, a)
    bq = apply_scalar_function(pw, b)
    scalar = ra.width ** q + rb.width ** q
    bound = 2 ** (q - 1) * (aq + bq - scalar * np.eye(a.shape[0])) \
        - apply_scalar_function(pw, matrix_abs(a - b))
    bound = (bound + bound.T) / 2
    lhs = apply_scalar_function(pw, a + b)
    verdict = eig_order_leq(bound, lhs, tol)  # bound sits below lhs
    midpoint_form = bound / 2 ** q
    return BoundReport(
        name="cor24", lhs=lhs, bound=bound, verdict=verdict,
        ingredients={
            "q": q, "scalar_term": scalar,
            "lhs_spectrum": _eig_desc(lhs),
            "bound_spectrum": _eig_desc(bound),
            "midpoint_form_spectrum": _eig_desc(midpoint_form),
        },
    )


def phi_bound(f: ScalarFunctionModel, phi: PositiveMapCD, a,
              tol: Tolerance | None = None) -> BoundReport:
    """Unital-positive-map bound, in vector form.

    ``lambda_k(f(Phi(A))) <= lambda_k(Phi(f(A))) - f(lambda_1(A) - lambda_n(A))``.
    """
    _require_flags(f, superquadratic=True, convex=False, increasing=False)
    tol = tol or Tolerance()
    a = symmetrize(a)
    if a.shape[0] != phi.input_dim:
        raise DimensionError(
            f"matrix dimension {a.shape[0]} does not match map input {phi.input_dim}"
        )
    ra = spectral_range(a)
    lhs = apply_scalar_function(f, phi.apply(a))
    mapped = phi.apply(apply_scalar_function(f, a))
    bound_spectrum = _eig_desc(mapped) - _scalar(f, ra.width)
    lhs_spectrum = _eig_desc(lhs)
    verdict = _vector_order_verdict(lhs_spectrum, bound_spectrum, tol)
    return BoundReport(
        name="thm25", lhs=lhs, bound_spectrum=bound_spectrum, verdict=verdict,
        ingredients={
            "f": f.spec, "gap": ra.width,
            "unitality_residual": phi.unitality_residual,
            "lhs_spectrum": lhs_spectrum,
            "mapped_spectrum": _eig_desc(mapped),
        },
    )


def combine_pair_bound(f: ScalarFunctionModel, a, b, alpha: float,
                       tol: Tolerance | None = None) -> BoundReport:
    """Two-matrix specialization of the map bound via the block dilation.

    Realized on ``A (+) B`` with the stacked map ``c = sqrt(1-alpha) I`` over
    ``d = sqrt(alpha) I`` (the published weights ``alpha I, (1-alpha) I``
    violate unitality; square roots restore it and reproduce the published
    bound ``(1-alpha) f(A) + alpha f(B)`` exactly):

    ``lambda(f((1-a)A + aB)) <= lambda((1-a)f(A) + a f(B))
    - f(max(lam_1(A), lam_1(B)) - min(lam_n(A), lam_n(B)))``.
    """
    if not 0 <= alpha <= 1:
        raise ParameterError(f"alpha must lie in [0, 1], got {alpha!r}")
    a = symmetrize(a)
    b = symmetrize(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    n = a.shape[0]
    eye = np.eye(n)
    zero = np.zeros((n, n))
    stacked_c = np.vstack([np.sqrt(1 - alpha) * eye, np.sqrt(alpha) * eye])
    stacked_d = np.zeros((2 * n, n))
    phi = PositiveMapCD(c=stacked_c, d=stacked_d)
    block = np.block([[a, zero], [zero, b]])
    rep = phi_bound(f, phi, block, tol)
    rep.name = "thm25_pair"
    rep.ingredients.update({"alpha": alpha, "map": "sqrt-weight block compression"})
    return rep


def _gamma_for_interval(g: ScalarFunctionModel, lo: float, hi: float) -> GammaResult:
    """Sharpness constant with the degenerate and straddling conventions.

    * ``lo == hi`` (within hairline rounding): gamma = 1 by continuity.
    * ``lo < 0 < hi`` with ``g(0) = 0``: the sharp ratio is unbounded, the
      root sits at 0 with residual ``-g'(0) nu`` (exactly 0 for even powers);
      gamma = +inf so the correction it scales vanishes.
    * otherwise: delegate to :func:`superquad.constants.gamma_constant`.
    """
    scale = max(1.0, abs(lo), abs(hi))
    if hi - lo <= 1e-12 * scale:
        mid = 0.5 * (lo + hi)
        return GammaResult(m=lo, M=hi, mu=float(g.deriv(mid)),
                           nu=float(g(mid) - g.deriv(mid) * mid),
                           t0=mid, gamma=1.0, residual=0.0)
    if lo < 0 < hi and abs(float(g(0.0))) <= 1e-14:
        from .constants import secant_coeffs

        mu, nu = secant_coeffs(g, lo, hi)
        residual = float(mu * g(0.0) - g.deriv(0.0) * nu)
        return GammaResult(m=lo, M=hi, mu=mu, nu=nu, t0=0.0,
                           gamma=np.inf, residual=residual)
    return gamma_constant(g, lo, hi)


def _check_invertible_diff(diff, context: str):
    norm2 = float(np.linalg.norm(diff, 2))
    if norm2 == 0.0:
        raise SingularityError(f"{context}: difference is zero")
    smin = float(np.linalg.svd(diff, compute_uv=False)[-1])
    if smin < 1e-10 * norm2:
        raise SingularityError(
            f"{context}: difference numerically singular "
            f"(sigma_min = {smin:.3e} < 1e-10 * ||diff||_2 = {1e-10 * norm2:.3e})"
        )


def _convex_T_core(f: ScalarFunctionModel, a, b, alpha: float,
                   tol: Tolerance, name: str) -> BoundReport:
    """The convex-increasing bound T without the positive-definite gate."""
    diff = a - b
    rng = spectral_range(diff)
    g = abs_compose(f)
    fa = apply_scalar_function(f, a)
    fb = apply_scalar_function(f, b)
    absd = matrix_abs(diff)
    if np.linalg.norm(diff) == 0.0:
        gamma1 = _gamma_for_interval(g, 0.0, 0.0)
        gamma2 = gamma1
    else:
        gamma1 = _gamma_for_interval(g, alpha * rng.lo, alpha * rng.hi)
        gamma2 = _gamma_for_interval(g, (1 - alpha) * rng.lo, (1 - alpha) * rng.hi)
    t_mat = ((1 - alpha) * fa + alpha * fb
             - (1 - alpha) / gamma1.gamma * apply_scalar_function(f, alpha * absd)
             - alpha / gamma2.gamma * apply_scalar_function(f, (1 - alpha) * absd))
    t_mat = (t_mat + t_mat.T) / 2
    lhs = apply_scalar_function(f, (1 - alpha) * a + alpha * b)
    verdict = eig_order_leq(lhs, t_mat, tol)
    return BoundReport(
        name=name, lhs=lhs, bound=t_mat, verdict=verdict,
        ingredients={
            "f": f.spec, "g": g.spec, "alpha": alpha,
            "difference_range": (rng.lo, rng.hi),
            "gamma_first": gamma1, "gamma_second": gamma2,
            "lhs_spectrum": _eig_desc(lhs),
            "bound_spectrum": _eig_desc(t_mat),
        },
    )


def _require_pd(m, label: str):
    lo = spectral_range(m).lo
    if lo <= 0:
        raise DomainError(
            f"{label} must be positive definite (smallest eigenvalue {lo!r})"
        )


def convex_bound_T(f: ScalarFunctionModel, a, b, alpha: float,
                   tol: Tolerance | None = None) -> BoundReport:
    """Convex-increasing bound: eigenvalues of ``f((1-a)A + aB)`` vs T.

    ``T = (1-a)f(A) + a f(B) - (1-a) gamma(a*ln, a*l1, g)^{-1} f(a|A-B|)
    - a gamma((1-a)*ln, (1-a)*l1, g)^{-1} f((1-a)|A-B|)`` with ``ln, l1`` the
    extreme eigenvalues of ``A - B`` and ``g = f(|.|)``. When the difference
    spectrum straddles 0 the gammas are infinite and the corrections vanish
    (the bound degenerates to the plain convex-increasing estimate).
    """
    _require_flags(f, superquadratic=True, convex=True, increasing=True,
                   positive=True, strictly_convex=True)
    if not 0 <= alpha <= 1:
        raise ParameterError(f"alpha must lie in [0, 1], got {alpha!r}")
    a = symmetrize(a)
    b = symmetrize(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    _require_pd(a, "a")
    _require_pd(b, "b")
    _check_invertible_diff(a - b, "convex_bound_T")
    return _convex_T_core(f, a, b, alpha, tol or Tolerance(), "thm29")


def cor_midpoint_convex(a, b, f: ScalarFunctionModel,
                        tol: Tolerance | None = None) -> BoundReport:
    """Midpoint form of the convex bound, as a Loewner inequality.

    ``f((A+B)/2) <= U^T [ (f(A)+f(B))/2 - gamma(ln/2, l1/2, g)^{-1}
    f(|(A-B)/2|) ] U`` with U the eigenvalue-order conjugator.
    """
    tol = tol or Tolerance()
    rep = convex_bound_T(f, a, b, 0.5, tol)
    u = conjugating_orthogonal(rep.lhs, rep.bound, Tolerance(max(tol.atol, 1e-8), 1e-12))
    conjugated = u.T @ rep.bound @ u
    conjugated = (conjugated + conjugated.T) / 2
    verdict = loewner_leq(rep.lhs, conjugated, tol)
    return BoundReport(
        name="cor210", lhs=rep.lhs, bound=conjugated, verdict=verdict,
        ingredients={**rep.ingredients, "conjugator": u,
                     "unconjugated_bound_spectrum": rep.ingredients["bound_spectrum"]},
    )


def cor_power_convex(a, b, p: float, tol: Tolerance | None = None) -> BoundReport:
    """Power-sum form of the convex bound with the closed-form constant.

    ``lambda[(A+B)^p] <= lambda[2^{p-1}(A^p + B^p) - K(ln/2, l1/2, g) |A-B|^p]``
    with K the closed-form Kantorovich constant of ``g = |t|^p``.
    """
    from .constants import kantorovich_abs_power
    from .functions import make_function

    f = make_function("pow_p", p)
    tol = tol or Tolerance()
    a = symmetrize(a)
    b = symmetrize(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    _require_pd(a, "a")
    _require_pd(b, "b")
    diff = a - b
    _check_invertible_diff(diff, "cor_power_convex")
    rng = spectral_range(diff)
    if abs(rng.hi - rng.lo) <= 1e-12 * max(1.0, abs(rng.hi), abs(rng.lo)):
        kconst = 1.0  # degenerate interval, scalar difference
    else:
        kconst = kantorovich_abs_power(rng.lo / 2, rng.hi / 2, p)
    pw = lambda t: np.abs(t) ** p
    lhs = apply_scalar_function(pw, a + b)
    bound = (2 ** (p - 1) * (apply_scalar_function(pw, a) + apply_scalar_function(pw, b))
             - kconst * apply_scalar_function(pw, matrix_abs(diff)))
    bound = (bound + bound.T) / 2
    verdict = eig_order_leq(lhs, bound, tol)
    return BoundReport(
        name="cor211", lhs=lhs, bound=bound, verdict=verdict,
        ingredients={
            "p": p, "kantorovich": kconst,
            "difference_range": (rng.lo, rng.hi),
            "lhs_spectrum": _eig_desc(lhs),
            "bound_spectrum": _eig_desc(bound),
        },
    )


def subadditivity_sandwich(x, y, q: float, variant: str = "derived",
                           tol: Tolerance | None = None) -> SandwichReport:
    """Constructive two-sided subadditivity for ``(X + Y)^q``, q in [1, 2].

    Lower: ``U1^T X^q U1 + U2^T Y^q U2 <= (X+Y)^q`` with witnesses from the
    unitary congruence ``Z^{(q-1)/2} X Z^{(q-1)/2} ~ X^{1/2} Z^{q-1} X^{1/2}``
    and operator monotonicity of ``t^{q-1}``.

    Upper: ``(X+Y)^q <= V1^T X^q V1 + V2^T Y^q V2 + 2 gap^q I`` where
    ``gap = lambda_1(X+Y) - lambda_n(X+Y)`` for ``variant="paper"`` (the
    published form; falsified by x = y = [[1]], q = 2) and
    ``gap = lambda_1(X+Y)`` for ``variant="derived"`` (the form the proof's
    block argument actually yields). Both margins are recorded.
    """
    if variant not in ("paper", "derived"):
        raise ParameterError(f"variant must be 'paper' or 'derived', got {variant!r}")
    if not 1 <= q <= 2:
        raise ParameterError(f"q must lie in [1, 2], got {q!r}")
    tol = tol or Tolerance()
    x = symmetrize(x)
    y = symmetrize(y)
    if x.shape != y.shape:
        raise DimensionError(f"dimension mismatch: {x.shape} vs {y.shape}")
    n = x.shape[0]
    z = x + y
    rng = spectral_range(z)
    if rng.lo < 1e-10:
        raise SingularityError(
            f"x + y must be positive definite (smallest eigenvalue {rng.lo!r})"
        )
    pw = lambda t: np.abs(t) ** q
    zq = apply_scalar_function(pw, z)
    xq = apply_scalar_function(pw, x)
    yq = apply_scalar_function(pw, y)
    xh = sqrt_psd(x)
    yh = sqrt_psd(y)
    zq1 = apply_scalar_function(lambda t: t ** (q - 1), z)
    zq1h = apply_scalar_function(lambda t: t ** ((q - 1) / 2), z)
    mx = symmetrize(xh @ zq1 @ xh)
    my = symmetrize(yh @ zq1 @ yh)
    w1 = congruence_orthogonal(zq1h @ xh)
    w2 = congruence_orthogonal(zq1h @ yh)

    u1, u2 = w1.T, w2.T
    lower = symmetrize(u1.T @ xq @ u1 + u2.T @ yq @ u2)
    lower_verdict = loewner_leq(lower, zq, tol)

    gaps = {"paper": rng.width, "derived": rng.hi}
    margins = {}
    reports = {}
    from .linalg import _frame_conjugator

    for name, gap in gaps.items():
        corr = 2 * gap ** q
        eye = np.eye(n)
        # order witness for -X^q vs -M_X + gap^q I; built from frames even
        # when the order fails (the "paper" variant's failure is the finding)
        order_x = eig_order_leq(-xq, -mx + (gap ** q) * eye, tol)
        order_y = eig_order_leq(-yq, -my + (gap ** q) * eye, tol)
        ux = _frame_conjugator(-xq, -mx + (gap ** q) * eye)
        uy = _frame_conjugator(-yq, -my + (gap ** q) * eye)
        v1 = ux.T @ w1.T
        v2 = uy.T @ w2.T
        upper = symmetrize(v1.T @ xq @ v1 + v2.T @ yq @ v2) + corr * eye
        upper_verdict = loewner_leq(zq, upper, tol)
        margins[name] = upper_verdict.margin
        reports[name] = (upper, v1, v2, corr, upper_verdict, order_x, order_y)

    upper, v1, v2, corr, upper_verdict, order_x, order_y = reports[variant]
    return SandwichReport(
        lower=lower, u1=u1, u2=u2, upper=upper, v1=v1, v2=v2,
        correction_variant=variant, correction_value=corr,
        lower_verdict=lower_verdict, upper_verdict=upper_verdict,
        ingredients={
            "q": q, "sum_range": (rng.lo, rng.hi),
            "upper_margin_paper": margins["paper"],
            "upper_margin_derived": margins["derived"],
            "eq_unit_order_held_x": order_x.passed,
            "eq_unit_order_held_y": order_y.passed,
            "lhs_spectrum": _eig_desc(zq),
            "lower_spectrum": _eig_desc(lower),
            "upper_spectrum": _eig_desc(upper),
        },
    )


def dilation_pair(x, c):
    """Orthogonal 2n-dilation of (x, contraction c).

    Returns ``(a, b, r1, r2)`` with ``a = r1^T (x (+) 0) r1``,
    ``b = r2^T (x (+) 0) r2``, so that ``(a + b)/2 = c^T x c (+) d x d`` and
    ``(a - b)/2`` is the off-diagonal block matrix of ``c^T x d``. The
    completions ``r1 = [[c, d], [d', -c^T]]`` and ``r2 = [[c, -d], [d', c^T]]``
    (``d = (I - c c^T)^{1/2}``, ``d' = (I - c^T c)^{1/2}``) are orthogonal for
    every contraction; the second block row never touches ``x (+) 0``.
    """
    x = symmetrize(x)
    _require_pd(x, "x")
    c = np.asarray(c, dtype=float)
    n = x.shape[0]
    if c.shape != (n, n):
        raise DimensionError(f"contraction must be {n}x{n}, got {c.shape}")
    cnorm = float(np.linalg.norm(c, 2))
    if cnorm > 1 + 1e-12:
        raise ParameterError(f"c is not a contraction: ||c||_2 = {cnorm!r} > 1")
    eye = np.eye(n)
    d = sqrt_psd(eye - c @ c.T)
    dp = sqrt_psd(eye - c.T @ c)
    r1 = np.block([[c, d], [dp, -c.T]])
    r2 = np.block([[c, -d], [dp, c.T]])
    zero = np.zeros((n, n))
    x0 = np.block([[x, zero], [zero, zero]])
    a = symmetrize(r1.T @ x0 @ r1)
    b = symmetrize(r2.T @ x0 @ r2)
    return a, b, r1, r2


def dilation_block_bound(x, c, f: ScalarFunctionModel,
                         tol: Tolerance | None = None) -> BoundReport:
    """Compression bound through the dilation: top-left block vs Y.

    Applies the convex bound at alpha = 1/2 to the dilated pair, conjugates
    ``f(c^T x c) (+) 0`` below the block-diagonal bound via the
    eigenvalue-order witness, and verifies that the extracted top-left block
    M satisfies ``M <= Y = c^T f(x) c - gamma^{-1} f((N N^T)^{1/2})`` with
    ``N = c^T x d``. The dilated difference always has a sign-symmetric
    spectrum, so gamma is infinite (correction vanishes) unless N = 0.
    """
    _require_flags(f, superquadratic=True, convex=True, increasing=True,
                   positive=True, strictly_convex=True)
    tol = tol or Tolerance()
    a, b, r1, r2 = dilation_pair(x, c)
    n = np.asarray(x).shape[0]
    diff = a - b
    degenerate = np.linalg.norm(diff) <= 1e-14 * max(1.0, np.linalg.norm(a) + np.linalg.norm(b))
    if not degenerate:
        _check_invertible_diff(diff, "dilation_block_bound")
    core = _convex_T_core(f, a, b, 0.5, tol, "thm29_dilated")
    t_mat = core.bound
    cxc = symmetrize(np.asarray(c, float).T @ symmetrize(x) @ np.asarray(c, float))
    lhs0 = np.zeros((2 * n, 2 * n))
    lhs0[:n, :n] = apply_scalar_function(f, cxc)
    u = conjugating_orthogonal(lhs0, t_mat, Tolerance(max(tol.atol, 1e-8), 1e-12))
    conjugated = u @ lhs0 @ u.T  # Q h Q^T <= k for Q = conjugating_orthogonal(h, k)
    m_block = symmetrize(conjugated[:n, :n])
    y_block = symmetrize(t_mat[:n, :n])
    verdict = loewner_leq(m_block, y_block, tol)
    d = sqrt_psd(np.eye(n) - np.asarray(c, float) @ np.asarray(c, float).T)
    nmat = np.asarray(c, float).T @ symmetrize(x) @ d
    return BoundReport(
        name="dilation", lhs=m_block, bound=y_block, verdict=verdict,
        ingredients={
            **core.ingredients,
            "r1": r1, "r2": r2, "conjugator": u,
            "difference_degenerate": degenerate,
            "block_conclusion_spectrum_lhs": _eig_desc(m_block),
            "block_conclusion_spectrum_bound": _eig_desc(y_block),
            "cxd_singular_values": np.linalg.svd(nmat, compute_uv=False),
        },
    )
