"""Dense real symmetric linear algebra.

Everything here works on plain ``numpy`` arrays. Symmetric matrices enter
through :func:`symmetrize`, which tolerates file-format rounding but rejects
genuinely asymmetric data; eigenvalues are always reported in descending
order; matrix functions go through the spectral calculus
``f(A) = Q diag(f(lam)) Q^T``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AsymmetryError,
    ComputationError,
    DimensionError,
    DomainError,
    NotPsdError,
    OrderError,
)

__all__ = [
    "Tolerance",
    "OrderVerdict",
    "SpectralDecomposition",
    "SpectralRange",
    "symmetrize",
    "eigh_desc",
    "spectral_range",
    "apply_scalar_function",
    "matrix_abs",
    "sqrt_psd",
    "loewner_leq",
    "eig_order_leq",
    "conjugating_orthogonal",
    "congruence_orthogonal",
    "orthogonality_residual",
]

#: Default absolute tolerance for order comparisons.
DEFAULT_ATOL = 1e-9

#: Relative threshold below which negative eigenvalues of a nominally PSD
#: matrix are treated as eigensolver noise and clamped to zero.
PSD_CLAMP_RTOL = 1e-10


@dataclass(frozen=True)
class Tolerance:
    """Comparison tolerance: the effective slack is ``atol + rtol * scale``."""

    atol: float = DEFAULT_ATOL
    rtol: float = 0.0

    def slack(self, scale: float) -> float:
        return self.atol + self.rtol * scale


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of a matrix-order comparison.

    ``margin`` is signed: the smallest amount by which the claimed dominance
    holds (negative means the comparison fails by that much before slack is
    applied). ``mode`` records which order was tested so the verdict can be
    recomputed from its operands.
    """

    passed: bool
    margin: float
    mode: str  # "loewner" | "eig_order"
    slack: float = 0.0

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in descending order with a matching orthonormal frame."""

    eigenvalues: np.ndarray
    frame: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.frame * self.eigenvalues) @ self.frame.T


@dataclass(frozen=True)
class SpectralRange:
    """Smallest and largest eigenvalue of a symmetric matrix."""

    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo


def symmetrize(m, rtol: float = 1e-8) -> np.ndarray:
    """Validate and return the symmetric part of ``m``.

    ``(m + m^T) / 2`` is returned when the asymmetry is within
    ``rtol * max(1, ||m||_F)``; larger asymmetry raises
    :class:`~superquad.errors.AsymmetryError` rather than being averaged away.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 1:
        raise DimensionError("matrix dimension must be >= 1")
    skew = np.linalg.norm(m - m.T)
    if skew > rtol * max(1.0, np.linalg.norm(m)):
        raise AsymmetryError(
            f"matrix is not symmetric: ||m - m^T||_F = {skew:.3e} "
            f"exceeds tolerance {rtol:.1e} * max(1, ||m||_F)"
        )
    return (m + m.T) / 2


def eigh_desc(m) -> SpectralDecomposition:
    """Eigendecomposition with eigenvalues sorted in descending order."""
    m = symmetrize(m)
    try:
        w, q = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - solver failure
        raise ComputationError(f"eigensolver failed on matrix {m!r}: {exc}") from exc
    return SpectralDecomposition(eigenvalues=w[::-1].copy(), frame=q[:, ::-1].copy())


def spectral_range(m) -> SpectralRange:
    """Smallest and largest eigenvalue of a symmetric matrix."""
    w = np.linalg.eigvalsh(symmetrize(m))
    return SpectralRange(lo=float(w[0]), hi=float(w[-1]))


def _eval_on_spectrum(fn, w, domain_lo, name):
    """Apply a scalar function to eigenvalues, clamping solver noise.

    Eigenvalues below ``domain_lo`` by less than ``PSD_CLAMP_RTOL * max(1,
    ||m||_2)`` are snapped onto the boundary; anything further out raises
    :class:`~superquad.errors.DomainError` naming the offending eigenvalue.
    """
    if domain_lo is None or domain_lo == -np.inf:
        return fn(w)
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 1.0)
    clamp = PSD_CLAMP_RTOL * scale
    wc = w.copy()
    low = wc < domain_lo
    if np.any(wc < domain_lo - clamp):
        bad = float(wc[wc < domain_lo - clamp][0])
        raise DomainError(
            f"eigenvalue {bad!r} lies outside the domain [{domain_lo}, inf) of {name}"
        )
    wc[low] = domain_lo
    return fn(wc)


def apply_scalar_function(f, m) -> np.ndarray:
    """Spectral functional calculus ``f(m) = Q diag(f(lam)) Q^T``.

    ``f`` may be a :class:`~superquad.functions.ScalarFunctionModel` (its
    ``domain_lo`` is enforced with the clamping rule above) or any plain
    callable, in which case no domain check is performed.
    """
    dec = eigh_desc(m)
    domain_lo = getattr(f, "domain_lo", None)
    name = getattr(f, "name", getattr(f, "__name__", "f"))
    fw = np.asarray(_eval_on_spectrum(f, dec.eigenvalues, domain_lo, name), dtype=float)
    out = (dec.frame * fw) @ dec.frame.T
    return (out + out.T) / 2


def matrix_abs(m) -> np.ndarray:
    """Matrix absolute value ``|m| = (m^2)^{1/2}`` via the spectral calculus."""
    return apply_scalar_function(np.abs, m)


def sqrt_psd(m) -> np.ndarray:
    """Principal square root of a PSD matrix.

    Negative eigenvalues within ``PSD_CLAMP_RTOL * max(1, ||m||_2)`` of zero
    are clamped (eigensolver noise on genuinely PSD inputs); anything below
    raises :class:`~superquad.errors.NotPsdError` with the offending margin.
    """
    dec = eigh_desc(m)
    w = dec.eigenvalues
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 1.0)
    floor = -PSD_CLAMP_RTOL * scale
    wmin = float(w[-1])
    if wmin < floor:
        raise NotPsdError(
            f"matrix is not PSD: smallest eigenvalue {wmin!r} below clamp "
            f"threshold {floor!r}",
            margin=wmin,
        )
    out = (dec.frame * np.sqrt(np.clip(w, 0.0, None))) @ dec.frame.T
    return (out + out.T) / 2


def _check_same_dim(h, k):
    if h.shape != k.shape:
        raise DimensionError(f"dimension mismatch: {h.shape} vs {k.shape}")


def loewner_leq(h, k, tol: Tolerance | None = None) -> OrderVerdict:
    """Test ``h <= k`` in the Loewner order.

    The signed margin is the smallest eigenvalue of ``k - h``; the verdict
    passes when it is at least ``-(atol + rtol * ||k - h||_2)``.
    """
    tol = tol or Tolerance()
    h = symmetrize(h)
    k = symmetrize(k)
    _check_same_dim(h, k)
    diff = k - h
    w = np.linalg.eigvalsh(diff)
    margin = float(w[0])
    slack = tol.slack(float(np.max(np.abs(w))) if w.size else 0.0)
    return OrderVerdict(passed=margin >= -slack, margin=margin, mode="loewner", slack=slack)


def eig_order_leq(h, k, tol: Tolerance | None = None) -> OrderVerdict:
    """Test ``lambda_j(h) <= lambda_j(k)`` for every j (both sorted descending)."""
    tol = tol or Tolerance()
    h = symmetrize(h)
    k = symmetrize(k)
    _check_same_dim(h, k)
    wh = np.linalg.eigvalsh(h)[::-1]
    wk = np.linalg.eigvalsh(k)[::-1]
    gaps = wk - wh
    margin = float(np.min(gaps))
    scale = max(float(np.max(np.abs(wh), initial=0.0)), float(np.max(np.abs(wk), initial=0.0)))
    slack = tol.slack(scale)
    return OrderVerdict(passed=margin >= -slack, margin=margin, mode="eig_order", slack=slack)


def _frame_conjugator(h, k) -> np.ndarray:
    """Orthogonal Q = frame(k) frame(h)^T, without the order precondition."""
    return eigh_desc(k).frame @ eigh_desc(h).frame.T


def conjugating_orthogonal(h, k, tol: Tolerance | None = None) -> np.ndarray:
    """Orthogonal witness for the eigenvalue order: ``h <= Q^T k Q``.

    Requires ``lambda^down(h) <= lambda^down(k)``; returns
    ``Q = frame(k) frame(h)^T`` so that ``Q^T k Q`` shares h's eigenbasis with
    k's (larger) eigenvalues. Raises :class:`~superquad.errors.OrderError`
    with the first failing index when the precondition does not hold.
    """
    tol = tol or Tolerance()
    h = symmetrize(h)
    k = symmetrize(k)
    _check_same_dim(h, k)
    wh = np.linalg.eigvalsh(h)[::-1]
    wk = np.linalg.eigvalsh(k)[::-1]
    scale = max(float(np.max(np.abs(wh), initial=0.0)), float(np.max(np.abs(wk), initial=0.0)))
    bad = np.nonzero(wh > wk + tol.slack(scale))[0]
    if bad.size:
        j = int(bad[0])
        raise OrderError(
            f"eigenvalue order fails at index {j}: {wh[j]!r} > {wk[j]!r}",
            index=j,
        )
    return _frame_conjugator(h, k)


def congruence_orthogonal(z) -> np.ndarray:
    """Orthogonal W with ``z z^T = W (z^T z) W^T``, from the SVD ``z = U S V^T``."""
    z = np.asarray(z, dtype=float)
    if z.ndim != 2 or z.shape[0] != z.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {z.shape}")
    try:
        u, _, vt = np.linalg.svd(z)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - solver failure
        raise ComputationError(f"SVD failed on matrix {z!r}: {exc}") from exc
    return u @ vt


def orthogonality_residual(q) -> float:
    """``||Q^T Q - I||_F``, the defect from orthogonality."""
    q = np.asarray(q, dtype=float)
    return float(np.linalg.norm(q.T @ q - np.eye(q.shape[1])))
