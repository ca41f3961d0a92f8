"""Randomized verification harness.

Deterministic instance generators (every draw is a pure function of its
seed), checkers for the preliminary vector inequalities, the estimate
comparison, and a suite runner that exercises every registered inequality
over seeded random instances, collecting worst margins and replayable
counterexamples.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .errors import (
    GenerationError,
    ParameterError,
    SingularConstantError,
    SingularityError,
    SuperquadError,
)
from .functions import ScalarFunctionModel, parse_function
from .linalg import (
    Tolerance,
    apply_scalar_function,
    matrix_abs,
    symmetrize,
)

__all__ = [
    "SuiteConfig",
    "SuiteReport",
    "CheckRecord",
    "ComparisonRecord",
    "random_psd",
    "random_pd_pair_invertible_diff",
    "random_unital_map",
    "random_unit_vector",
    "check_vector_jensen",
    "check_power_mean",
    "compare_estimates",
    "run_suite",
    "replay_counterexample",
    "CHECKS",
]


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def trial_seed(master_seed: int, trial_index: int) -> int:
    """Derive a per-trial integer seed from (master_seed, trial_index) only."""
    ss = np.random.SeedSequence([int(master_seed), int(trial_index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def random_psd(n: int, seed, spread: float = 10.0, lo: float = 0.0) -> np.ndarray:
    """Random PSD matrix ``Q diag(lam) Q^T`` with ``lam ~ U[lo, spread]``."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n!r}")
    if spread <= 0:
        raise ParameterError(f"spread must be positive, got {spread!r}")
    rng = _rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    lam = rng.uniform(lo, spread, size=n)
    return symmetrize((q * lam) @ q.T)


def random_pd_pair_invertible_diff(n: int, seed, spread: float = 10.0,
                                   gap: float = 0.1, definite: bool = False):
    """Positive-definite pair with ``sigma_min(a - b) >= gap``.

    Eigenvalues are drawn in ``[spread/10, spread]`` (comfortably above the
    spread/100 floor); pairs failing the gap are resampled, up to 1000
    attempts. ``definite=True`` forces ``a - b`` positive definite (a = b +
    PSD offset), the regime in which the sharpness constants are finite.
    """
    if gap <= 0:
        raise ParameterError(f"gap must be positive, got {gap!r}")
    rng = _rng(seed)
    for _ in range(1000):
        qa, _ = np.linalg.qr(rng.normal(size=(n, n)))
        b = symmetrize((qa * rng.uniform(spread / 10, spread, n)) @ qa.T)
        if definite:
            qo, _ = np.linalg.qr(rng.normal(size=(n, n)))
            offset = symmetrize((qo * rng.uniform(gap, spread / 2, n)) @ qo.T)
            a = b + offset
        else:
            qb, _ = np.linalg.qr(rng.normal(size=(n, n)))
            a = symmetrize((qb * rng.uniform(spread / 10, spread, n)) @ qb.T)
        if np.linalg.svd(a - b, compute_uv=False)[-1] >= gap:
            return a, b
    raise GenerationError(
        f"could not draw a pair with sigma_min(a-b) >= {gap!r} in 1000 attempts"
    )


def random_unital_map(n: int, seed) -> bounds.PositiveMapCD:
    """Random unital positive map: contraction c (||c|| <= 0.9), d = (I - c^T c)^{1/2}."""
    rng = _rng(seed)
    g = rng.normal(size=(n, n))
    c = 0.9 * g / np.linalg.norm(g, 2)
    from .linalg import sqrt_psd

    d = sqrt_psd(np.eye(n) - c.T @ c)
    return bounds.PositiveMapCD(c=c, d=d)


def random_unit_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=n)
    return v / np.linalg.norm(v)


# ---------------------------------------------------------------------------
# preliminary-inequality checkers
# ---------------------------------------------------------------------------

def check_vector_jensen(f: ScalarFunctionModel, a, x, mode: str = "superquadratic",
                        phi: bounds.PositiveMapCD | None = None) -> float:
    """Signed margin of a vector Jensen inequality at the unit vector x.

    * ``mode="superquadratic"``: ``<f(A)x,x> - <f(|A - <Ax,x>|)x,x> - f(<Ax,x>)``
    * ``mode="jensen"``: ``<f(A)x,x> - f(<Ax,x>)`` for convex f, negated for
      concave f (the plain trace-form Jensen inequality)
    * ``mode="map"``: the map-refined form; requires ``phi`` and checks
      ``f(<Phi(A)x,x>) <= <Phi(f(A))x,x> - <Phi(f(|A - <Phi(A)x,x>|))x,x>``

    All margins are expected nonnegative (up to rounding) under the
    corresponding hypotheses.
    """
    a = symmetrize(a)
    x = np.asarray(x, dtype=float)
    if abs(np.linalg.norm(x) - 1.0) > 1e-12:
        raise ParameterError(f"x must be a unit vector, got norm {np.linalg.norm(x)!r}")
    fa = apply_scalar_function(f, a)
    n = a.shape[0]
    if mode == "superquadratic":
        t = float(x @ a @ x)
        dev = apply_scalar_function(f, matrix_abs(a - t * np.eye(n)))
        return float(x @ fa @ x - x @ dev @ x - f(t))
    if mode == "jensen":
        t = float(x @ a @ x)
        margin = float(x @ fa @ x - f(t))
        return margin if f.convex else -margin
    if mode == "map":
        if phi is None:
            raise ParameterError("mode='map' requires a PositiveMapCD")
        t = float(x @ phi.apply(a) @ x)
        dev = apply_scalar_function(f, matrix_abs(a - t * np.eye(n)))
        return float(x @ phi.apply(fa) @ x - x @ phi.apply(dev) @ x - f(t))
    raise ParameterError(f"unknown mode {mode!r}")


def check_power_mean(a, b, p: float, tol: Tolerance | None = None):
    """Power-mean eigenvalue inequality ``lambda[((A+B)/2)^p] <= lambda[(A^p+B^p)/2]``."""
    if p < 1:
        raise ParameterError(f"p must be >= 1, got {p!r}")
    a = symmetrize(a)
    b = symmetrize(b)
    pw = lambda t: np.abs(t) ** p
    lhs = apply_scalar_function(pw, (a + b) / 2)
    rhs = (apply_scalar_function(pw, a) + apply_scalar_function(pw, b)) / 2
    from .linalg import eig_order_leq

    return eig_order_leq(lhs, rhs, tol or Tolerance())


@dataclass
class ComparisonRecord:
    """Which of the two concave-case estimates dominates on one instance."""

    bound_thm21_spectrum: np.ndarray
    bound_thm25_spectrum: np.ndarray
    tighter: str  # "thm21" | "thm25" | "incomparable"


def compare_estimates(f: ScalarFunctionModel, a, b, alpha: float,
                      tie_tol: float = 1e-9) -> ComparisonRecord:
    """Run both concave-case bounds on one instance and rank them.

    A bound dominates when its spectrum is entrywise <= the other's within
    ``tie_tol``; ties both ways are classified from the strict side, and
    genuinely crossing spectra give "incomparable".
    """
    rep21 = bounds.concave_bound_S(f, a, b, alpha)
    rep25 = bounds.combine_pair_bound(f, a, b, alpha)
    s21 = np.asarray(rep21.ingredients["bound_spectrum"], float)
    s25 = np.asarray(rep25.bound_spectrum, float)
    le_25 = bool(np.all(s25 <= s21 + tie_tol))
    le_21 = bool(np.all(s21 <= s25 + tie_tol))
    if le_25 and not le_21:
        tighter = "thm25"
    elif le_21 and not le_25:
        tighter = "thm21"
    elif le_21 and le_25:
        tighter = "thm25" if float(np.sum(s21 - s25)) >= 0 else "thm21"
    else:
        tighter = "incomparable"
    return ComparisonRecord(bound_thm21_spectrum=s21, bound_thm25_spectrum=s25,
                            tighter=tighter)


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------

DEFAULT_FUNCTIONS = (
    "neg_pow_q:1", "neg_pow_q:1.25", "neg_pow_q:1.5", "neg_pow_q:1.75",
    "neg_pow_q:2", "pow_p:2", "pow_p:2.5", "pow_p:3",
)

#: Default normalized margin tolerances per check family.
THEOREM_ATOL = 1e-8
PRELIM_ATOL = 1e-9


@dataclass(frozen=True)
class SuiteConfig:
    master_seed: int = 42
    trials: int = 500
    dims: tuple = (2, 3, 4, 5, 6)
    functions: tuple = DEFAULT_FUNCTIONS
    alphas: tuple = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    spread: float = 10.0
    tolerance: Tolerance = Tolerance(atol=THEOREM_ATOL, rtol=0.0)

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError(f"trials must be >= 1, got {self.trials!r}")
        if not self.dims:
            raise ParameterError("dims must be nonempty")
        if any(d < 1 for d in self.dims):
            raise ParameterError(f"dims must be positive, got {self.dims!r}")
        if any(not 0 <= a <= 1 for a in self.alphas):
            raise ParameterError(f"alphas must lie in [0, 1], got {self.alphas!r}")
        if self.spread <= 0:
            raise ParameterError(f"spread must be positive, got {self.spread!r}")
        if int(self.master_seed) < 0 or int(self.master_seed) >= 2 ** 64:
            raise ParameterError("master_seed must fit in 64 unsigned bits")

    def models(self) -> list[ScalarFunctionModel]:
        return [parse_function(s) for s in self.functions]


@dataclass
class CheckRecord:
    name: str
    trials_run: int = 0
    pass_count: int = 0
    fail_count: int = 0
    skip_count: int = 0
    worst_margin: float = np.inf
    worst_case_seed: int | None = None
    counterexamples: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def record(self, margin: float, seed: int, passed: bool, payload=None):
        self.trials_run += 1
        if margin < self.worst_margin:
            self.worst_margin = margin
            self.worst_case_seed = seed
        if passed:
            self.pass_count += 1
        else:
            self.fail_count += 1
            if payload is not None and len(self.counterexamples) < 25:
                self.counterexamples.append(payload)

    def skip(self):
        self.trials_run += 1
        self.skip_count += 1


@dataclass
class SuiteReport:
    config: SuiteConfig
    records: dict
    wall_time: float

    @property
    def all_asserted_pass(self) -> bool:
        """True when no asserted check failed (the paper-variant sandwich is
        expected to fail and never counts)."""
        return all(r.fail_count == 0 for name, r in self.records.items()
                   if name != "sandwich_upper_paper")


def _norm2(m) -> float:
    return float(np.linalg.norm(m, 2))


def _normalized(margin: float, *operands) -> float:
    scale = max([1.0] + [_norm2(op) for op in operands])
    return margin / scale


def _matrix_payload(**named):
    out = {}
    for key, value in named.items():
        if isinstance(value, np.ndarray):
            out[key] = value.tolist()
        else:
            out[key] = value
    return out


# Each check: (callable(config, model_pool, seed, index) -> (margin, payload) | None,
# normalized atol). Returning None means the hypothesis draw was rejected (skip).

def _concave_models(config):
    return [m for m in config.models() if m.concave and m.decreasing and m.superquadratic]


def _convex_models(config):
    return [m for m in config.models()
            if m.convex and m.increasing and m.positive and m.strictly_convex]


def _pick(rng, seq):
    return seq[int(rng.integers(0, len(seq)))]


def _trial_thm21(config, seed, index):
    models = _concave_models(config)
    if not models:
        return None
    rng = _rng(seed)
    n = _pick(rng, config.dims)
    f = _pick(rng, models)
    alpha = _pick(rng, config.alphas)
    a = random_psd(n, trial_seed(seed, 1), config.spread)
    b = random_psd(n, trial_seed(seed, 2), config.spread)
    rep = bounds.concave_bound_S(f, a, b, alpha)
    margin = _normalized(rep.verdict.margin, rep.lhs, rep.bound)
    payload = _matrix_payload(check="thm21", f=f.spec, alpha=float(alpha), a=a, b=b)
    return margin, payload


def _trial_thm25(config, seed, index):
    models = _concave_models(config)
    if not models:
        return None
    rng = _rng(seed)
    n = _pick(rng, config.dims)
    f = _pick(rng, models)
    a = random_psd(n, trial_seed(seed, 1), config.spread)
    phi = random_unital_map(n, trial_seed(seed, 2))
    rep = bounds.phi_bound(f, phi, a)
    scale = max(1.0, float(np.max(np.abs(rep.ingredients["lhs_spectrum"]))),
                float(np.max(np.abs(rep.bound_spectrum))))
    payload = _matrix_payload(check="thm25", f=f.spec, a=a, c=phi.c, d=phi.d)
    return rep.verdict.margin / scale, payload


def _trial_thm29(config, seed, index):
    models = _convex_models(config)
    if not models:
        return None
    rng = _rng(seed)
    n = _pick(rng, config.dims)
    f = _pick(rng, models)
    alpha = _pick(rng, config.alphas)
    # alternate indefinite and definite differences so the finite-gamma
    # branch of the sharpness machinery is exercised
    a, b = random_pd_pair_invertible_diff(
        n, trial_seed(seed, 1), config.spread, gap=0.1, definite=bool(index % 2))
    try:
        rep = bounds.convex_bound_T(f, a, b, alpha)
    except (SingularConstantError, SingularityError):
        return None
    margin = _normalized(rep.verdict.margin, rep.lhs, rep.bound)
    payload = _matrix_payload(check="thm29", f=f.spec, alpha=float(alpha), a=a, b=b)
    payload["gammas"] = [rep.ingredients["gamma_first"].gamma,
                         rep.ingredients["gamma_second"].gamma]
    payload["t0_residuals"] = [rep.ingredients["gamma_first"].residual,
                               rep.ingredients["gamma_second"].residual]
    return margin, payload


def _trial_vector(mode):
    def trial(config, seed, index):
        pool = _concave_models(config) if mode in ("superquadratic", "map") \
            else _convex_models(config)
        if not pool:
            return None
        rng = _rng(seed)
        n = _pick(rng, config.dims)
        f = _pick(rng, pool)
        a = random_psd(n, trial_seed(seed, 1), config.spread)
        x = random_unit_vector(n, rng)
        phi = random_unital_map(n, trial_seed(seed, 2)) if mode == "map" else None
        margin = check_vector_jensen(f, a, x, mode=mode, phi=phi)
        scale = max(1.0, _norm2(apply_scalar_function(f, a)))
        payload = _matrix_payload(check=f"vector_{mode}", f=f.spec, a=a, x=x)
        if phi is not None:
            payload.update(_matrix_payload(c=phi.c, d=phi.d))
        return margin / scale, payload

    return trial


def _trial_power_mean(config, seed, index):
    rng = _rng(seed)
    n = _pick(rng, config.dims)
    ps = sorted({p for m in config.models() for p in m.params if p >= 1}) or [1.5]
    p = _pick(rng, ps)
    a = random_psd(n, trial_seed(seed, 1), config.spread)
    b = random_psd(n, trial_seed(seed, 2), config.spread)
    verdict = check_power_mean(a, b, p)
    pw = lambda t: np.abs(t) ** p
    scale = max(1.0, _norm2(apply_scalar_function(pw, (a + b) / 2)),
                _norm2((apply_scalar_function(pw, a) + apply_scalar_function(pw, b)) / 2))
    payload = _matrix_payload(check="power_mean", p=float(p), a=a, b=b)
    return verdict.margin / scale, payload


def _trial_sandwich_named(kind, variant):
    def trial(config, seed, index):
        qs = sorted({q for m in config.models()
                     if m.name == "neg_pow_q" for q in m.params}) or [1.5]
        rng = _rng(seed)
        n = _pick(rng, config.dims)
        q = _pick(rng, qs)
        x = random_psd(n, trial_seed(seed, 1), config.spread)
        y = random_psd(n, trial_seed(seed, 2), config.spread)
        try:
            rep = bounds.subadditivity_sandwich(x, y, q, variant=variant)
        except SingularityError:
            return None
        margin = rep.lower_verdict.margin if kind == "lower" else rep.upper_verdict.margin
        scale = max(1.0, _norm2(x + y) ** q)
        payload = _matrix_payload(check=f"sandwich_{kind}_{variant}",
                                  q=float(q), x=x, y=y)
        return margin / scale, payload

    return trial


def _trial_dilation(config, seed, index):
    models = _convex_models(config)
    if not models:
        return None
    rng = _rng(seed)
    n = _pick(rng, [d for d in config.dims if d <= 4] or list(config.dims))
    f = _pick(rng, models)
    x = random_psd(n, trial_seed(seed, 1), config.spread, lo=config.spread / 10)
    g = _rng(trial_seed(seed, 2)).normal(size=(n, n))
    c = float(rng.uniform(0.1, 0.999)) * g / np.linalg.norm(g, 2)
    try:
        rep = bounds.dilation_block_bound(x, c, f)
    except (SingularityError, SingularConstantError):
        return None
    margin = _normalized(rep.verdict.margin, rep.lhs, rep.bound)
    payload = _matrix_payload(check="dilation", f=f.spec, x=x, c=c)
    payload["gammas"] = [rep.ingredients["gamma_first"].gamma,
                         rep.ingredients["gamma_second"].gamma]
    return margin, payload


CHECKS = {
    "thm21": (_trial_thm21, THEOREM_ATOL),
    "thm25": (_trial_thm25, THEOREM_ATOL),
    "thm29": (_trial_thm29, THEOREM_ATOL),
    "vector_jensen_mp": (_trial_vector("jensen"), PRELIM_ATOL),
    "vector_jensen_k": (_trial_vector("superquadratic"), PRELIM_ATOL),
    "vector_jensen_kd": (_trial_vector("map"), PRELIM_ATOL),
    "power_mean_ajp": (_trial_power_mean, PRELIM_ATOL),
    "sandwich_lower": (_trial_sandwich_named("lower", "derived"), THEOREM_ATOL),
    "sandwich_upper_derived": (_trial_sandwich_named("upper", "derived"), THEOREM_ATOL),
    "sandwich_upper_paper": (_trial_sandwich_named("upper", "paper"), THEOREM_ATOL),
    "dilation_block": (_trial_dilation, THEOREM_ATOL),
}


def run_suite(config: SuiteConfig) -> SuiteReport:
    """Run every registered inequality check over seeded random trials.

    Deterministic given ``config.master_seed``: trial i of every check uses
    the seed derived from (master_seed, i). Hypothesis-violating draws
    (singular differences, unbounded constants) are counted as skipped, never
    as failures; verdict failures are recorded with a replayable instance
    payload.
    """
    start = time.perf_counter()
    records = {}
    for name, (trial_fn, default_atol) in CHECKS.items():
        atol = config.tolerance.atol if name.startswith(("thm", "sandwich", "dilation")) \
            else min(default_atol, config.tolerance.atol)
        rec = CheckRecord(name=name)
        for i in range(config.trials):
            seed = trial_seed(config.master_seed, i)
            try:
                out = trial_fn(config, seed, i)
            except SuperquadError as exc:
                rec.skip()
                rec.notes.append(f"trial {i}: {type(exc).__name__}: {exc}")
                continue
            if out is None:
                rec.skip()
                continue
            margin, payload = out
            passed = margin >= -atol
            payload = dict(payload, margin=float(margin), trial_index=i, seed=int(seed))
            rec.record(float(margin), int(seed), passed,
                       payload=None if passed else payload)
        if rec.trials_run and rec.trials_run == rec.skip_count:
            rec.notes.append("all trials skipped (no eligible functions or draws)")
        records[name] = rec
    return SuiteReport(config=config, records=records,
                       wall_time=time.perf_counter() - start)


def replay_counterexample(payload: dict) -> float:
    """Recompute the normalized margin of a serialized counterexample."""
    check = payload["check"]
    if check == "thm21":
        f = parse_function(payload["f"])
        a = np.asarray(payload["a"], float)
        b = np.asarray(payload["b"], float)
        rep = bounds.concave_bound_S(f, a, b, payload["alpha"])
        return _normalized(rep.verdict.margin, rep.lhs, rep.bound)
    if check == "thm25":
        f = parse_function(payload["f"])
        phi = bounds.PositiveMapCD(np.asarray(payload["c"], float),
                                   np.asarray(payload["d"], float))
        rep = bounds.phi_bound(f, phi, np.asarray(payload["a"], float))
        scale = max(1.0, float(np.max(np.abs(rep.ingredients["lhs_spectrum"]))),
                    float(np.max(np.abs(rep.bound_spectrum))))
        return rep.verdict.margin / scale
    if check == "thm29":
        f = parse_function(payload["f"])
        rep = bounds.convex_bound_T(f, np.asarray(payload["a"], float),
                                    np.asarray(payload["b"], float), payload["alpha"])
        return _normalized(rep.verdict.margin, rep.lhs, rep.bound)
    if check.startswith("vector_"):
        mode = check.removeprefix("vector_")
        f = parse_function(payload["f"])
        a = np.asarray(payload["a"], float)
        phi = None
        if "c" in payload:
            phi = bounds.PositiveMapCD(np.asarray(payload["c"], float),
                                       np.asarray(payload["d"], float))
        margin = check_vector_jensen(f, a, np.asarray(payload["x"], float),
                                     mode=mode, phi=phi)
        return margin / max(1.0, _norm2(apply_scalar_function(f, a)))
    if check == "power_mean":
        a = np.asarray(payload["a"], float)
        b = np.asarray(payload["b"], float)
        p = payload["p"]
        verdict = check_power_mean(a, b, p)
        pw = lambda t: np.abs(t) ** p
        scale = max(1.0, _norm2(apply_scalar_function(pw, (a + b) / 2)),
                    _norm2((apply_scalar_function(pw, a)
                            + apply_scalar_function(pw, b)) / 2))
        return verdict.margin / scale
    if check.startswith("sandwich_"):
        _, kind, variant = check.split("_", 2)
        x = np.asarray(payload["x"], float)
        y = np.asarray(payload["y"], float)
        rep = bounds.subadditivity_sandwich(x, y, payload["q"], variant=variant)
        margin = rep.lower_verdict.margin if kind == "lower" else rep.upper_verdict.margin
        return margin / max(1.0, _norm2(x + y) ** payload["q"])
    if check == "dilation":
        f = parse_function(payload["f"])
        rep = bounds.dilation_block_bound(np.asarray(payload["x"], float),
                                          np.asarray(payload["c"], float), f)
        return _normalized(rep.verdict.margin, rep.lhs, rep.bound)
    raise ParameterError(f"unknown counterexample kind {check!r}")
