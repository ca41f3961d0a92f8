"""Command-line front door.

Subcommands: ``bound`` (evaluate one inequality on user matrices),
``constants`` (sharpness constants), ``verify`` (randomized suite),
``reproduce`` (the published 2x2 examples). Every command emits one JSON
report document with a stable schema; exit codes are 0 (pass), 2
(input/config error), 3 (a verified inequality failed).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from fractions import Fraction

import numpy as np

from . import bounds, harness
from .constants import gamma_constant, kantorovich_abs_power, kantorovich_power, \
    secant_coeffs, solve_t0
from .errors import SuperquadError
from .functions import parse_function
from .linalg import Tolerance, symmetrize
from .reproduce import reproduce_report

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FAIL = 3

ERRATUM_QW2 = ("printed weights C=alpha*I, D=(1-alpha)*I violate unitality; "
               "square-root weights are used and reproduce the printed bound")
ERRATUM_SANDWICH = ("published correction 2*(lambda_1-lambda_n)^q is not an upper "
                    "correction in general (falsified by x=y=[[1]], q=2); the "
                    "derived variant uses 2*lambda_1^q")


def _jsonable(value):
    """Convert report values to JSON-safe structures (non-finite -> strings)."""
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (np.floating, float)):
        v = float(value)
        return v if math.isfinite(v) else repr(v)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "__dataclass_fields__"):
        return {k: _jsonable(getattr(value, k)) for k in value.__dataclass_fields__}
    return value


def _document(command, inputs=None, eigenvalues=None, verdicts=None,
              ingredients=None, paper_targets=None, erratum_notes=None):
    return {
        "schema": 1,
        "command": command,
        "inputs": _jsonable(inputs or {}),
        "eigenvalues": _jsonable(eigenvalues or {}),
        "verdicts": _jsonable(verdicts or {}),
        "ingredients": _jsonable(ingredients or {}),
        "paper_targets": _jsonable(paper_targets or []),
        "erratum_notes": list(erratum_notes or []),
    }


def _emit(doc, out_path):
    text = json.dumps(doc, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_matrix(path, symmetric=True):
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "matrix" not in data:
        raise SuperquadError(f"{path}: expected a JSON object with a 'matrix' field")
    m = np.asarray(data["matrix"], dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise SuperquadError(f"{path}: matrix must be square, got shape {m.shape}")
    if not symmetric:
        return m
    skew = np.linalg.norm(m - m.T)
    if skew > 0:
        if skew > 1e-8 * max(1.0, np.linalg.norm(m)):
            raise SuperquadError(
                f"{path}: matrix is not symmetric (||m - m^T||_F = {skew:.3e})"
            )
        warnings.warn(f"{path}: symmetrizing input (asymmetry {skew:.3e})")
    return symmetrize(m)


def _default_tol():
    raw = os.environ.get("SUPERQUAD_TOL")
    if raw is None:
        return None
    return Tolerance(atol=float(raw))


def _desc(spectrum):
    return np.sort(np.asarray(spectrum, float))[::-1]


def _verdict_entry(verdict):
    return {"pass": bool(verdict.passed), "margin": float(verdict.margin)}


def _fraction(text):
    return float(Fraction(text))


def cmd_bound(args) -> int:
    tol = _default_tol()
    notes = []
    eig = {}
    verdicts = {}
    ingredients = {}
    inputs = {"theorem": args.theorem}

    def need(flag, value):
        if value is None:
            raise SuperquadError(f"--{flag} is required for theorem {args.theorem}")
        return value

    th = args.theorem
    if th in ("thm21", "thm25", "thm29", "cor210"):
        f = parse_function(need("f", args.f))
        inputs["f"] = f.spec
    if th in ("thm21", "thm25", "thm29"):
        alpha = need("alpha", args.alpha)
        inputs["alpha"] = alpha

    if th == "dilation":
        x = _load_matrix(need("a", args.a))
        c = _load_matrix(need("c", args.c), symmetric=False)
        inputs["x"] = x
        inputs["c"] = c
        f = parse_function(need("f", args.f))
        inputs["f"] = f.spec
        rep = bounds.dilation_block_bound(x, c, f, tol)
    elif th == "sandwich":
        x = _load_matrix(need("a", args.a))
        y = _load_matrix(need("b", args.b))
        q = need("q", args.q)
        inputs.update({"x": x, "y": y, "q": q, "variant": args.variant})
        srep = bounds.subadditivity_sandwich(x, y, q, variant=args.variant, tol=tol)
        eig = {"lhs": _desc(srep.ingredients["lhs_spectrum"]),
               "lower": _desc(srep.ingredients["lower_spectrum"]),
               "upper": _desc(srep.ingredients["upper_spectrum"])}
        verdicts = {"lower": _verdict_entry(srep.lower_verdict),
                    "upper": _verdict_entry(srep.upper_verdict)}
        ingredients = {k: v for k, v in srep.ingredients.items()
                       if not k.endswith("spectrum")}
        ingredients["correction_value"] = srep.correction_value
        if args.variant == "paper":
            notes.append(ERRATUM_SANDWICH)
        failed = not (srep.lower_verdict.passed and srep.upper_verdict.passed)
        if failed:
            ingredients["counterexample"] = {"x": x, "y": y, "q": q,
                                             "variant": args.variant}
        doc = _document("bound", inputs, eig, verdicts, ingredients,
                        erratum_notes=notes)
        _emit(doc, args.out)
        return EXIT_FAIL if failed else EXIT_OK
    else:
        a = _load_matrix(need("a", args.a))
        inputs["a"] = a
        b = _load_matrix(need("b", args.b)) if args.b else None
        if b is not None:
            inputs["b"] = b
        if th == "thm21":
            rep = bounds.concave_bound_S(f, a, need("b", b), alpha, tol)
        elif th == "thm25":
            if args.c:
                c = _load_matrix(args.c, symmetric=False)
                d = _load_matrix(need("d", args.d), symmetric=False)
                inputs.update({"c": c, "d": d})
                rep = bounds.phi_bound(f, bounds.PositiveMapCD(c, d), a, tol)
            else:
                rep = bounds.combine_pair_bound(f, a, need("b", b), alpha, tol)
                notes.append(ERRATUM_QW2)
        elif th == "thm29":
            rep = bounds.convex_bound_T(f, a, need("b", b), alpha, tol)
        elif th == "cor23":
            rep = bounds.cor_power_mean_reverse(a, need("b", b), need("q", args.q), tol)
        elif th == "cor24":
            rep = bounds.cor_sum_lower(a, need("b", b), need("q", args.q), tol)
        elif th == "cor210":
            rep = bounds.cor_midpoint_convex(a, need("b", b), f, tol)
        elif th == "cor211":
            rep = bounds.cor_power_convex(a, need("b", b), need("p", args.p), tol)
        else:
            raise SuperquadError(f"unknown theorem {th!r}")

    eig["lhs"] = _desc(np.linalg.eigvalsh(rep.lhs))
    if rep.bound is not None:
        eig["bound"] = _desc(np.linalg.eigvalsh(rep.bound))
    if rep.bound_spectrum is not None:
        eig["bound_spectrum"] = _desc(rep.bound_spectrum)
    verdicts[rep.name] = _verdict_entry(rep.verdict)
    ingredients.update({k: v for k, v in rep.ingredients.items()
                        if not isinstance(v, np.ndarray) or v.size <= 64})
    if not rep.verdict.passed:
        ingredients["counterexample"] = {k: v for k, v in inputs.items()}
    doc = _document("bound", inputs, eig, verdicts, ingredients, erratum_notes=notes)
    _emit(doc, args.out)
    return EXIT_OK if rep.verdict.passed else EXIT_FAIL


def cmd_constants(args) -> int:
    inputs = {"kind": args.kind, "m": args.m, "M": args.M}
    ingredients = {}
    if args.kind in ("kantorovich", "kantorovich_abs"):
        if args.p is None:
            raise SuperquadError(f"--p is required for kind {args.kind}")
        inputs["p"] = args.p
        if args.kind == "kantorovich":
            value = kantorovich_power(args.m, args.M, args.p)
        else:
            value = kantorovich_abs_power(args.m, args.M, args.p)
        ingredients["value"] = value
    else:
        if args.g is None:
            raise SuperquadError(f"--g is required for kind {args.kind}")
        g = parse_function(args.g)
        inputs["g"] = g.spec
        if args.kind == "secant":
            mu, nu = secant_coeffs(g, args.m, args.M)
            ingredients.update({"mu": mu, "nu": nu})
        elif args.kind == "t0":
            t0 = solve_t0(g, args.m, args.M)
            mu, nu = secant_coeffs(g, args.m, args.M)
            ingredients.update({
                "t0": t0,
                "residual": float(mu * g(t0) - g.deriv(t0) * (mu * t0 + nu)),
            })
        elif args.kind == "gamma":
            if args.m == args.M:
                ingredients.update({"gamma": 1.0, "t0": args.m, "residual": 0.0,
                                    "note": "degenerate interval, gamma = 1 by continuity"})
            else:
                res = gamma_constant(g, args.m, args.M)
                ingredients.update({"gamma": res.gamma, "t0": res.t0,
                                    "mu": res.mu, "nu": res.nu,
                                    "residual": res.residual})
        else:
            raise SuperquadError(f"unknown kind {args.kind!r}")
    doc = _document("constants", inputs, ingredients=ingredients)
    _emit(doc, args.out)
    return EXIT_OK


def _suite_config(args) -> harness.SuiteConfig:
    base = {}
    if args.config:
        with open(args.config) as fh:
            base = json.load(fh)
    if args.seed is not None:
        base["master_seed"] = args.seed
    if args.trials is not None:
        base["trials"] = args.trials
    if args.dims is not None:
        base["dims"] = [int(d) for d in args.dims.split(",") if d]
    if args.functions is not None:
        base["functions"] = [s for s in args.functions.split(",") if s]
    if args.alphas is not None:
        base["alphas"] = [float(Fraction(s)) for s in args.alphas.split(",") if s]
    if args.spread is not None:
        base["spread"] = args.spread
    atol = base.pop("atol", None)
    env_tol = _default_tol()
    if env_tol is not None:
        atol = env_tol.atol
    kwargs = {}
    for key in ("master_seed", "trials", "spread"):
        if key in base:
            kwargs[key] = base[key]
    for key in ("dims", "functions", "alphas"):
        if key in base:
            kwargs[key] = tuple(base[key])
    if atol is not None:
        kwargs["tolerance"] = Tolerance(atol=float(atol))
    unknown = set(base) - {"master_seed", "trials", "spread", "dims", "functions",
                           "alphas"}
    if unknown:
        raise SuperquadError(f"unknown suite config fields: {sorted(unknown)}")
    return harness.SuiteConfig(**kwargs)


def cmd_verify(args) -> int:
    config = _suite_config(args)
    report = harness.run_suite(config)
    records = {}
    notes = []
    for name, rec in report.records.items():
        records[name] = {
            "trials_run": rec.trials_run,
            "pass_count": rec.pass_count,
            "fail_count": rec.fail_count,
            "skip_count": rec.skip_count,
            "worst_margin": rec.worst_margin,
            "worst_case_seed": rec.worst_case_seed,
            "counterexamples": rec.counterexamples,
            "notes": rec.notes,
        }
    paper_rec = report.records.get("sandwich_upper_paper")
    if paper_rec is not None and paper_rec.fail_count:
        notes.append(ERRATUM_SANDWICH + f" ({paper_rec.fail_count} failing trials recorded)")
    verdicts = {name: {"pass": rec.fail_count == 0 or name == "sandwich_upper_paper",
                       "margin": rec.worst_margin}
                for name, rec in report.records.items()}
    doc = _document(
        "verify",
        inputs={
            "master_seed": config.master_seed,
            "trials": config.trials,
            "dims": list(config.dims),
            "functions": list(config.functions),
            "alphas": list(config.alphas),
            "spread": config.spread,
            "atol": config.tolerance.atol,
        },
        verdicts=verdicts,
        ingredients={"records": records},
        erratum_notes=notes,
    )
    doc["wall_time"] = report.wall_time
    _emit(doc, args.out)
    return EXIT_OK if report.all_asserted_pass else EXIT_FAIL


def cmd_reproduce(args) -> int:
    report = reproduce_report()
    verdicts = {t["label"]: {"pass": t["pass"],
                             "margin": -t["abs_error"]}
                for t in report["targets"]}
    for c in report["classifications"]:
        verdicts[f"classification_{c['label']}"] = {
            "pass": c["pass"], "margin": 0.0 if c["pass"] else -1.0,
        }
    eigenvalues = {t["label"]: t["computed"] for t in report["targets"]}
    doc = _document(
        "reproduce",
        inputs={"tolerance": report["tolerance"]},
        eigenvalues=eigenvalues,
        verdicts=verdicts,
        ingredients={
            "targets": report["targets"],
            "classifications": report["classifications"],
            "ordering_note": report["ordering_note"],
        },
    )
    _emit(doc, args.out)
    return EXIT_OK if report["pass"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superquad",
        description="Eigenvalue bounds for superquadratic matrix functions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="evaluate one bound on user matrices")
    p_bound.add_argument("--theorem", required=True,
                         choices=["thm21", "thm25", "thm29", "cor23", "cor24",
                                  "cor210", "cor211", "sandwich", "dilation"])
    p_bound.add_argument("--f", help="function specifier, e.g. neg_pow_q:1.5 (accepts 4/3)")
    p_bound.add_argument("--alpha", type=_fraction, help="weight in [0, 1]")
    p_bound.add_argument("--q", type=_fraction, help="power in [1, 2]")
    p_bound.add_argument("--p", type=_fraction, help="power >= 2")
    p_bound.add_argument("--variant", choices=["paper", "derived"], default="derived",
                         help="sandwich correction variant")
    p_bound.add_argument("--a", help="matrix file (JSON {'matrix': [[...]]})")
    p_bound.add_argument("--b", help="second matrix file")
    p_bound.add_argument("--c", help="map/contraction matrix file (not symmetrized)")
    p_bound.add_argument("--d", help="second map matrix file")
    p_bound.add_argument("--out", help="write the JSON report here instead of stdout")
    p_bound.set_defaults(func=cmd_bound)

    p_const = sub.add_parser("constants", help="sharpness constants")
    p_const.add_argument("--kind", required=True,
                         choices=["gamma", "kantorovich", "kantorovich_abs", "t0", "secant"])
    p_const.add_argument("--g", help="function specifier for g (e.g. pow:2)")
    p_const.add_argument("--p", type=_fraction)
    p_const.add_argument("--m", type=_fraction, required=True)
    p_const.add_argument("--M", type=_fraction, required=True)
    p_const.add_argument("--out")
    p_const.set_defaults(func=cmd_constants)

    p_verify = sub.add_parser("verify", help="run the randomized inequality suite")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--trials", type=int, default=None)
    p_verify.add_argument("--dims", default=None, help="comma list, e.g. 2,3,4,5,6")
    p_verify.add_argument("--functions", default=None, help="comma list of specifiers")
    p_verify.add_argument("--alphas", default=None, help="comma list in [0, 1]")
    p_verify.add_argument("--spread", type=float, default=None)
    p_verify.add_argument("--config", help="JSON file with suite config fields")
    p_verify.add_argument("--out")
    p_verify.set_defaults(func=cmd_verify)

    p_rep = sub.add_parser("reproduce", help="recompute the published 2x2 examples")
    p_rep.add_argument("--out")
    p_rep.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SuperquadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
