"""Acceptance suite: one test and one printed pass/fail line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines. Every tolerance is pinned here, not configurable.
"""

import json
import time

import numpy as np
import pytest

import superquad as sq
from superquad.cli import main as cli_main
from superquad.harness import SuiteConfig, run_suite, trial_seed

A1 = np.array([[5.0, -1.0], [-1.0, 5.0]])
B1 = np.array([[2.0, 0.0], [0.0, 4.0]])
A2 = np.array([[5.0, -1.0], [-1.0, 5.0]])
B2 = np.array([[4.0, 1.0], [1.0, 5.0]])
A3 = np.array([[9.0, -1.0], [-1.0, 8.0]])
B3 = np.array([[5.0, 1.0], [1.0, 5.0]])


def report(number, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    assert ok, f"criterion {number}: {detail}"


def norm_scale(*mats):
    return max([1.0] + [float(np.linalg.norm(m, 2)) for m in mats])


def test_criterion_01_published_set1():
    start = time.perf_counter()
    rep = sq.cor_power_mean_reverse(A1, B1, 1.5)
    low = sq.cor_sum_lower(A1, B1, 1.5)
    got = {
        "power_mean": np.sort(rep.ingredients["lhs_spectrum"]),
        "mid_power": np.sort(rep.ingredients["mid_power_spectrum"]),
        "lower_midform": np.sort(low.ingredients["midpoint_form_spectrum"]),
    }
    want = {
        "power_mean": [6.266, 10.4967],
        "mid_power": [5.9754, 10.2125],
        "lower_midform": [2.1248, 6.5921],
    }
    errs = {k: float(np.max(np.abs(got[k] - np.asarray(want[k])))) for k in want}
    elapsed = time.perf_counter() - start
    ok = all(e <= 1e-3 for e in errs.values()) and elapsed < 1.0
    report(1, ok, f"set-1 tuples abs errors {errs}, runtime {elapsed:.3f}s")


def test_criterion_02_estimate_comparison():
    f = sq.make_function("neg_pow_q", 4 / 3)
    errs = []
    for a, b, want25, want21 in (
        (A2, B2, [3.9202, 5.0212], [3.6099, 4.9944]),
        (A3, B3, [2.3178, 3.7477], [6.6286, 9.4128]),
    ):
        pair = sq.combine_pair_bound(f, a, b, 0.5)
        errs.append(float(np.max(np.abs(np.sort(-pair.bound_spectrum) - want25))))
        srep = sq.concave_bound_S(f, a, b, 0.5)
        neg_s = np.sort(-np.asarray(srep.ingredients["bound_spectrum"]))
        errs.append(float(np.max(np.abs(neg_s - want21))))
    t2 = sq.compare_estimates(f, A2, B2, 0.5).tighter
    t3 = sq.compare_estimates(f, A3, B3, 0.5).tighter
    ok = max(errs) <= 1e-3 and t2 == "thm25" and t3 == "thm21"
    report(2, ok, f"bound tuples max abs error {max(errs):.2e}, "
                  f"rankings set1={t2} set2={t3}")


def test_criterion_03_thm21_suite():
    start = time.perf_counter()
    qs = [1, 1.25, 1.5, 1.75, 2]
    alphas = np.arange(0.1, 0.95, 0.1)
    rng = np.random.default_rng(2026)
    failures = 0
    worst = np.inf
    for i in range(500):
        n = int(rng.integers(2, 7))
        f = sq.make_function("neg_pow_q", float(rng.choice(qs)))
        alpha = float(rng.choice(alphas))
        a = sq.random_psd(n, trial_seed(310, 2 * i), 10.0)
        b = sq.random_psd(n, trial_seed(310, 2 * i + 1), 10.0)
        rep = sq.concave_bound_S(f, a, b, alpha)
        margin = rep.verdict.margin / norm_scale(rep.lhs, rep.bound)
        worst = min(worst, margin)
        failures += margin < -1e-8
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 30
    report(3, ok, f"500 trials, {failures} failures, worst margin {worst:.2e}, "
                  f"runtime {elapsed:.1f}s")


def test_criterion_04_thm25_suite():
    qs = [1, 1.25, 1.5, 1.75, 2]
    rng = np.random.default_rng(2027)
    failures = 0
    worst = np.inf
    for i in range(500):
        n = int(rng.integers(2, 7))
        f = sq.make_function("neg_pow_q", float(rng.choice(qs)))
        a = sq.random_psd(n, trial_seed(410, 2 * i), 10.0)
        phi = sq.random_unital_map(n, trial_seed(410, 2 * i + 1))
        rep = sq.phi_bound(f, phi, a)
        scale = max(1.0, float(np.abs(rep.ingredients["lhs_spectrum"]).max()),
                    float(np.abs(rep.bound_spectrum).max()))
        margin = rep.verdict.margin / scale
        worst = min(worst, margin)
        failures += margin < -1e-8
    ok = failures == 0
    report(4, ok, f"500 trials with random unital maps, {failures} failures, "
                  f"worst margin {worst:.2e}")


def test_criterion_05_thm29_suite():
    models = {p: sq.make_function("pow_p", p) for p in (2, 2.5, 3)}
    rng = np.random.default_rng(2028)
    failures = 0
    worst = np.inf
    gammas = []
    for i in range(500):
        n = int(rng.integers(2, 7))
        p = float(rng.choice([2, 2.5, 3]))
        alpha = float(rng.choice(np.arange(0.1, 0.95, 0.1)))
        a, b = sq.random_pd_pair_invertible_diff(
            n, trial_seed(510, i), 10.0, gap=0.1, definite=bool(i % 2))
        rep = sq.convex_bound_T(models[p], a, b, alpha)
        margin = rep.verdict.margin / norm_scale(rep.lhs, rep.bound)
        worst = min(worst, margin)
        failures += margin < -1e-8
        gammas += [rep.ingredients["gamma_first"], rep.ingredients["gamma_second"]]
    gamma_ok = all(g.gamma >= 1 - 1e-9 for g in gammas)
    resid_ok = all(abs(g.residual) <= 1e-12 for g in gammas)
    finite = sum(bool(np.isfinite(g.gamma)) for g in gammas)
    ok = failures == 0 and gamma_ok and resid_ok
    report(5, ok, f"500 trials, {failures} failures, worst margin {worst:.2e}, "
                  f"{len(gammas)} gamma ingredients (>=1: {gamma_ok}, "
                  f"residuals<=1e-12: {resid_ok}, finite: {finite})")


def test_criterion_06_constants_dual_path():
    rng = np.random.default_rng(2029)
    worst_rel = 0.0
    for p in (2, 2.5, 3, 4):
        g = sq.parse_function(f"pow:{p}")
        for _ in range(20):
            m = float(rng.uniform(0.05, 99))
            M = float(m + rng.uniform(0.05, 100 - m))
            gamma = sq.gamma_constant(g, m, M).gamma
            kabs = sq.kantorovich_abs_power(m, M, p)
            worst_rel = max(worst_rel, abs(kabs - gamma) / gamma)
    k_exact = abs(sq.kantorovich_power(1, 4, 2) - 1.5625)
    t0_exact = abs(sq.solve_t0(sq.parse_function("pow:2"), 1, 4) - 1.6)
    ok = worst_rel <= 1e-10 and k_exact <= 1e-12 and t0_exact <= 1e-12
    report(6, ok, f"dual-path worst rel error {worst_rel:.2e}, "
                  f"|K(1,4,2)-1.5625|={k_exact:.1e}, |t0-1.6|={t0_exact:.1e}")


def test_criterion_07_equality_cases():
    f2 = sq.make_function("pow_p", 2)
    grid = np.linspace(0, 10, 40)
    worst_sq = max(abs(sq.superquadratic_gap(f2, s, t)) for s in grid for t in grid)
    worst_j = 0.0
    rng = np.random.default_rng(2030)
    for _ in range(500):
        t, s = rng.uniform(0, 10, 2)
        a = float(rng.uniform(0, 1))
        worst_j = max(worst_j, abs(sq.jensen_gap_scalar(f2, t, s, a)))
    # scalar equality of the matrix bounds at q = 2
    neg2 = sq.make_function("neg_pow_q", 2)
    s_rep = sq.concave_bound_S(neg2, np.array([[4.0]]), np.array([[2.0]]), 0.5)
    thm21_eq = abs(s_rep.lhs[0, 0] - s_rep.bound[0, 0])
    c_rep = sq.cor_sum_lower(np.array([[4.0]]), np.array([[1.0]]), 2)
    cor24_eq = abs(c_rep.lhs[0, 0] - c_rep.bound[0, 0])
    grid_tol = 1e-12 * max(1.0, 10.0 ** 2)  # relative to the sampled range
    ok = worst_sq <= grid_tol and worst_j <= grid_tol \
        and thm21_eq <= 1e-10 and cor24_eq <= 1e-10
    report(7, ok, f"t^2 gaps: sq {worst_sq:.1e}, jensen {worst_j:.1e}; "
                  f"scalar equalities thm21 {thm21_eq:.1e}, cor24 {cor24_eq:.1e}")


def test_criterion_08_sandwich_erratum():
    # the harness must surface the scalar counterexample family
    config = SuiteConfig(master_seed=42, trials=40, dims=(1,),
                         functions=("neg_pow_q:2",), spread=10.0)
    suite = run_suite(config)
    paper_rec = suite.records["sandwich_upper_paper"]
    harness_found = paper_rec.fail_count >= 1 and bool(paper_rec.counterexamples)
    rep = sq.subadditivity_sandwich([[1.0]], [[1.0]], 2, variant="paper")
    upper_val = float(rep.upper[0, 0])
    lhs_val = 4.0
    scalar_ce = upper_val == pytest.approx(2.0) and not rep.upper_verdict.passed
    rng_fail = 0
    worst = np.inf
    for i in range(500):
        n = int(np.random.default_rng(trial_seed(810, i)).integers(1, 7))
        q = float(np.random.default_rng(trial_seed(811, i)).choice(
            [1, 1.25, 1.5, 1.75, 2]))
        x = sq.random_psd(n, trial_seed(812, i), 10.0)
        y = sq.random_psd(n, trial_seed(813, i), 10.0)
        if np.linalg.eigvalsh(x + y)[0] < 1e-10:
            continue
        drep = sq.subadditivity_sandwich(x, y, q, variant="derived")
        scale = max(1.0, np.linalg.norm(x + y, 2) ** q)
        m = min(drep.lower_verdict.margin, drep.upper_verdict.margin) / scale
        worst = min(worst, m)
        rng_fail += m < -1e-8
    ok = harness_found and scalar_ce and rng_fail == 0
    report(8, ok, f"paper variant: harness recorded {paper_rec.fail_count} "
                  f"counterexamples, scalar case upper={upper_val} < lhs={lhs_val}; "
                  f"derived variant: {rng_fail} failures in 500 trials "
                  f"(worst {worst:.2e})")


def test_criterion_09_unit_and_congruence():
    rng = np.random.default_rng(2031)
    passed = 0
    tried = 0
    while passed < 200 and tried < 4000:
        tried += 1
        n = int(rng.integers(1, 8))
        g1 = rng.normal(size=(n, n)) * 5
        g2 = rng.normal(size=(n, n)) * 5
        h = (g1 + g1.T) / 2
        k = (g2 + g2.T) / 2
        if not sq.eig_order_leq(h, k).passed:
            continue
        q = sq.conjugating_orthogonal(h, k)
        if not sq.loewner_leq(h, q.T @ k @ q, sq.Tolerance(1e-8)).passed:
            report(9, False, f"conjugation postcondition failed at n={n}")
        passed += 1
    worst_res = 0.0
    for i in range(100):
        n = int(rng.integers(1, 8))
        z = rng.normal(size=(n, n)) * float(rng.uniform(0.1, 10))
        w = sq.congruence_orthogonal(z)
        res = np.linalg.norm(z @ z.T - w @ (z.T @ z) @ w.T)
        worst_res = max(worst_res, res / max(1, np.linalg.norm(z) ** 2))
    ok = passed >= 200 and worst_res <= 1e-10
    report(9, ok, f"{passed} order-conjugation instances certified; "
                  f"worst congruence residual {worst_res:.2e}")


def test_criterion_10_preliminary_inequalities():
    f_con = sq.make_function("neg_pow_q", 1.5)
    f_vex = sq.make_function("pow_p", 2.5)
    rng = np.random.default_rng(2032)
    worst = {"mp": np.inf, "k": np.inf, "kd": np.inf, "ajp": np.inf}
    fails = dict.fromkeys(worst, 0)
    for i in range(1000):
        n = int(rng.integers(1, 7))
        a = sq.random_psd(n, trial_seed(1010, i), 10.0)
        x = rng.normal(size=n)
        x /= np.linalg.norm(x)
        phi = sq.random_unital_map(n, trial_seed(1011, i))
        scale_mp = max(1.0, np.linalg.norm(a, 2) ** 2.5)
        scale_k = max(1.0, np.linalg.norm(a, 2) ** 1.5)
        m_mp = sq.check_vector_jensen(f_vex, a, x, mode="jensen") / scale_mp
        m_k = sq.check_vector_jensen(f_con, a, x) / scale_k
        m_kd = sq.check_vector_jensen(f_con, a, x, mode="map", phi=phi) / scale_k
        b = sq.random_psd(n, trial_seed(1012, i), 10.0)
        v = sq.check_power_mean(a, b, 1.5)
        m_ajp = v.margin / max(1.0, np.linalg.norm(a + b, 2) ** 1.5)
        for key, m in (("mp", m_mp), ("k", m_k), ("kd", m_kd), ("ajp", m_ajp)):
            worst[key] = min(worst[key], m)
            fails[key] += int(m < -1e-9)
    ok = all(v == 0 for v in fails.values())
    report(10, ok, f"1000 trials each; failures {fails}; worst margins "
                   + ", ".join(f"{k}={v:.1e}" for k, v in worst.items()))


def test_criterion_11_dilation_pipeline():
    models = {p: sq.make_function("pow_p", p) for p in (2, 2.5, 3)}
    rng = np.random.default_rng(2033)
    run = 0
    failures = 0
    worst = np.inf
    worst_identity = 0.0
    i = 0
    while run < 100 and i < 1000:
        i += 1
        n = int(rng.integers(1, 5))
        x = sq.random_psd(n, trial_seed(1110, i), 5.0, lo=0.5)
        g = np.random.default_rng(trial_seed(1111, i)).normal(size=(n, n))
        c = float(rng.uniform(0.1, 0.999)) * g / np.linalg.norm(g, 2)
        a, b, r1, r2 = sq.dilation_pair(x, c)
        dmat = sq.sqrt_psd(np.eye(n) - c @ c.T)
        mid = np.block([[c.T @ x @ c, np.zeros((n, n))],
                        [np.zeros((n, n)), dmat @ x @ dmat]])
        worst_identity = max(worst_identity,
                             float(np.linalg.norm((a + b) / 2 - mid)))
        if np.linalg.svd(a - b, compute_uv=False)[-1] < 1e-10 * np.linalg.norm(a - b, 2):
            continue
        p = float(rng.choice([2, 2.5, 3]))
        rep = sq.dilation_block_bound(x, c, models[p])
        margin = rep.verdict.margin / norm_scale(rep.lhs, rep.bound)
        worst = min(worst, margin)
        failures += margin < -1e-8
        run += 1
    ok = run == 100 and failures == 0 and worst_identity <= 1e-9
    report(11, ok, f"{run} dilation instances, {failures} failures, worst "
                   f"margin {worst:.2e}, worst block-identity residual "
                   f"{worst_identity:.2e}")


def test_criterion_12_determinism(tmp_path, capsys):
    out1 = tmp_path / "v1.json"
    out2 = tmp_path / "v2.json"
    args = ["verify", "--seed", "42", "--trials", "40", "--dims", "1,2,3"]
    code1 = cli_main(args + ["--out", str(out1)])
    code2 = cli_main(args + ["--out", str(out2)])
    capsys.readouterr()
    d1 = json.load(open(out1))
    d2 = json.load(open(out2))
    d1.pop("wall_time")
    d2.pop("wall_time")
    ok = code1 == 0 and code2 == 0 and d1 == d2
    report(12, ok, "verify --seed 42 twice produced identical reports "
                   "modulo wall_time")
