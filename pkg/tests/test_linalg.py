"""Core linear algebra: decomposition, calculus, order checks, witnesses."""

import numpy as np
import pytest

from superquad.errors import AsymmetryError, DimensionError, NotPsdError, OrderError
from superquad.linalg import (
    Tolerance,
    apply_scalar_function,
    congruence_orthogonal,
    conjugating_orthogonal,
    eig_order_leq,
    eigh_desc,
    loewner_leq,
    matrix_abs,
    orthogonality_residual,
    spectral_range,
    sqrt_psd,
    symmetrize,
)
from superquad.functions import make_function


def random_sym(n, rng, scale=5.0):
    m = rng.normal(size=(n, n)) * scale
    return (m + m.T) / 2


def test_symmetrize_accepts_rounding_noise():
    m = np.array([[1.0, 2.0 + 1e-12], [2.0, 3.0]])
    s = symmetrize(m)
    assert np.array_equal(s, s.T)


def test_symmetrize_rejects_gross_asymmetry():
    with pytest.raises(AsymmetryError):
        symmetrize([[0.0, 1.0], [0.0, 0.0]])


def test_symmetrize_rejects_nonsquare():
    with pytest.raises(DimensionError):
        symmetrize(np.zeros((2, 3)))


def test_eigh_desc_diagonal():
    dec = eigh_desc(np.diag([2.0, 1.0]))
    np.testing.assert_allclose(dec.eigenvalues, [2.0, 1.0])
    np.testing.assert_allclose(np.abs(dec.frame), np.eye(2), atol=1e-14)


def test_eigh_desc_closed_form_2x2():
    # [[5,-1],[-1,5]] has eigenvalues 5 +/- 1
    dec = eigh_desc([[5.0, -1.0], [-1.0, 5.0]])
    np.testing.assert_allclose(dec.eigenvalues, [6.0, 4.0], atol=1e-12)


def test_eigh_desc_mean_closed_form():
    a = np.array([[5.0, -1.0], [-1.0, 5.0]])
    b = np.array([[2.0, 0.0], [0.0, 4.0]])
    dec = eigh_desc((a + b) / 2)
    # mean is [[3.5,-.5],[-.5,4.5]], eigenvalues 4 +/- sqrt(0.5)
    np.testing.assert_allclose(dec.eigenvalues, [4 + np.sqrt(0.5), 4 - np.sqrt(0.5)],
                               atol=1e-12)


def test_eigh_reconstruction_property():
    rng = np.random.default_rng(100)
    for k in range(100):
        n = int(rng.integers(2, 9))
        m = random_sym(n, rng)
        dec = eigh_desc(m)
        assert np.all(np.diff(dec.eigenvalues) <= 1e-12)
        assert orthogonality_residual(dec.frame) <= 1e-10
        err = np.linalg.norm(dec.reconstruct() - m)
        assert err <= 1e-9 * max(1, np.linalg.norm(m))


def test_apply_scalar_function_power_published_value():
    a = np.array([[5.0, -1.0], [-1.0, 5.0]])
    b = np.array([[2.0, 0.0], [0.0, 4.0]])
    out = apply_scalar_function(lambda t: t ** 1.5, (a + b) / 2)
    got = np.linalg.eigvalsh(out)
    np.testing.assert_allclose(np.sort(got), [5.9754, 10.2125], atol=1e-3)


def test_apply_scalar_function_diagonal_square():
    out = apply_scalar_function(lambda t: t ** 2, np.diag([3.0, -2.0]))
    np.testing.assert_allclose(out, np.diag([9.0, 4.0]), atol=1e-12)


def test_apply_scalar_function_identity_input():
    f = make_function("neg_pow_q", 1.5)
    out = apply_scalar_function(f, np.eye(2))
    np.testing.assert_allclose(out, -np.eye(2), atol=1e-14)


def test_apply_scalar_function_domain_error_names_eigenvalue():
    f = make_function("neg_pow_q", 1.5)
    with pytest.raises(Exception) as exc:
        apply_scalar_function(f, np.diag([1.0, -2.0]))
    assert "-2" in str(exc.value)


def test_matrix_abs_examples():
    np.testing.assert_allclose(matrix_abs(np.diag([-3.0, 2.0])), np.diag([3.0, 2.0]),
                               atol=1e-14)
    np.testing.assert_allclose(matrix_abs(np.zeros((2, 2))), np.zeros((2, 2)))
    half_diff = np.array([[1.5, -0.5], [-0.5, 0.5]])
    w = np.linalg.eigvalsh(matrix_abs(half_diff))
    np.testing.assert_allclose(np.sort(w), [1 - np.sqrt(0.5), 1 + np.sqrt(0.5)],
                               atol=1e-12)


def test_matrix_abs_matches_scalar_calculus():
    rng = np.random.default_rng(7)
    for _ in range(50):
        m = random_sym(int(rng.integers(1, 7)), rng)
        np.testing.assert_allclose(matrix_abs(m), apply_scalar_function(np.abs, m),
                                   atol=1e-12)


def test_matrix_abs_square_recovers():
    rng = np.random.default_rng(3)
    for _ in range(50):
        m = random_sym(int(rng.integers(1, 7)), rng)
        np.testing.assert_allclose(matrix_abs(m) @ matrix_abs(m), m @ m,
                                   atol=1e-9 * max(1, np.linalg.norm(m) ** 2))


def test_spectral_range():
    r = spectral_range([[5.0, -1.0], [-1.0, 5.0]])
    assert (r.lo, r.hi) == (pytest.approx(4.0), pytest.approx(6.0))
    r = spectral_range(3.0 * np.eye(4))
    assert r.lo == r.hi == pytest.approx(3.0)
    r = spectral_range(np.diag([2.0, 4.0]))
    assert (r.lo, r.hi) == (2.0, 4.0)


def test_sqrt_psd():
    np.testing.assert_allclose(sqrt_psd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]),
                               atol=1e-12)
    np.testing.assert_allclose(sqrt_psd(np.eye(3)), np.eye(3), atol=1e-14)
    w = np.linalg.eigvalsh(sqrt_psd([[2.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(np.sort(w), [1.0, np.sqrt(3)], atol=1e-12)


def test_sqrt_psd_clamps_noise_but_rejects_negative():
    out = sqrt_psd(np.diag([1.0, -1e-12]))
    assert np.linalg.eigvalsh(out)[0] >= 0
    with pytest.raises(NotPsdError) as exc:
        sqrt_psd(np.diag([1.0, -0.5]))
    assert exc.value.margin == pytest.approx(-0.5)


def test_loewner_leq():
    assert loewner_leq(np.eye(2), 2 * np.eye(2)).margin == pytest.approx(1.0)
    v = loewner_leq(np.diag([1.0, 3.0]), np.diag([3.0, 1.0]))
    assert not v.passed and v.margin == pytest.approx(-2.0)
    v = loewner_leq(np.diag([1.0, 3.0]), np.diag([1.0, 3.0]))
    assert v.passed and v.margin == pytest.approx(0.0)


def test_loewner_dimension_mismatch():
    with pytest.raises(DimensionError):
        loewner_leq(np.eye(2), np.eye(3))


def test_eig_order_leq():
    # same spectrum, different order: passes with margin 0
    v = eig_order_leq(np.diag([1.0, 3.0]), np.diag([3.0, 1.0]))
    assert v.passed and v.margin == pytest.approx(0.0)
    v = eig_order_leq(np.eye(2), np.diag([2.0, 0.5]))
    assert not v.passed
    v = eig_order_leq(np.zeros((2, 2)), np.diag([0.3, 1.0]))
    assert v.passed


def test_weyl_monotonicity_loewner_implies_eig_order():
    rng = np.random.default_rng(21)
    found = 0
    while found < 60:
        n = int(rng.integers(2, 7))
        h = random_sym(n, rng)
        k = h + _random_psd(n, rng)
        if loewner_leq(h, k).passed:
            found += 1
            assert eig_order_leq(h, k).passed


def _random_psd(n, rng):
    g = rng.normal(size=(n, n))
    return g @ g.T


def test_conjugating_orthogonal_swap():
    q = conjugating_orthogonal(np.diag([1.0, 2.0]), np.diag([2.0, 1.0]))
    np.testing.assert_allclose(np.abs(q), [[0, 1], [1, 0]], atol=1e-12)
    conj = q.T @ np.diag([2.0, 1.0]) @ q
    np.testing.assert_allclose(conj, np.diag([1.0, 2.0]), atol=1e-12)


def test_conjugating_orthogonal_identity_case():
    k = np.array([[5.0, -1.0], [-1.0, 5.0]])
    q = conjugating_orthogonal(k, k)
    assert loewner_leq(k, q.T @ k @ q).passed


def test_conjugating_orthogonal_zero_vs_psd():
    k = np.array([[5.0, -1.0], [-1.0, 5.0]])
    q = conjugating_orthogonal(np.zeros((2, 2)), k)
    assert orthogonality_residual(q) <= 1e-10
    assert loewner_leq(np.zeros((2, 2)), q.T @ k @ q).passed


def test_conjugating_orthogonal_order_error_reports_index():
    with pytest.raises(OrderError) as exc:
        conjugating_orthogonal(np.eye(2), np.diag([2.0, 0.5]))
    assert exc.value.index == 1


def test_conjugating_orthogonal_postcondition_random():
    # the unitary equivalence: whenever the eigenvalue order holds,
    # the constructed frame product certifies the Loewner inequality
    rng = np.random.default_rng(5)
    done = 0
    while done < 200:
        n = int(rng.integers(1, 8))
        h = random_sym(n, rng)
        k = random_sym(n, rng)
        if not eig_order_leq(h, k).passed:
            continue
        q = conjugating_orthogonal(h, k)
        assert orthogonality_residual(q) <= 1e-10
        assert loewner_leq(h, q.T @ k @ q, Tolerance(1e-8)).passed
        done += 1


def test_congruence_orthogonal_nilpotent():
    z = np.array([[0.0, 1.0], [0.0, 0.0]])
    w = congruence_orthogonal(z)
    np.testing.assert_allclose(w @ (z.T @ z) @ w.T, z @ z.T, atol=1e-12)


def test_congruence_orthogonal_symmetric_psd():
    z = np.array([[2.0, 1.0], [1.0, 2.0]])
    w = congruence_orthogonal(z)
    np.testing.assert_allclose(w @ (z.T @ z) @ w.T, z @ z.T, atol=1e-12)


def test_congruence_orthogonal_shear():
    z = np.array([[1.0, 1.0], [0.0, 1.0]])
    w = congruence_orthogonal(z)
    assert np.linalg.norm(z @ z.T - w @ (z.T @ z) @ w.T) <= 1e-12


def test_congruence_orthogonal_random_residual():
    rng = np.random.default_rng(17)
    for _ in range(100):
        n = int(rng.integers(1, 8))
        z = rng.normal(size=(n, n)) * rng.uniform(0.1, 10)
        w = congruence_orthogonal(z)
        res = np.linalg.norm(z @ z.T - w @ (z.T @ z) @ w.T)
        assert res <= 1e-10 * max(1, np.linalg.norm(z) ** 2)
        assert orthogonality_residual(w) <= 1e-10
