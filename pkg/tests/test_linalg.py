import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcorr.graph import UndirectedGraph, erdos_renyi
from graphcorr.linalg import (
    DegenerateRowError,
    chol_to_bn_params,
    gram,
    is_positive_definite,
    matches_pattern,
    mgs_partial_orthogonalize,
    rescale_to_correlation,
    sample_gaussian,
    shift_condition_number,
    shift_min_eigenvalue,
    sym_eigenvalues,
)


def _eig2_closed_form(m):
    # (a + c -/+ sqrt((a - c)^2 + 4 b^2)) / 2
    a, b, c = m[0, 0], m[0, 1], m[1, 1]
    root = np.sqrt((a - c) ** 2 + 4 * b**2)
    return np.array([(a + c - root) / 2, (a + c + root) / 2])


def _eig3_closed_form(m):
    # Trigonometric solution of the cubic characteristic polynomial.
    p1 = m[0, 1] ** 2 + m[0, 2] ** 2 + m[1, 2] ** 2
    q = np.trace(m) / 3
    if p1 == 0:
        return np.sort(np.diag(m))
    p2 = sum((m[i, i] - q) ** 2 for i in range(3)) + 2 * p1
    p = np.sqrt(p2 / 6)
    b = (m - q * np.eye(3)) / p
    r = np.clip(np.linalg.det(b) / 2, -1.0, 1.0)
    phi = np.arccos(r) / 3
    lam1 = q + 2 * p * np.cos(phi)
    lam3 = q + 2 * p * np.cos(phi + 2 * np.pi / 3)
    return np.sort(np.array([lam3, 3 * q - lam1 - lam3, lam1]))


def _eig4_charpoly(m):
    # Characteristic polynomial via Newton's identities on power sums,
    # rooted through the polynomial companion solver.
    powers = [np.trace(np.linalg.matrix_power(m, k)) for k in range(1, 5)]
    p1, p2, p3, p4 = powers
    e1 = p1
    e2 = (e1 * p1 - p2) / 2
    e3 = (e2 * p1 - e1 * p2 + p3) / 3
    e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4
    roots = np.roots([1.0, -e1, e2, -e3, e4])
    return np.sort(roots.real)


def _random_symmetric(rng, p, scale=1.0):
    a = rng.standard_normal((p, p)) * scale
    return (a + a.T) / 2


class TestMgsPartialOrthogonalize:
    def test_identity_fixed_point(self):
        g = UndirectedGraph(3, [(1, 2)])
        np.testing.assert_allclose(mgs_partial_orthogonalize(np.eye(3), g), np.eye(3))

    def test_two_isolated_vertices(self):
        q = np.array([[1.0, 0.0], [1.0, 1.0]]) / np.array([[1.0], [np.sqrt(2)]])
        g = UndirectedGraph(2, [])
        out = mgs_partial_orthogonalize(q, g)
        np.testing.assert_allclose(out, np.eye(2), atol=1e-15)

    def test_complete_graph_only_normalizes(self):
        rng = np.random.default_rng(0)
        q = rng.standard_normal((4, 4))
        out = mgs_partial_orthogonalize(q, UndirectedGraph.complete(4))
        expected = q / np.linalg.norm(q, axis=1)[:, None]
        np.testing.assert_allclose(out, expected)

    def test_projection_against_non_orthogonal_span(self):
        # Rows 1 and 2 are adjacent, hence kept non-orthogonal; row 3
        # must still end up orthogonal to both of them at once.
        q = np.array([[1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, 1.0, 1.0]])
        g = UndirectedGraph(3, [(1, 2)])
        out = mgs_partial_orthogonalize(q, g)
        assert abs(out[2] @ out[0]) < 1e-12
        assert abs(out[2] @ out[1]) < 1e-12
        assert abs(out[0] @ out[1]) > 0.5

    def test_degenerate_row_raises(self):
        q = np.array([[1.0, 0.0], [1.0, 1e-14]])
        g = UndirectedGraph(2, [])
        with pytest.raises(DegenerateRowError) as exc:
            mgs_partial_orthogonalize(q, g)
        assert exc.value.row == 2

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            mgs_partial_orthogonalize(np.eye(3), UndirectedGraph.chain(4))

    def test_input_not_modified(self):
        rng = np.random.default_rng(1)
        q = rng.standard_normal((3, 3))
        before = q.copy()
        mgs_partial_orthogonalize(q, UndirectedGraph.chain(3))
        np.testing.assert_array_equal(q, before)

    @settings(max_examples=30, deadline=None)
    @given(
        p=st.integers(min_value=1, max_value=12),
        d=st.floats(min_value=0.0, max_value=1.0),
        seed=st.integers(min_value=0, max_value=2**31),
    )
    def test_orthogonality_and_gram_invariants(self, p, d, seed):
        rng = np.random.default_rng(seed)
        g = erdos_renyi(p, d, seed)
        q = mgs_partial_orthogonalize(rng.standard_normal((p, p)), g)
        np.testing.assert_allclose(np.linalg.norm(q, axis=1), 1.0, atol=1e-12)
        m = gram(q)
        assert matches_pattern(m, g, 1e-9)
        np.testing.assert_allclose(np.diag(m), 1.0, atol=1e-12)
        assert is_positive_definite(m)


class TestGram:
    def test_identity(self):
        np.testing.assert_array_equal(gram(np.eye(3)), np.eye(3))

    def test_orthonormal_rows(self):
        theta = 0.7
        q = np.array([[np.cos(theta), np.sin(theta)], [-np.sin(theta), np.cos(theta)]])
        np.testing.assert_allclose(gram(q), np.eye(2), atol=1e-15)

    def test_small_example(self):
        q = np.array([[1.0, 0.0], [1.0, 1.0]])
        np.testing.assert_array_equal(gram(q), np.array([[1.0, 1.0], [1.0, 2.0]]))

    def test_exactly_symmetric_storage(self):
        rng = np.random.default_rng(2)
        m = gram(rng.standard_normal((6, 6)))
        np.testing.assert_array_equal(m, m.T)


class TestSymEigenvalues:
    def test_identity(self):
        np.testing.assert_allclose(sym_eigenvalues(np.eye(3)), np.ones(3))

    def test_diagonal(self):
        np.testing.assert_allclose(
            sym_eigenvalues(np.diag([3.0, -1.0, 2.0])), [-1.0, 2.0, 3.0]
        )

    def test_two_by_two(self):
        np.testing.assert_allclose(
            sym_eigenvalues(np.array([[2.0, 1.0], [1.0, 2.0]])), [1.0, 3.0]
        )

    def test_against_closed_form_oracles(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            m2 = _random_symmetric(rng, 2)
            got = sym_eigenvalues(m2)
            want = _eig2_closed_form(m2)
            scale = max(1.0, np.abs(want).max())
            np.testing.assert_allclose(got, want, atol=1e-10 * scale, rtol=0)
        for _ in range(500):
            m3 = _random_symmetric(rng, 3)
            got = sym_eigenvalues(m3)
            want = _eig3_closed_form(m3)
            scale = max(1.0, np.abs(want).max())
            np.testing.assert_allclose(got, want, atol=1e-10 * scale, rtol=0)

    def test_against_characteristic_polynomial_p4(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            m4 = _random_symmetric(rng, 4)
            got = sym_eigenvalues(m4)
            want = _eig4_charpoly(m4)
            scale = max(1.0, np.abs(want).max())
            np.testing.assert_allclose(got, want, atol=1e-10 * scale, rtol=0)


class TestShiftMinEigenvalue:
    def test_already_pd(self):
        m = np.diag([2.0, 5.0])
        out = shift_min_eigenvalue(m, 0.1)
        np.testing.assert_allclose(np.diag(out), [2.1, 5.1])

    def test_zero_matrix(self):
        np.testing.assert_array_equal(shift_min_eigenvalue(np.zeros((3, 3)), 1.0), np.eye(3))

    def test_indefinite(self):
        m = np.diag([-0.5, 1.0])
        out = shift_min_eigenvalue(m, 0.1)
        np.testing.assert_allclose(sym_eigenvalues(out), [0.1, 1.6])

    def test_off_diagonal_untouched_exactly(self):
        rng = np.random.default_rng(3)
        m = _random_symmetric(rng, 5)
        out = shift_min_eigenvalue(m, 0.25)
        off = ~np.eye(5, dtype=bool)
        np.testing.assert_array_equal(out[off], m[off])

    def test_spectrum_shifts_uniformly(self):
        rng = np.random.default_rng(4)
        m = _random_symmetric(rng, 6)
        out = shift_min_eigenvalue(m, 0.5)
        shift = out[0, 0] - m[0, 0]
        np.testing.assert_allclose(
            sym_eigenvalues(out), sym_eigenvalues(m) + shift, atol=1e-10
        )

    def test_rejects_nonpositive_eps(self):
        with pytest.raises(ValueError):
            shift_min_eigenvalue(np.eye(2), 0.0)


class TestShiftConditionNumber:
    def test_spec_example_pd(self):
        out = shift_condition_number(np.diag([1.0, 3.0]), 2.0)
        np.testing.assert_allclose(sym_eigenvalues(out), [2.0, 4.0])

    def test_spec_example_indefinite(self):
        out = shift_condition_number(np.diag([-1.0, 4.0]), 5.0)
        np.testing.assert_allclose(sym_eigenvalues(out), [1.25, 6.25])

    def test_already_at_target(self):
        m = np.diag([1.0, 9.0])
        np.testing.assert_allclose(shift_condition_number(m, 9.0), m)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            shift_condition_number(np.diag([1.0, 3.0]), 1.0)
        with pytest.raises(ValueError):
            shift_condition_number(np.diag([-3.0, -1.0]), 2.0)
        with pytest.raises(ValueError):
            shift_condition_number(np.eye(3), 2.0)

    def test_ratio_on_random_matrices(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            m = _random_symmetric(rng, int(rng.integers(2, 10)))
            lam = sym_eigenvalues(m)
            if lam[-1] <= 0 or lam[-1] == lam[0]:
                continue
            kappa0 = float(rng.uniform(1.5, 50.0))
            out = shift_condition_number(m, kappa0)
            lam_out = sym_eigenvalues(out)
            assert abs(lam_out[-1] / lam_out[0] - kappa0) <= 1e-8 * kappa0


class TestRescaleToCorrelation:
    def test_identity(self):
        np.testing.assert_array_equal(rescale_to_correlation(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        np.testing.assert_array_equal(rescale_to_correlation(np.diag([4.0, 9.0])), np.eye(2))

    def test_small_example(self):
        out = rescale_to_correlation(np.array([[4.0, 2.0], [2.0, 4.0]]))
        np.testing.assert_allclose(out, [[1.0, 0.5], [0.5, 1.0]])

    def test_preserves_pattern_sign_and_definiteness(self):
        rng = np.random.default_rng(6)
        g = erdos_renyi(8, 0.4, seed=9)
        a = rng.standard_normal((8, 8))
        m = a @ a.T + 8 * np.eye(8)
        mask = ~g.adjacency_matrix()
        np.fill_diagonal(mask, False)
        m[mask] = 0.0
        out = rescale_to_correlation(m)
        np.testing.assert_array_equal(np.diag(out), np.ones(8))
        assert np.all(out[mask] == 0.0)
        off = ~np.eye(8, dtype=bool)
        np.testing.assert_array_equal(np.sign(out[off]), np.sign(m[off]))
        if is_positive_definite(m):
            assert is_positive_definite(out)

    def test_rejects_nonpositive_diagonal(self):
        with pytest.raises(ValueError):
            rescale_to_correlation(np.diag([1.0, 0.0]))
        with pytest.raises(ValueError):
            rescale_to_correlation(np.diag([1.0, -2.0]))


class TestMatchesPattern:
    def test_identity_any_graph(self):
        assert matches_pattern(np.eye(4), erdos_renyi(4, 0.5, seed=1), 0.0)

    def test_violating_entry(self):
        m = np.array([[1.0, 0.5], [0.5, 1.0]])
        assert not matches_pattern(m, UndirectedGraph(2, []), 1e-9)

    def test_below_tolerance(self):
        m = np.eye(3)
        m[0, 2] = m[2, 0] = 1e-12
        assert matches_pattern(m, UndirectedGraph.chain(3), 1e-9)

    def test_diagonal_never_constrained(self):
        assert matches_pattern(np.diag([5.0, -7.0]), UndirectedGraph(2, []), 0.0)


class TestIsPositiveDefinite:
    def test_identity(self):
        assert is_positive_definite(np.eye(3))

    def test_indefinite(self):
        assert not is_positive_definite(np.array([[1.0, 2.0], [2.0, 1.0]]))

    def test_zero_matrix(self):
        assert not is_positive_definite(np.zeros((3, 3)))


class TestCholToBnParams:
    def test_identity_factor(self):
        params = chol_to_bn_params(np.eye(3))
        np.testing.assert_array_equal(params.coefficients, np.zeros((3, 3)))
        np.testing.assert_array_equal(params.variances, np.ones(3))

    def test_two_by_two(self):
        u = np.array([[0.8, 0.6], [0.0, 1.0]])
        params = chol_to_bn_params(u)
        np.testing.assert_allclose(params.coefficients, [[0.0, 0.0], [-0.6, 0.0]])
        np.testing.assert_allclose(params.variances, [1.0 / 0.64, 1.0])

    def test_reconstruction_identity(self):
        rng = np.random.default_rng(13)
        for p in (2, 5, 11, 20):
            u = np.triu(rng.standard_normal((p, p)))
            u[np.diag_indices(p)] = np.abs(u[np.diag_indices(p)]) + 0.5
            params = chol_to_bn_params(u)
            eye_minus_b = np.eye(p) - params.coefficients
            recon = eye_minus_b.T @ np.diag(1.0 / params.variances) @ eye_minus_b
            np.testing.assert_allclose(recon, u @ u.T, atol=1e-12)

    def test_rejects_bad_factors(self):
        with pytest.raises(ValueError):
            chol_to_bn_params(np.array([[1.0, 0.0], [0.5, 1.0]]))
        with pytest.raises(ValueError):
            chol_to_bn_params(np.diag([1.0, -1.0]))
        with pytest.raises(ValueError):
            chol_to_bn_params(np.diag([1.0, 0.0]))


class TestSampleGaussian:
    def test_empty(self):
        x = sample_gaussian(np.eye(3), 0, seed=1)
        assert x.shape == (0, 3)

    def test_identity_covariance_monte_carlo(self):
        x = sample_gaussian(np.eye(3), 100_000, seed=7)
        cov = x.T @ x / x.shape[0]
        np.testing.assert_allclose(cov, np.eye(3), atol=0.02)

    def test_scalar_variance_monte_carlo(self):
        x = sample_gaussian(np.array([[4.0]]), 100_000, seed=8)
        assert abs(x.var() - 4.0) < 0.02 * 4.0

    def test_deterministic(self):
        a = sample_gaussian(np.eye(2), 5, seed=3)
        b = sample_gaussian(np.eye(2), 5, seed=3)
        np.testing.assert_array_equal(a, b)

    def test_rejects_indefinite_covariance(self):
        with pytest.raises(ValueError):
            sample_gaussian(np.array([[1.0, 2.0], [2.0, 1.0]]), 10, seed=0)

    def test_rejects_negative_count(self):
        with pytest.raises(ValueError):
            sample_gaussian(np.eye(2), -1, seed=0)
