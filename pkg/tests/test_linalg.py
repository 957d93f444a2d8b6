import numpy as np
import pytest

from colsel import (
    NoConvergenceError,
    NotSymmetricError,
    ZeroColumnError,
    gram,
    normalize_columns,
    operator_norm_sq,
    sym_eig,
)
from conftest import unit_columns


class TestNormalizeColumns:
    def test_identity_unchanged(self):
        np.testing.assert_array_equal(normalize_columns(np.eye(3)), np.eye(3))

    def test_three_four_five(self):
        out = normalize_columns(np.array([[3.0], [4.0]]))
        np.testing.assert_allclose(out[:, 0], [0.6, 0.8], rtol=0, atol=1e-15)

    def test_random_norms_become_unit(self):
        m = np.random.default_rng(7).standard_normal((5, 8))
        out = normalize_columns(m)
        norms = np.sqrt((out * out).sum(axis=0))
        assert np.max(np.abs(norms - 1.0)) <= 1e-14

    def test_direction_preserved(self):
        m = np.random.default_rng(5).standard_normal((6, 4))
        out = normalize_columns(m)
        for j in range(4):
            cos = out[:, j] @ m[:, j] / np.linalg.norm(m[:, j])
            assert cos == pytest.approx(1.0, abs=1e-14)

    def test_idempotent(self):
        m = np.random.default_rng(11).standard_normal((7, 5))
        once = normalize_columns(m)
        twice = normalize_columns(once)
        assert np.max(np.abs(twice - once)) <= 1e-14

    def test_zero_column_rejected(self):
        m = np.eye(3)
        m[:, 1] = 0.0
        with pytest.raises(ZeroColumnError) as err:
            normalize_columns(m)
        assert err.value.index == 1


class TestGram:
    def test_orthonormal_gives_identity(self):
        q = np.linalg.qr(np.random.default_rng(2).standard_normal((6, 4)))[0]
        np.testing.assert_allclose(gram(q), np.eye(4), rtol=0, atol=1e-14)

    def test_two_columns_at_angle(self):
        theta = 0.7
        y = np.array([[1.0, np.cos(theta)], [0.0, np.sin(theta)]])
        c = np.cos(theta)
        np.testing.assert_allclose(
            gram(y), [[1.0, c], [c, 1.0]], rtol=0, atol=1e-15
        )

    def test_matches_triple_loop(self):
        y = np.random.default_rng(1).standard_normal((6, 3))
        expected = np.zeros((3, 3))
        for i in range(3):
            for j in range(3):
                for k in range(6):
                    expected[i, j] += y[k, i] * y[k, j]
        np.testing.assert_allclose(gram(y), expected, rtol=0, atol=1e-12)

    def test_exactly_symmetric(self):
        y = np.random.default_rng(9).standard_normal((40, 25))
        g = gram(y)
        assert np.array_equal(g, g.T)

    def test_trace_is_sum_of_squared_norms(self):
        y = np.random.default_rng(3).standard_normal((10, 6))
        norms_sq = (y * y).sum(axis=0)
        assert np.trace(gram(y)) == pytest.approx(norms_sq.sum(), abs=1e-12 * 6)

    def test_unit_columns_trace_equals_count(self):
        y = unit_columns(np.random.default_rng(4), 12, 7)
        assert np.trace(gram(y)) == pytest.approx(7.0, abs=1e-12 * 7)


def _char_poly_roots(a: np.ndarray) -> np.ndarray:
    """Eigenvalue oracle: Faddeev-LeVerrier characteristic polynomial
    coefficients, then companion-matrix roots via numpy.roots."""
    n = a.shape[0]
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[k - 1] * np.eye(n)
        coeffs[k] = -np.trace(a @ m) / k
    roots = np.roots(coeffs)
    return np.sort(roots.real)[::-1]


class TestSymEig:
    def test_identity_spectrum(self):
        eig = sym_eig(np.eye(5))
        np.testing.assert_allclose(eig.values, np.ones(5), rtol=0, atol=1e-14)

    def test_two_by_two_coupling(self):
        eig = sym_eig(np.array([[1.0, 0.5], [0.5, 1.0]]))
        np.testing.assert_allclose(eig.values, [1.5, 0.5], rtol=0, atol=1e-14)

    def test_matches_characteristic_polynomial_oracle(self):
        a = np.random.default_rng(3).standard_normal((8, 8))
        a = 0.5 * (a + a.T)
        expected = _char_poly_roots(a)
        np.testing.assert_allclose(sym_eig(a).values, expected, rtol=0, atol=1e-9)

    def test_vectors_orthonormal(self):
        a = np.random.default_rng(8).standard_normal((12, 12))
        a = 0.5 * (a + a.T)
        v = sym_eig(a).vectors
        assert np.max(np.abs(v.T @ v - np.eye(12))) <= 1e-10

    def test_eigen_residual(self):
        a = np.random.default_rng(13).standard_normal((9, 9))
        a = 0.5 * (a + a.T)
        eig = sym_eig(a)
        scale = np.linalg.norm(a)
        for k in range(9):
            res = a @ eig.vectors[:, k] - eig.values[k] * eig.vectors[:, k]
            assert np.linalg.norm(res) <= 1e-9 * scale

    def test_reconstruction(self):
        a = np.random.default_rng(21).standard_normal((10, 10))
        a = 0.5 * (a + a.T)
        eig = sym_eig(a)
        back = eig.vectors @ np.diag(eig.values) @ eig.vectors.T
        assert np.linalg.norm(back - a) <= 1e-9 * np.linalg.norm(a)

    def test_values_sum_to_trace(self):
        a = np.random.default_rng(30).standard_normal((15, 15))
        a = 0.5 * (a + a.T)
        assert sym_eig(a).values.sum() == pytest.approx(np.trace(a), abs=1e-10 * 15)

    def test_descending_order(self):
        a = np.random.default_rng(17).standard_normal((11, 11))
        a = 0.5 * (a + a.T)
        values = sym_eig(a).values
        assert np.all(np.diff(values) <= 0)

    def test_rejects_asymmetric(self):
        a = np.array([[1.0, 2.0], [0.0, 1.0]])
        with pytest.raises(NotSymmetricError):
            sym_eig(a)

    def test_rejects_oversized(self):
        with pytest.raises(ValueError):
            sym_eig(np.eye(5), dim_cap=4)

    def test_no_convergence_when_sweeps_exhausted(self):
        a = np.array([[1.0, 0.5], [0.5, 1.0]])
        with pytest.raises(NoConvergenceError):
            sym_eig(a, max_sweeps=0)


class TestOperatorNormSq:
    def test_identity_is_one(self):
        assert operator_norm_sq(np.eye(6)) == pytest.approx(1.0, abs=1e-12)

    def test_repeated_column_is_count(self):
        x = np.tile(np.array([[0.6], [0.8]]), (1, 5))
        assert operator_norm_sq(x) == pytest.approx(5.0, abs=1e-12)

    def test_matches_gram_eigensolver(self):
        x = unit_columns(np.random.default_rng(9), 20, 50)
        expected = sym_eig(gram(x)).values[0]
        assert operator_norm_sq(x) == pytest.approx(expected, rel=1e-9)

    def test_at_least_frobenius_over_p(self):
        x = unit_columns(np.random.default_rng(14), 10, 30)
        assert operator_norm_sq(x) >= (x * x).sum() / 30 - 1e-12

    def test_unit_column_trace_identity(self):
        # eigenvalues of X X^T sum to the column count for unit columns
        x = unit_columns(np.random.default_rng(23), 9, 18)
        outer = x @ x.T
        vals = sym_eig(0.5 * (outer + outer.T)).values
        assert vals.sum() == pytest.approx(18.0, abs=1e-10 * 18)
