import numpy as np
import pytest

from colsel import (
    BadSpecError,
    GeneratorSpec,
    generate,
    gram,
    operator_norm_sq,
    sym_eig,
)

# pins the Philox raw stream, the uniform mapping and the Box-Muller order;
# regenerated values must match bit-for-bit
FROZEN_SPHERE_4x3_SEED123 = np.array(
    [
        [0.22091195198687308, 0.7569622763933582, 0.7349040453307373],
        [0.5001209977336796, 0.597200374325066, 0.1523301478600614],
        [0.2083857995919512, -0.25750365043411333, 0.6604003054849729],
        [0.8109576164163214, 0.06365292637807071, -0.02414553219135564],
    ]
)


def _norms(x):
    return np.sqrt((x * x).sum(axis=0))


class TestIdentityFamily:
    def test_square(self):
        x = generate(GeneratorSpec("identity", 8, 8))
        np.testing.assert_array_equal(x, np.eye(8))

    def test_wide_rejected(self):
        with pytest.raises(BadSpecError):
            generate(GeneratorSpec("identity", 4, 8))


class TestRandomSphere:
    def test_unit_norms(self):
        x = generate(GeneratorSpec("random_sphere", 50, 200, seed=42))
        assert np.max(np.abs(_norms(x) - 1.0)) <= 1e-14

    def test_operator_norm_in_expected_range(self):
        x = generate(GeneratorSpec("random_sphere", 50, 200, seed=42))
        opn = operator_norm_sq(x)
        # concentration for unit columns: around (1 + sqrt(p/n))^2
        assert 200 / 50 <= opn <= 2 * (1 + np.sqrt(200 / 50)) ** 2

    def test_bit_reproducible(self):
        spec = GeneratorSpec("random_sphere", 30, 70, seed=5)
        assert np.array_equal(generate(spec), generate(spec))

    def test_seeds_differ(self):
        a = generate(GeneratorSpec("random_sphere", 10, 10, seed=1))
        b = generate(GeneratorSpec("random_sphere", 10, 10, seed=2))
        assert not np.array_equal(a, b)

    def test_frozen_stream(self):
        x = generate(GeneratorSpec("random_sphere", 4, 3, seed=123))
        np.testing.assert_array_equal(x, FROZEN_SPHERE_4x3_SEED123)


class TestUnionOrthobases:
    def test_requires_divisibility(self):
        with pytest.raises(BadSpecError):
            generate(GeneratorSpec("union_orthobases", 10, 25, seed=0))

    def test_blocks_are_orthonormal(self):
        x = generate(GeneratorSpec("union_orthobases", 16, 48, seed=3))
        for b in range(3):
            block = x[:, 16 * b : 16 * (b + 1)]
            np.testing.assert_allclose(gram(block), np.eye(16), rtol=0, atol=1e-13)

    def test_operator_norm_is_block_count(self):
        x = generate(GeneratorSpec("union_orthobases", 20, 80, seed=11))
        assert operator_norm_sq(x) == pytest.approx(4.0, abs=1e-10)


class TestDuplicatedColumns:
    def test_single_distinct_column(self):
        x = generate(GeneratorSpec("duplicated_columns", 6, 9, seed=4))
        for j in range(1, 9):
            np.testing.assert_array_equal(x[:, j], x[:, 0])

    def test_cyclic_tiling(self):
        spec = GeneratorSpec("duplicated_columns", 6, 9, seed=4, params={"distinct": 4})
        x = generate(spec)
        np.testing.assert_array_equal(x[:, 4], x[:, 0])
        np.testing.assert_array_equal(x[:, 8], x[:, 0])
        assert not np.array_equal(x[:, 1], x[:, 0])

    def test_distinct_bounds(self):
        with pytest.raises(BadSpecError):
            generate(GeneratorSpec("duplicated_columns", 6, 9, params={"distinct": 10}))


class TestNearParallelPair:
    def test_zero_angle_duplicates_exactly(self):
        x = generate(GeneratorSpec("near_parallel_pair", 5, 2, seed=7))
        np.testing.assert_array_equal(x[:, 0], x[:, 1])
        g = gram(x)
        np.testing.assert_allclose(g, np.ones((2, 2)), rtol=0, atol=1e-15)
        values = sym_eig(g).values
        np.testing.assert_allclose(values, [2.0, 0.0], rtol=0, atol=1e-14)

    def test_angle_sets_inner_product(self):
        theta = 0.3
        spec = GeneratorSpec("near_parallel_pair", 12, 6, seed=7, params={"theta": theta})
        x = generate(spec)
        assert x[:, 0] @ x[:, 1] == pytest.approx(np.cos(theta), abs=1e-12)
        assert np.max(np.abs(_norms(x) - 1.0)) <= 1e-14

    def test_needs_two_columns(self):
        with pytest.raises(BadSpecError):
            generate(GeneratorSpec("near_parallel_pair", 5, 1))


class TestSpiked:
    def test_unit_norms_and_coherence(self):
        n, p, strength = 20, 60, 3.0
        spec = GeneratorSpec("spiked", n, p, seed=2, params={"strength": strength})
        x = generate(spec)
        assert np.max(np.abs(_norms(x) - 1.0)) <= 1e-14
        # pairwise coherence concentrates near strength^2 / (strength^2 + n),
        # so the top eigenvalue scales like p times that
        expected = p * strength**2 / (strength**2 + n)
        assert operator_norm_sq(x) > 0.8 * expected

    def test_strength_zero_matches_sphere(self):
        a = generate(GeneratorSpec("spiked", 10, 20, seed=6, params={"strength": 0.0}))
        assert np.max(np.abs(_norms(a) - 1.0)) <= 1e-14


def test_unknown_family_rejected():
    with pytest.raises(BadSpecError):
        generate(GeneratorSpec("hadamard", 4, 4))


def test_dimensions_validated():
    with pytest.raises(BadSpecError):
        generate(GeneratorSpec("random_sphere", 0, 5))
