import numpy as np
import pytest
from scipy.stats import chisquare

from michelsonqkd.su2_algebra import (
    ALGEBRA_TOL,
    SU2Params,
    apply,
    dagger,
    det,
    haar_random_su2,
    is_unitary,
    jones_vector,
    mul,
    pauli,
    power,
    proportional_to,
    proportionality_factor,
    scale,
    su2,
    transpose,
    u_from_params,
)

I2 = np.eye(2, dtype=complex)


class TestPauli:
    def test_matrix_values(self):
        np.testing.assert_array_equal(pauli(0), I2)
        np.testing.assert_array_equal(pauli(1), [[1, 0], [0, -1]])
        np.testing.assert_array_equal(pauli(2), [[0, 1], [1, 0]])
        np.testing.assert_array_equal(pauli(3), [[0, 1j], [-1j, 0]])

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_self_product_is_identity(self, k):
        np.testing.assert_array_equal(mul(pauli(k), pauli(k)), I2)

    @pytest.mark.parametrize("k", [-1, 4, 17])
    def test_bad_index(self, k):
        with pytest.raises(ValueError):
            pauli(k)

    def test_product_rule_exact(self):
        # sigma2 sigma1 = i sigma3 and sigma2 sigma1 = -sigma1 sigma2,
        # entrywise exact because all entries are exact floats
        p21 = mul(pauli(2), pauli(1))
        assert np.max(np.abs(p21 - 1j * pauli(3))) <= 1e-15
        assert np.max(np.abs(p21 + mul(pauli(1), pauli(2)))) <= 1e-15

    def test_returns_fresh_copy(self):
        a = pauli(2)
        a[0, 0] = 99.0
        assert pauli(2)[0, 0] == 0.0


class TestUFromParams:
    def test_half_pi_axis2(self):
        np.testing.assert_allclose(
            su2(np.pi / 2, 0, 1, 0), [[0, 1j], [1j, 0]], atol=1e-15
        )

    @pytest.mark.parametrize("s", [(1, 0, 0), (0, 0, 1), (0.6, 0.8, 0.0)])
    def test_zero_angle_is_identity(self, s):
        np.testing.assert_allclose(u_from_params(SU2Params(0.0, s)), I2, atol=1e-15)

    def test_quarter_squared_is_half(self):
        # the quarter-wave element composed with its transpose gives the
        # half rotation; verified by explicit multiplication
        quarter = su2(np.pi / 4, 0, 1, 0)
        np.testing.assert_allclose(
            mul(transpose(quarter), quarter), su2(np.pi / 2, 0, 1, 0), atol=1e-15
        )
        np.testing.assert_allclose(
            mul(quarter, quarter), 1j * pauli(2), atol=1e-15
        )

    def test_non_unit_axis_rejected(self):
        with pytest.raises(ValueError):
            SU2Params(0.3, (1.0, 1.0, 0.0))
        with pytest.raises(ValueError):
            su2(0.3, 0.5, 0.5, 0.5)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            SU2Params(np.nan, (1.0, 0.0, 0.0))

    def test_random_params_unitary(self):
        rng = np.random.default_rng(11)
        for _ in range(10_000):
            axis = rng.normal(size=3)
            axis /= np.linalg.norm(axis)
            u = u_from_params(SU2Params(rng.uniform(0, 2 * np.pi), tuple(axis)))
            assert is_unitary(u, ALGEBRA_TOL)


class TestBasicOps:
    def test_transpose_of_diagonal_is_noop(self):
        l_op = su2(0.7 / 2, 1, 0, 0)
        np.testing.assert_array_equal(transpose(l_op), l_op)

    def test_unitary_times_dagger(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            u = haar_random_su2(rng)
            np.testing.assert_allclose(mul(u, dagger(u)), I2, atol=1e-14)

    def test_apply_identity(self):
        v = jones_vector(0.3 + 0.1j, -0.7j)
        np.testing.assert_array_equal(apply(I2, v), v)

    def test_involutions_and_associativity(self):
        rng = np.random.default_rng(6)
        for _ in range(300):
            a, b, c = haar_random_su2(rng, size=3)
            np.testing.assert_array_equal(transpose(transpose(a)), a)
            np.testing.assert_array_equal(dagger(dagger(a)), a)
            lhs = mul(mul(a, b), c)
            rhs = mul(a, mul(b, c))
            assert np.max(np.abs(lhs - rhs)) <= 1e-12

    def test_power_and_scale(self):
        v = jones_vector(3.0, 4.0j)
        assert power(v) == pytest.approx(25.0)
        np.testing.assert_array_equal(scale(pauli(1), 2j), [[2j, 0], [0, -2j]])


class TestIsUnitary:
    def test_pauli_unitary(self):
        assert is_unitary(pauli(3), 1e-12)

    def test_scaled_identity_not_unitary(self):
        assert not is_unitary(2.0 * I2, 1e-12)

    def test_haar_samples_unitary(self):
        rng = np.random.default_rng(12)
        for u in haar_random_su2(rng, size=500):
            assert is_unitary(u, 1e-10)

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            is_unitary(I2, 0.0)


class TestHaarSampling:
    def test_determinism(self):
        a = haar_random_su2(987654321)
        b = haar_random_su2(987654321)
        np.testing.assert_array_equal(a, b)

    def test_unit_determinant(self):
        rng = np.random.default_rng(13)
        for u in haar_random_su2(rng, size=1000):
            assert abs(det(u) - 1.0) <= 1e-12

    def test_trace_moment(self):
        # first moment of |tr U|^2 over the group is 1, so |tr|^2 / 4
        # averages to 1/4
        us = haar_random_su2(np.random.default_rng(14), size=100_000)
        traces = us[:, 0, 0] + us[:, 1, 1]
        mean = float(np.mean(np.abs(traces) ** 2 / 4.0))
        assert abs(mean - 0.25) <= 0.01

    def test_first_column_direction_uniform(self):
        # octant chi-square on the sphere direction of the first column
        us = haar_random_su2(np.random.default_rng(15), size=100_000)
        top, bottom = us[:, 0, 0], us[:, 1, 0]
        x = 2.0 * np.real(np.conj(top) * bottom)
        y = 2.0 * np.imag(np.conj(top) * bottom)
        z = np.abs(top) ** 2 - np.abs(bottom) ** 2
        octant = (x > 0).astype(int) + 2 * (y > 0).astype(int) + 4 * (z > 0).astype(int)
        counts = np.bincount(octant, minlength=8)
        assert chisquare(counts).pvalue > 0.001


class TestProportionalTo:
    def test_phase_factor(self):
        assert proportional_to(1j * pauli(2), pauli(2), 1e-12)

    def test_independent_matrices(self):
        assert not proportional_to(pauli(1), pauli(2), 1e-6)

    def test_non_unit_modulus_rejected(self):
        assert not proportional_to(2.0 * I2, I2, 1e-9)

    def test_random_phases(self):
        rng = np.random.default_rng(16)
        for _ in range(300):
            u = haar_random_su2(rng)
            theta = rng.uniform(0, 2 * np.pi)
            assert proportional_to(np.exp(1j * theta) * u, u, 1e-10)
            assert proportionality_factor(np.exp(1j * theta) * u, u) == pytest.approx(
                np.exp(1j * theta), abs=1e-12
            )

    def test_zero_reference_rejected(self):
        with pytest.raises(ValueError):
            proportionality_factor(I2, np.zeros((2, 2), dtype=complex))
