import numpy as np
import pytest

from michelsonqkd.optical_elements import (
    ArmSpec,
    MirrorKind,
    mirror_operator,
    pm_fiber_operator,
    qwpr_reflection_action,
    roundtrip,
)
from michelsonqkd.su2_algebra import (
    haar_random_su2,
    is_unitary,
    jones_vector,
    pauli,
    power,
    proportional_to,
    proportionality_factor,
    su2,
)

I2 = np.eye(2, dtype=complex)


class TestPmFiber:
    def test_zero_birefringence(self):
        np.testing.assert_allclose(pm_fiber_operator(0.0), I2, atol=1e-15)

    def test_pi_birefringence(self):
        np.testing.assert_allclose(
            pm_fiber_operator(np.pi), [[1j, 0], [0, -1j]], atol=1e-15
        )

    def test_diagonal_unit_modulus(self):
        rng = np.random.default_rng(21)
        for delta in rng.uniform(-10, 10, size=200):
            op = pm_fiber_operator(delta)
            # matches the closed form diag(exp(i d/2), exp(-i d/2))
            np.testing.assert_allclose(
                op,
                np.diag([np.exp(1j * delta / 2), np.exp(-1j * delta / 2)]),
                atol=1e-15,
            )

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            pm_fiber_operator(np.inf)


class TestMirrorOperator:
    def test_qwp_reflector(self):
        np.testing.assert_allclose(
            mirror_operator(MirrorKind.QWP_REFLECTOR), [[0, 1j], [1j, 0]], atol=1e-15
        )

    def test_plain_mirror(self):
        np.testing.assert_array_equal(mirror_operator(MirrorKind.PLAIN_MIRROR), I2)

    def test_faraday_mirror(self):
        assert proportional_to(
            mirror_operator(MirrorKind.FARADAY_MIRROR), pauli(3), 1e-12
        )

    @pytest.mark.parametrize("kind", list(MirrorKind))
    def test_all_unitary(self, kind):
        assert is_unitary(mirror_operator(kind), 1e-15)


class TestRoundtrip:
    def test_qwpr_closed_form(self):
        # out-and-back through any PM fiber plus the quarter-wave reflector
        # collapses to i * pauli(2), independent of the fiber
        qwpr = mirror_operator(MirrorKind.QWP_REFLECTOR)
        target = 1j * pauli(2)
        for delta in np.linspace(0.0, 2 * np.pi, 1000, endpoint=False):
            rt = roundtrip(pm_fiber_operator(delta), qwpr)
            assert np.max(np.abs(rt - target)) <= 1e-10
            assert abs(proportionality_factor(rt, pauli(2)) - 1j) <= 1e-10

    def test_empty_arm(self):
        np.testing.assert_array_equal(roundtrip(I2, I2), I2)

    def test_plain_mirror_keeps_delta_dependence(self):
        rng = np.random.default_rng(22)
        plain = mirror_operator(MirrorKind.PLAIN_MIRROR)
        for delta in rng.uniform(0, 2 * np.pi, size=100):
            np.testing.assert_allclose(
                roundtrip(pm_fiber_operator(delta), plain),
                su2(delta, 1, 0, 0),
                atol=1e-12,
            )

    def test_plain_mirror_fades(self):
        plain = mirror_operator(MirrorKind.PLAIN_MIRROR)
        rt0 = roundtrip(pm_fiber_operator(0.0), plain)
        rt1 = roundtrip(pm_fiber_operator(np.pi / 2), plain)
        assert not proportional_to(rt0, rt1, 1e-6)

    def test_faraday_roundtrip_invariant(self):
        fm = mirror_operator(MirrorKind.FARADAY_MIRROR)
        for delta in np.linspace(0.0, 2 * np.pi, 1000, endpoint=False):
            assert proportional_to(roundtrip(pm_fiber_operator(delta), fm), pauli(3), 1e-10)

    @pytest.mark.parametrize("kind", list(MirrorKind))
    def test_unitarity_with_long_forward_chains(self, kind):
        rng = np.random.default_rng(23)
        mirror = mirror_operator(kind)
        for chain_len in range(1, 9):
            forward = I2
            for _ in range(chain_len):
                forward = haar_random_su2(rng) @ forward
            assert is_unitary(roundtrip(forward, mirror), 1e-10)

    def test_non_unitary_inputs_rejected(self):
        with pytest.raises(ValueError):
            roundtrip(2.0 * I2, I2)
        with pytest.raises(ValueError):
            roundtrip(I2, np.zeros((2, 2), dtype=complex))


class TestQwprReflectionAction:
    def test_x_to_y(self):
        out = qwpr_reflection_action(jones_vector(1, 0))
        np.testing.assert_allclose(out, [0, 1j], atol=1e-15)

    def test_y_to_x(self):
        out = qwpr_reflection_action(jones_vector(0, 1))
        np.testing.assert_allclose(out, [1j, 0], atol=1e-15)

    def test_power_preserved(self):
        rng = np.random.default_rng(24)
        for _ in range(100):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            assert power(qwpr_reflection_action(v)) == pytest.approx(power(v), rel=1e-12)


class TestArmSpec:
    def test_defaults(self):
        arm = ArmSpec(fiber_delta=0.3, mirror=MirrorKind.QWP_REFLECTOR)
        assert arm.phase_shift == 0.0 and arm.arm_phase == 0.0

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            ArmSpec(fiber_delta=np.nan, mirror=MirrorKind.PLAIN_MIRROR)
