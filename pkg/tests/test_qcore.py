import math

import numpy as np
import pytest

from spincorr.qcore import (
    ConstHamiltonian,
    ExpDecay,
    IDENTITY_2,
    PauliAxis,
    Sampled,
    TimeDepHamiltonian,
    TwoSpinHamiltonian,
    apply,
    dagger,
    expect,
    gibbs_weights,
    hermiticity_defect,
    pauli,
    propagator_const,
    propagator_timedep,
    rotation,
    tensor,
    thermal_state,
    unitarity_defect,
)

SX = pauli(PauliAxis.X)
SY = pauli(PauliAxis.Y)
SZ = pauli(PauliAxis.Z)


def rand_h(rng):
    c = rng.uniform(-500 * math.pi, 500 * math.pi, size=4)
    return ConstHamiltonian(*c)


class TestPauli:
    def test_matrices(self):
        assert np.array_equal(SX, [[0, 1], [1, 0]])
        assert np.array_equal(SY, [[0, -1j], [1j, 0]])
        assert np.array_equal(SZ, [[1, 0], [0, -1]])

    @pytest.mark.parametrize("axis", list(PauliAxis))
    def test_hermitian_unitary_traceless(self, axis):
        s = pauli(axis)
        assert hermiticity_defect(s) == 0
        assert unitarity_defect(s) < 1e-15
        assert abs(np.trace(s)) == 0

    def test_axis_parsing(self):
        assert PauliAxis.from_str("X") is PauliAxis.X
        with pytest.raises(ValueError, match="unknown Pauli axis"):
            PauliAxis.from_str("w")


class TestRotation:
    def test_gate_identities(self):
        # the fixed sign convention makes these exact
        assert np.allclose(rotation(PauliAxis.Z, -math.pi), 1j * SZ, atol=1e-15)
        assert np.allclose(rotation(PauliAxis.Y, math.pi), -1j * SY, atol=1e-15)
        assert np.allclose(1j * rotation(PauliAxis.X, math.pi), SX, atol=1e-15)

    def test_z_rotation_xy_decomposition(self):
        theta = 0.7321
        lhs = rotation(PauliAxis.Z, theta)
        rhs = (rotation(PauliAxis.Y, math.pi / 2) @ rotation(PauliAxis.X, -theta)
               @ rotation(PauliAxis.Y, -math.pi / 2))
        assert np.max(np.abs(lhs - rhs)) < 1e-15


class TestPropagatorConst:
    def test_zero_generator(self):
        assert np.allclose(propagator_const(ConstHamiltonian(), 1e-3), IDENTITY_2, atol=0)

    def test_full_z_period_gives_minus_identity(self):
        u = propagator_const(ConstHamiltonian(hz=-100 * math.pi), 10e-3)
        assert np.max(np.abs(u + IDENTITY_2)) < 1e-12

    def test_quarter_x_rotation(self):
        # a * dt = pi/2 -> exp(-i pi/2 sx) = -i sx
        u = propagator_const(ConstHamiltonian(hx=250.0), (math.pi / 2) / 250.0)
        assert np.max(np.abs(u + 1j * SX)) < 1e-12

    def test_unitarity_and_inverse(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            h = rand_h(rng)
            dt = rng.uniform(-10e-3, 10e-3)
            u = propagator_const(h, dt)
            assert unitarity_defect(u) < 1e-12
            assert np.max(np.abs(u @ propagator_const(h, -dt) - IDENTITY_2)) < 1e-12

    def test_rejects_nonfinite_dt(self):
        with pytest.raises(ValueError):
            propagator_const(ConstHamiltonian(hz=1.0), math.inf)


def drive_envelope():
    # amplitude 500*pi rad/s decaying at 300 1/s on the y axis
    return TimeDepHamiltonian(((PauliAxis.Y, ExpDecay(500 * math.pi, 300.0)),))


def drive_exact(t):
    theta = (5 * math.pi / 3) * (1 - math.exp(-300 * t))
    return math.cos(theta) * IDENTITY_2 - 1j * math.sin(theta) * SY


class TestPropagatorTimedep:
    def test_zero_length_interval(self):
        assert np.array_equal(propagator_timedep(drive_envelope(), 2e-3, 2e-3), IDENTITY_2)

    def test_exponential_drive_matches_integrated_envelope(self):
        # the envelope commutes with itself, so the exact propagator is the
        # exponential of the integrated coefficient
        t = 5.76e-3
        u = propagator_timedep(drive_envelope(), 0.0, t, steps=4096)
        assert np.max(np.abs(u - drive_exact(t))) < 1e-7
        assert unitarity_defect(u) < 1e-12

    def test_second_order_convergence(self):
        t = 5.76e-3
        h = drive_envelope()
        u1 = propagator_timedep(h, 0.0, t, steps=256)
        u2 = propagator_timedep(h, 0.0, t, steps=512)
        u4 = propagator_timedep(h, 0.0, t, steps=1024)
        d12 = np.max(np.abs(u1 - u2))
        d24 = np.max(np.abs(u2 - u4))
        assert 3.5 < d12 / d24 < 4.5

    def test_constant_sampled_envelope_matches_const(self):
        c = 120.0
        h = TimeDepHamiltonian(((PauliAxis.Z, Sampled((0.0, 1.0), (c, c))),))
        t = 3.7e-3
        u = propagator_timedep(h, 0.0, t, steps=16)
        assert np.max(np.abs(u - propagator_const(ConstHamiltonian(hz=c), t))) < 1e-13

    def test_rejects_reversed_interval(self):
        with pytest.raises(ValueError, match="t1 >= t0"):
            propagator_timedep(drive_envelope(), 1e-3, 0.0)

    def test_rejects_bad_steps(self):
        with pytest.raises(ValueError, match="steps"):
            propagator_timedep(drive_envelope(), 0.0, 1e-3, steps=0)

    def test_sampled_grid_validation(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            Sampled((0.0, 0.0), (1.0, 2.0))


class TestLinalg:
    def test_tensor_of_identities(self):
        assert np.array_equal(tensor(IDENTITY_2, IDENTITY_2), np.eye(4))

    def test_expect_trivials(self):
        ket0 = np.array([1, 0], dtype=complex)
        plus = np.array([1, 1], dtype=complex) / math.sqrt(2)
        assert expect(SZ, ket0) == 1
        assert abs(expect(SX, plus) - 1) < 1e-15

    def test_expect_real_for_hermitian(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            herm = a + dagger(a)
            psi = rng.normal(size=2) + 1j * rng.normal(size=2)
            psi /= np.linalg.norm(psi)
            assert abs(expect(herm, psi).imag) < 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            apply(np.eye(4, dtype=complex), np.array([1, 0], dtype=complex))
        with pytest.raises(ValueError, match="dimension mismatch"):
            expect(np.eye(4, dtype=complex), np.array([1, 0], dtype=complex))

    def test_dagger(self):
        a = np.array([[1, 2j], [3, 4]], dtype=complex)
        assert np.array_equal(dagger(a), a.conj().T)


class TestTwoSpin:
    def test_diagonal_structure(self):
        h = TwoSpinHamiltonian(hz1=2.0, hz2=3.0, jzz=5.0)
        expected = np.diag([2 + 3 + 5, 2 - 3 - 5, -2 + 3 - 5, -2 - 3 + 5]).astype(complex)
        assert np.array_equal(h.matrix(), expected)

    def test_propagator_unitary(self):
        h = TwoSpinHamiltonian(hz1=-100 * math.pi, hz2=40.0, jzz=300.0)
        assert unitarity_defect(h.propagator(2e-3)) < 1e-12


class TestThermal:
    def test_zero_temperature_selects_ground(self):
        w = gibbs_weights(np.array([-5.0, 5.0]), math.inf)
        assert np.array_equal(w, [1.0, 0.0])

    def test_infinite_temperature_is_uniform(self):
        w = gibbs_weights(np.array([-5.0, 5.0]), 0.0)
        assert np.array_equal(w, [0.5, 0.5])

    def test_degenerate_ground_shares_weight(self):
        w = gibbs_weights(np.array([1.0, 1.0]), math.inf)
        assert np.array_equal(w, [0.5, 0.5])

    def test_thermal_state_properties(self):
        rho = thermal_state(ConstHamiltonian(hz=-100 * math.pi).matrix(), 0.003)
        assert abs(np.trace(rho) - 1) < 1e-12
        assert hermiticity_defect(rho) < 1e-12
        assert np.min(np.linalg.eigvalsh(rho)) > -1e-12

    def test_rejects_nan_beta(self):
        with pytest.raises(ValueError):
            gibbs_weights(np.array([0.0, 1.0]), math.nan)
