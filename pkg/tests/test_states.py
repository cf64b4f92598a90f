import numpy as np
import pytest

from tfim_phases.errors import UnphysicalStateError
from tfim_phases.ising import Correlators, CouplingRatio, correlators
from tfim_phases.linalg import SIGMA_X, SIGMA_Y, SIGMA_Z
from tfim_phases.states import (
    LoopSpec,
    evolve,
    partial_trace,
    rotation_pair,
    rotation_single,
    single_site_state,
    two_site_state,
)

PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


class TestSingleSiteState:
    def test_pure_up(self):
        assert np.allclose(single_site_state(1.0).matrix, np.diag([1.0, 0.0]))

    def test_maximally_mixed(self):
        assert np.allclose(single_site_state(0.0).matrix, np.eye(2) / 2)

    def test_eigenvalues(self):
        w = np.linalg.eigvalsh(single_site_state(0.5).matrix)
        assert np.allclose(sorted(w), [0.25, 0.75])

    def test_overshoot_clamped_and_rejected(self):
        assert np.linalg.eigvalsh(single_site_state(1.0 + 5e-10).matrix).min() >= 0
        with pytest.raises(ValueError):
            single_site_state(1.01)


class TestTwoSiteState:
    def test_uncorrelated_is_maximally_mixed(self):
        c = Correlators(r=1, m=0.0, c_xx=0.0, c_yy=0.0, c_zz=0.0)
        assert np.allclose(two_site_state(c).matrix, np.eye(4) / 4)

    def test_free_ground_state_is_pure(self):
        c = Correlators(r=1, m=1.0, c_xx=0.0, c_yy=0.0, c_zz=1.0)
        rho = two_site_state(c).matrix
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        assert np.allclose(rho, expected)

    def test_critical_point_entries(self):
        c = correlators(1, CouplingRatio(1.0))
        rho = two_site_state(c).matrix
        assert rho[0, 0] == pytest.approx((1 + 2 * c.m + c.c_zz) / 4, abs=1e-14)
        assert rho[1, 1] == pytest.approx((1 - c.c_zz) / 4, abs=1e-14)
        assert rho[3, 3] == pytest.approx((1 - 2 * c.m + c.c_zz) / 4, abs=1e-14)
        assert rho[0, 3] == pytest.approx((c.c_xx - c.c_yy) / 4, abs=1e-14)
        assert rho[1, 2] == pytest.approx((c.c_xx + c.c_yy) / 4, abs=1e-14)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)

    def test_x_shape(self):
        c = correlators(2, CouplingRatio(0.7))
        rho = two_site_state(c).matrix
        mask = np.zeros((4, 4), dtype=bool)
        for i, j in [(0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)]:
            mask[i, j] = True
        assert np.abs(rho[~mask]).max() <= 1e-12

    def test_unphysical_correlators_rejected(self):
        c = Correlators(r=1, m=0.0, c_xx=0.99, c_yy=-0.99, c_zz=0.0)
        with pytest.raises(UnphysicalStateError):
            two_site_state(c)

    def test_partial_trace_reduces_to_single_site(self):
        c = correlators(1, CouplingRatio(1.3))
        rho = two_site_state(c).matrix
        single = single_site_state(c.m).matrix
        assert np.abs(partial_trace(rho, 0) - single).max() <= 1e-12
        assert np.abs(partial_trace(rho, 1) - single).max() <= 1e-12


class TestRotations:
    def test_identity(self):
        assert np.allclose(rotation_single(0.0, 0.0), np.eye(2))
        assert np.allclose(rotation_pair(0.0, 0.0), np.eye(4))

    def test_spinor_sign_at_full_turn(self):
        assert np.abs(rotation_single(2 * np.pi, 0.0) + np.eye(2)).max() <= 1e-14

    def test_pair_full_turn_sign_cancels(self):
        theta = 0.8
        assert np.abs(rotation_pair(2 * np.pi, theta) - rotation_pair(0.0, theta)).max() <= 1e-13

    def test_quarter_y_rotation(self):
        expected = np.array([[1.0, -1.0], [1.0, 1.0]]) * np.sqrt(2) / 2
        assert np.allclose(rotation_single(0.0, np.pi / 2), expected)

    def test_unitarity(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            phi, theta = rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi)
            u = rotation_pair(phi, theta)
            assert np.abs(u.conj().T @ u - np.eye(4)).max() <= 1e-14


class TestEvolve:
    def test_maximally_mixed_invariant(self):
        rng = np.random.default_rng(19)
        for _ in range(10):
            phi, theta = rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi)
            assert np.allclose(evolve(np.eye(4) / 4, phi, theta), np.eye(4) / 4)

    def test_identity_point(self):
        c = correlators(1, CouplingRatio(0.9))
        rho = two_site_state(c).matrix
        assert np.allclose(evolve(rho, 0.0, 0.0), rho)

    def test_spectrum_invariance(self):
        rng = np.random.default_rng(23)
        c = correlators(1, CouplingRatio(1.1))
        pair = two_site_state(c).matrix
        single = single_site_state(c.m).matrix
        for _ in range(1000):
            phi, theta = rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi)
            for rho in (pair, single):
                before = np.linalg.eigvalsh(rho)
                after = np.linalg.eigvalsh(evolve(rho, phi, theta))
                assert np.abs(before - after).max() <= 1e-12

    def test_corotating_correlations_unchanged(self):
        # local rotations leave co-rotated two-site correlations invariant
        rng = np.random.default_rng(29)
        c = correlators(1, CouplingRatio(1.2))
        rho = two_site_state(c).matrix
        values = {"x": c.c_xx, "y": c.c_yy, "z": c.c_zz}
        for _ in range(20):
            phi, theta = rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi)
            rotated = evolve(rho, phi, theta)
            u = rotation_single(phi, theta)
            for axis, sigma in PAULI.items():
                op = np.kron(u @ sigma @ u.conj().T, u @ sigma @ u.conj().T)
                val = np.trace(rotated @ op).real
                assert val == pytest.approx(values[axis], abs=1e-12)

    def test_bad_shape(self):
        with pytest.raises(ValueError):
            evolve(np.eye(3), 0.0, 0.0)


class TestLoopSpec:
    def test_defaults(self):
        loop = LoopSpec(theta=np.pi / 3)
        assert loop.steps == 2000

    def test_validation(self):
        with pytest.raises(ValueError):
            LoopSpec(theta=np.pi / 3, steps=8)
        with pytest.raises(ValueError):
            LoopSpec(theta=-0.1)
        with pytest.raises(ValueError):
            LoopSpec(theta=3.5)
