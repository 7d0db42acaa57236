import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from periodlab import diffeo as dfm
from periodlab import period, segal, tangent
from periodlab.fourier import CircleSeries, VectorField
from periodlab.sampling import random_diffeo, random_mobius

N, M, K = 32, 2048, 16


def series_diffeo(modes, m_count=M):
    return dfm.make_diffeo(CircleSeries.from_modes(modes, max(modes), real=True), m_count)


def Pi(phi, n=N, **kw):
    return period.period_matrix(segal.blocks(phi, n), **kw)


class TestExamples:
    def test_identity(self):
        point = Pi(dfm.identity(M))
        assert np.max(np.abs(point.Z)) < 1e-14
        assert point.min_eig_IminusZZbar == pytest.approx(1.0)

    @pytest.mark.parametrize("a", [0.3, 0.45j, -0.2 - 0.3j])
    def test_mobius_kernel(self, a):
        Z = Pi(dfm.mobius_boundary(dfm.MobiusParams(a, 0.5), M)).Z
        assert np.max(np.abs(Z)) <= 1e-8

    @pytest.mark.parametrize("eps", [1e-2, 1e-3])
    def test_first_order_entry(self, eps):
        Z = Pi(series_diffeo({2: eps / 2j})).Z
        assert abs(Z[0, 0] + eps / 2) < eps ** 2

    def test_first_order_matrix(self):
        # Z(eps) / eps -> d_pi(sin 2 theta) with an O(eps) remainder
        lam = tangent.d_pi(VectorField.sin(2), N).lam
        errs = [np.max(np.abs(Pi(series_diffeo({2: e / 2j})).Z / e - lam)[:K, :K])
                for e in (2e-3, 1e-3)]
        assert errs[0] / errs[1] == pytest.approx(2.0, rel=0.05)

    def test_shapes_and_diagnostics(self):
        point = Pi(series_diffeo({3: 0.1j}), interior=8)
        assert point.Z.shape == (N, N)
        assert point.interior == 8
        assert set(point.diagnostics()) == {"cond_A", "sym_residual", "min_eig"}

    def test_larger_size_from_same_blocks(self):
        b = segal.blocks(series_diffeo({3: 0.1j}), N)
        small = period.period_matrix(b).Z
        big = period.period_matrix(b, size=2 * N).Z
        assert big.shape == (2 * N, 2 * N)
        assert np.max(np.abs(big[:K, :K] - small[:K, :K])) < 1e-10

    def test_size_beyond_extension(self):
        b = segal.blocks(dfm.identity(256), 8)
        with pytest.raises(ValueError):
            period.period_matrix(b, size=b.n_ext + 1)

    def test_conditioning_error(self):
        # min phi' = 0.05: the graph condition number is about 26 at N = 32
        b = segal.blocks(series_diffeo({2: -0.2375j}, 4096), N)
        assert period.period_matrix(b, cond_max=1e4).cond_A > 10
        with pytest.raises(period.ConditioningError, match="ill-conditioned"):
            period.period_matrix(b, cond_max=10)


class TestSiegel:
    def test_diagonal(self):
        d = period.siegel_membership(0.5 * np.eye(4))
        assert d.symmetry_residual == 0
        assert d.min_eig == pytest.approx(0.75)
        assert d.member

    def test_asymmetric_fails(self):
        Z = np.array([[0, 0.1], [0.2, 0]])
        d = period.siegel_membership(Z)
        assert d.symmetry_residual == pytest.approx(0.1)
        assert not d.member

    def test_outside_disc_fails(self):
        d = period.siegel_membership(1.2 * np.eye(3))
        assert d.min_eig < 0 and not d.member

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            period.siegel_membership(np.zeros((2, 3)))

    @settings(max_examples=8, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_random_diffeos_land_in_disc(self, seed):
        rng = np.random.default_rng(seed)
        point = Pi(random_diffeo(rng, (0.3, 0.9), M), interior=K)
        assert point.symmetry_residual <= 1e-6
        assert point.min_eig_IminusZZbar > 0


class TestAction:
    def test_zero_maps_to_period_matrix(self):
        b = segal.blocks(series_diffeo({3: 0.1j, 2: 0.05}), N)
        np.testing.assert_allclose(period.mobius_act(b, np.zeros((N, N))),
                                   period.period_matrix(b).Z, atol=1e-13)

    def test_rotation(self):
        b = segal.blocks(dfm.rotation(0.4, M), N)
        rng = np.random.default_rng(0)
        X = 0.05 * rng.normal(size=(N, N))
        Z = X + X.T
        phase = np.exp(-0.4j * np.arange(1, N + 1))
        np.testing.assert_allclose(period.mobius_act(b, Z),
                                   phase[:, None] * Z * phase[None, :], atol=1e-13)

    def test_mobius_fixes_origin(self):
        b = segal.blocks(dfm.mobius_boundary(dfm.MobiusParams(0.3j, 1.0), M), N)
        assert np.max(np.abs(period.mobius_act(b, np.zeros((N, N))))) < 1e-8

    def test_successive_actions(self, rng):
        n = 16
        psi = random_diffeo(rng, 0.7, M)
        chi = random_diffeo(rng, 0.7, M)
        bpsi, bchi = segal.blocks(psi, n), segal.blocks(chi, n)
        Z = Pi(random_diffeo(rng, 0.7, M), 4 * n).Z
        two_step = period.mobius_act(bchi, period.mobius_act(bpsi, Z, size=2 * n))
        one_step = period.mobius_act(segal.compose_blocks(bchi, bpsi), Z)
        assert np.max(np.abs(two_step - one_step)[:n // 2, :n // 2]) <= 1e-7

    def test_too_large(self):
        b = segal.blocks(dfm.identity(256), 8)
        with pytest.raises(ValueError):
            period.mobius_act(b, np.zeros((b.n_ext + 1, b.n_ext + 1)))


class TestInvariance:
    def test_left_mobius_coset(self, rng):
        phi = random_diffeo(rng, 0.6, M)
        for _ in range(3):
            m = dfm.mobius_boundary(random_mobius(rng, 0.5), M)
            Z1 = Pi(dfm.compose(m, phi)).Z
            assert np.max(np.abs(Z1 - Pi(phi).Z)[:K, :K]) <= 1e-8

    def test_right_mobius_moves_point(self, rng):
        # right composition acts through the Moebius-type action instead
        phi = random_diffeo(rng, 0.6, M)
        m = dfm.mobius_boundary(dfm.MobiusParams(0.4), M)
        Z = Pi(dfm.compose(phi, m)).Z
        assert np.max(np.abs(Z - Pi(phi).Z)[:K, :K]) > 1e-3
        moved = period.mobius_act(segal.blocks(m, N), Pi(phi, 2 * N).Z)
        assert np.max(np.abs(Z - moved)[:K, :K]) <= 1e-6

    def test_equivariance(self, rng):
        for _ in range(3):
            phi = random_diffeo(rng, (0.3, 0.9), M)
            psi = random_diffeo(rng, (0.3, 0.9), M)
            lhs = Pi(dfm.compose(phi, psi)).Z
            rhs = period.mobius_act(segal.blocks(psi, N), Pi(phi, 2 * N).Z)
            assert np.max(np.abs(lhs - rhs)[:K, :K]) <= 1e-6


class TestConvergence:
    @pytest.mark.parametrize("modes", [{3: 0.1j}, {2: 0.1}, {1: 0.15j, 2: 0.05 + 0.05j}])
    def test_doubling(self, modes):
        phi = series_diffeo(modes)
        Z1 = Pi(phi).Z
        Z2 = Pi(phi.resampled(2 * M), 2 * N).Z
        assert np.max(np.abs(Z1 - Z2[:N, :N])[:K, :K]) <= 1e-8

    def test_spectral_decay(self):
        phi = series_diffeo({3: 0.1j}, 4096)
        Zs = [Pi(phi, n).Z for n in (8, 16, 32)]
        d1 = np.max(np.abs(Zs[1][:4, :4] - Zs[0][:4, :4]))
        d2 = np.max(np.abs(Zs[2][:8, :8] - Zs[1][:8, :8]))
        assert d2 <= max(0.1 * d1, 1e-14)
