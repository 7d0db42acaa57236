import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from periodlab.fourier import (CircleSeries, VectorField, analyze, apply_J,
                               basis_vector, hermitian_pairing, project_minus,
                               project_plus, symplectic_form, synthesize)

from conftest import finite, normalized_fields

M = 64
theta = 2 * np.pi * np.arange(M) / M


def random_series(rng, n, real=False):
    c = rng.normal(size=2 * n + 1) + 1j * rng.normal(size=2 * n + 1)
    c[n] = 0
    if real:
        c = 0.5 * (c + np.conj(c[::-1]))
    return CircleSeries(c, n, real)


class TestAnalyze:
    def test_cosine(self):
        s = analyze(np.cos(theta), 8)
        assert s[1] == pytest.approx(0.5)
        assert s[-1] == pytest.approx(0.5)
        others = [s[m] for m in s.modes if abs(m) != 1]
        assert np.max(np.abs(others)) < 1e-15
        assert s.real

    def test_pure_mode(self):
        s = analyze(np.exp(3j * theta), 8)
        assert s[3] == pytest.approx(1.0)
        assert np.sum(np.abs(s.coeffs)) == pytest.approx(1.0)

    def test_constant_is_quotiented(self):
        s = analyze(np.full(M, 7.0), 8)
        assert np.all(s.coeffs == 0)

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError, match="power of two"):
            analyze(np.zeros(48), 4)

    def test_rejects_undersampling(self):
        with pytest.raises(ValueError):
            analyze(np.zeros(16), 8)


class TestSynthesize:
    def test_zero(self):
        assert np.all(synthesize(CircleSeries.zeros(4), 16) == 0)

    def test_cosine(self):
        s = CircleSeries.from_modes({1: 0.5, -1: 0.5}, 1, real=True)
        np.testing.assert_allclose(synthesize(s, M), np.cos(theta), atol=1e-15)

    def test_round_trip(self, rng):
        s = random_series(rng, 16)
        back = analyze(synthesize(s, 128), 16)
        assert np.max(np.abs(back.coeffs - s.coeffs)) <= 1e-12

    def test_size_guard(self):
        with pytest.raises(ValueError):
            synthesize(CircleSeries.zeros(8), 16)


class TestSeries:
    def test_c0_must_vanish(self):
        c = np.zeros(5, dtype=complex)
        c[2] = 1
        with pytest.raises(ValueError):
            CircleSeries(c, 2)

    def test_reality_enforced(self):
        with pytest.raises(ValueError):
            CircleSeries.from_modes({1: 1.0, -1: 2.0}, 1, real=True)

    def test_from_modes_fills_partner(self):
        s = CircleSeries.from_modes({2: 1 + 2j}, 3, real=True)
        assert s[-2] == 1 - 2j

    def test_evaluation_matches_synthesis(self, rng):
        s = random_series(rng, 5, real=True)
        np.testing.assert_allclose(s(theta), synthesize(s, M), atol=1e-12)


class TestSymplecticForm:
    @pytest.mark.parametrize("m", [1, 2, 5])
    def test_cos_sin(self, m):
        cos = CircleSeries.from_modes({m: 0.5}, m, real=True)
        sin = CircleSeries.from_modes({m: 0.5 / 1j}, m, real=True)
        oracle = quad(lambda t: np.cos(m * t) * m * np.cos(m * t), 0, 2 * np.pi)[0]
        assert symplectic_form(cos, sin) == pytest.approx(oracle, abs=1e-12)
        assert oracle == pytest.approx(m * np.pi)

    @pytest.mark.parametrize("m", [1, 3, 7])
    def test_single_mode(self, m):
        a = CircleSeries.from_modes({-m: 1.0}, m)
        b = CircleSeries.from_modes({m: 1.0}, m)
        assert symplectic_form(a, b) == pytest.approx(2j * np.pi * m)

    def test_matches_quadrature_for_random_pair(self, rng):
        s, t = random_series(rng, 4, real=True), random_series(rng, 4, real=True)
        grid = 2 * np.pi * np.arange(64) / 64
        oracle = np.sum(s(grid) * t.derivative()(grid)) * 2 * np.pi / 64
        assert symplectic_form(s, t) == pytest.approx(oracle, abs=1e-12)

    def test_self_pairing_vanishes(self, rng):
        s = random_series(rng, 6)
        assert abs(symplectic_form(s, s)) < 1e-12

    def test_skew_symmetry(self, rng):
        s, t = random_series(rng, 6), random_series(rng, 9)
        assert symplectic_form(s, t) == pytest.approx(-symplectic_form(t, s), abs=1e-12)

    def test_positive_modes_isotropic(self, rng):
        s, t = project_plus(random_series(rng, 8)), project_plus(random_series(rng, 8))
        assert abs(symplectic_form(s, t)) <= 1e-14

    def test_nondegenerate_matrix(self):
        n = 6
        basis = [basis_vector(k, n) for k in range(-n, n + 1) if k]
        S = np.array([[symplectic_form(a, b) for b in basis] for a in basis])
        assert np.all(np.max(np.abs(S), axis=1) > 0)


class TestHermitianPairing:
    @pytest.mark.parametrize("k", range(1, 9))
    def test_orthonormal(self, k):
        e = basis_vector(k, 8)
        assert hermitian_pairing(e, e) == pytest.approx(1.0)
        for j in range(1, 9):
            if j != k:
                assert abs(hermitian_pairing(basis_vector(j, 8), e)) < 1e-15

    def test_scaling_conjugate_linear_first(self):
        e = basis_vector(3, 4)
        assert hermitian_pairing(2 * e, e) == pytest.approx(2.0)
        assert hermitian_pairing(1j * e, e) == pytest.approx(-1j)
        assert hermitian_pairing(e, 1j * e) == pytest.approx(1j)

    def test_rejects_negative_modes(self):
        with pytest.raises(ValueError):
            hermitian_pairing(basis_vector(-1, 2), basis_vector(1, 2))

    @given(st.lists(st.tuples(finite, finite), min_size=6, max_size=6))
    def test_positive_definite(self, coeffs):
        modes = {k + 1: complex(*c) for k, c in enumerate(coeffs)}
        w = CircleSeries.from_modes(modes, 6)
        value = hermitian_pairing(w, w)
        assert abs(value.imag) < 1e-12
        if any(abs(complex(*c)) > 1e-6 for c in coeffs):
            assert value.real > 0


class TestProjections:
    def test_kills_positive_mode(self):
        assert np.all(project_minus(CircleSeries.from_modes({5: 1.0}, 5)).coeffs == 0)

    def test_cos2(self):
        s = project_minus(CircleSeries.from_modes({2: 0.5}, 2, real=True))
        assert s[-2] == 0.5 and s[2] == 0

    def test_sum_is_identity(self, rng):
        s = random_series(rng, 7)
        np.testing.assert_array_equal((project_plus(s) + project_minus(s)).coeffs, s.coeffs)


class TestJ:
    @pytest.mark.parametrize("m", [2, 3, 6])
    def test_cos_to_sin(self, m):
        out = apply_J(VectorField.cos(m))
        np.testing.assert_allclose(out(theta), np.sin(m * theta), atol=1e-14)

    @pytest.mark.parametrize("m", [2, 4])
    def test_sin_to_minus_cos(self, m):
        out = apply_J(VectorField.sin(m))
        np.testing.assert_allclose(out(theta), -np.cos(m * theta), atol=1e-14)

    @given(normalized_fields())
    def test_square_is_minus_identity(self, v):
        np.testing.assert_allclose(apply_J(apply_J(v)).series.coeffs,
                                   -v.series.coeffs, atol=1e-15)

    def test_output_normalized_and_real(self):
        out = apply_J(VectorField.cos(3))
        assert out.sl2_normalized and out.series.real

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            apply_J(VectorField.cos(1))
