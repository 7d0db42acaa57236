"""Orientation-preserving circle diffeomorphisms at finite resolution.

A diffeomorphism is ``phi(theta) = theta + shift + p(theta)`` with ``p`` a
real, mean-free trigonometric polynomial.  Values on the uniform grid are
cached; off-grid evaluation uses the trigonometric interpolant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fourier import CircleSeries, VectorField, analyze, synthesize

DELTA_FLOOR = 1e-6
DEFAULT_SAMPLES = 2048


class NotADiffeomorphism(ValueError):
    pass


def grid(m_count: int) -> np.ndarray:
    return 2 * np.pi * np.arange(m_count) / m_count


@dataclass(frozen=True, eq=False)
class CircleDiffeo:
    """``theta -> theta + shift + perturbation(theta)`` with grid samples.

    ``samples`` holds ``phi`` on ``2 pi j / M``.  Rotations live entirely
    in ``shift`` because the series carries no constant mode.
    """

    perturbation: CircleSeries
    shift: float
    samples: np.ndarray

    @property
    def m_count(self) -> int:
        return self.samples.shape[0]

    def __call__(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return theta + self.shift + _eval_real(self.perturbation, theta)

    def derivative(self, theta=None) -> np.ndarray:
        if theta is None:
            return 1.0 + _on_grid(self.perturbation.derivative(), self.m_count)
        return 1.0 + _eval_real(self.perturbation.derivative(), theta)

    @property
    def min_derivative(self) -> float:
        return float(np.min(self.derivative()))

    def resampled(self, m_count: int) -> "CircleDiffeo":
        if m_count == self.m_count:
            return self
        return make_diffeo(self.perturbation, m_count, self.shift)


def _eval_real(series: CircleSeries, theta: np.ndarray) -> np.ndarray:
    """``sum_m c_m e^{im theta}`` for a real series, in row chunks."""
    n = series.n_modes
    pos = series.coeffs[n + 1:]
    m = np.arange(1, n + 1)
    flat = np.ravel(theta)
    out = np.empty(flat.shape)
    step = max(1, 2 ** 22 // max(n, 1))
    for start in range(0, flat.size, step):
        chunk = flat[start:start + step]
        out[start:start + step] = 2 * np.real(np.exp(1j * np.outer(chunk, m)) @ pos)
    return out.reshape(np.shape(theta))


def _on_grid(series: CircleSeries, m_count: int) -> np.ndarray:
    if m_count >= 2 * series.n_modes + 1:
        return synthesize(series, m_count)
    return _eval_real(series, grid(m_count))


def make_diffeo(p: CircleSeries, m_count: int = DEFAULT_SAMPLES,
                shift: float = 0.0, floor: float = DELTA_FLOOR) -> CircleDiffeo:
    """Validate ``theta + shift + p`` as a diffeomorphism on an M-point grid."""
    if not p.real:
        raise ValueError("perturbation must be real-valued")
    th = grid(m_count)
    dphi = 1.0 + _on_grid(p.derivative(), m_count)
    if not np.all(np.isfinite(dphi)) or dphi.min() <= floor:
        raise NotADiffeomorphism(
            f"not a diffeomorphism: min phi' = {dphi.min():.3g} <= {floor:g}")
    samples = th + shift + _on_grid(p, m_count)
    samples.setflags(write=False)
    return CircleDiffeo(p, float(shift), samples)


def from_samples(phi_samples, floor: float = DELTA_FLOOR) -> CircleDiffeo:
    """Diffeo from grid values of a degree-one lift ``phi``."""
    phi_samples = np.asarray(phi_samples, dtype=float)
    m_count = phi_samples.shape[0]
    periodic = phi_samples - grid(m_count)
    shift = float(np.mean(periodic))
    p = analyze(periodic, m_count // 4, real=True)
    return make_diffeo(p, m_count, shift, floor)


def identity(m_count: int = DEFAULT_SAMPLES, n_modes: int = 1) -> CircleDiffeo:
    return make_diffeo(CircleSeries.zeros(n_modes, real=True), m_count)


def rotation(alpha: float, m_count: int = DEFAULT_SAMPLES) -> CircleDiffeo:
    return make_diffeo(CircleSeries.zeros(1, real=True), m_count, alpha)


def compose(phi: CircleDiffeo, psi: CircleDiffeo) -> CircleDiffeo:
    """``(phi o psi)(theta) = phi(psi(theta))`` on psi's grid."""
    return from_samples(phi(psi.samples))


def invert(phi: CircleDiffeo, tol: float = 1e-13,
           max_iter: int = 50) -> CircleDiffeo:
    """Inverse by a safeguarded Newton solve of ``phi(x) = theta_j``.

    A few bisection steps on the bracket ``theta_j - shift +- max|p|``
    seed the Newton iteration, which stays inside the bracket.
    """
    th = grid(phi.m_count)
    bound = float(np.max(np.abs(phi.samples - th - phi.shift))) * 1.01 + 1e-12
    lo = th - phi.shift - bound
    hi = th - phi.shift + bound
    for _ in range(6):
        mid = 0.5 * (lo + hi)
        above = phi(mid) > th
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        f = phi(x) - th
        if np.max(np.abs(f)) <= tol:
            break
        hi = np.where(f > 0, np.minimum(hi, x), hi)
        lo = np.where(f > 0, lo, np.maximum(lo, x))
        x = x - f / phi.derivative(x)
        # fall back to bisection where Newton leaves the bracket
        x = np.where((x < lo) | (x > hi), 0.5 * (lo + hi), x)
    else:
        raise RuntimeError("Newton inversion did not converge")
    return from_samples(x)


@dataclass(frozen=True)
class MobiusParams:
    """Disc automorphism ``z -> e^{i beta} (z - a) / (1 - conj(a) z)``."""

    a: complex
    beta: float = 0.0

    def __post_init__(self):
        if abs(self.a) >= 1:
            raise ValueError(f"Moebius center must satisfy |a| < 1, got {abs(self.a)}")

    def __call__(self, z):
        z = np.asarray(z)
        return np.exp(1j * self.beta) * (z - self.a) / (1 - np.conj(self.a) * z)


def mobius_boundary(params: MobiusParams,
                    m_count: int = DEFAULT_SAMPLES) -> CircleDiffeo:
    """Boundary map of a disc automorphism as a degree-one circle map."""
    th = grid(m_count)
    w = params(np.exp(1j * th))
    phi = np.unwrap(np.angle(w))
    return from_samples(phi)


def fit_mobius(phi: CircleDiffeo) -> tuple[MobiusParams, float]:
    """Recover Moebius parameters from boundary values ``e^{i phi}``.

    Uses ``e^{i phi} = e^{i beta} (-a + (1-|a|^2) z + (1-|a|^2) conj(a) z^2
    + ...)``.  Returns the fit and the max boundary misfit.
    """
    th = grid(phi.m_count)
    w = np.exp(1j * phi.samples)
    c = np.fft.fft(w) / phi.m_count
    beta = float(np.angle(c[1]))
    a = np.conj(c[2] / c[1])
    params = MobiusParams(complex(a), beta)
    residual = float(np.max(np.abs(params(np.exp(1j * th)) - w)))
    return params, residual


def flow(v: VectorField, t: float, steps: int,
         m_count: int = DEFAULT_SAMPLES) -> CircleDiffeo:
    """Time-``t`` map of ``d theta / dt = u(theta)`` by classical RK4.

    All grid points are integrated together.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    u = v.series
    x = grid(m_count)
    h = t / steps
    for _ in range(steps):
        k1 = _eval_real(u, x)
        k2 = _eval_real(u, x + 0.5 * h * k1)
        k3 = _eval_real(u, x + 0.5 * h * k2)
        k4 = _eval_real(u, x + h * k3)
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return from_samples(x)


def distance(phi: CircleDiffeo, psi: CircleDiffeo) -> float:
    """Sup distance between two lifts on a common grid."""
    if phi.m_count != psi.m_count:
        psi = psi.resampled(phi.m_count)
    return float(np.max(np.abs(phi.samples - psi.samples)))
