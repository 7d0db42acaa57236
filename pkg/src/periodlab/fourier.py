"""Truncated Fourier series on the circle.

Series are stored densely over modes ``-N..N`` with the constant mode pinned
to zero (functions are taken modulo constants).  The symplectic form, the
Hermitian pairing on positive-mode series and the complex structure on
vector fields are all computed directly on the coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

_REALITY_TOL = 1e-12


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True, eq=False)
class CircleSeries:
    """Complex Fourier coefficients ``c_m`` for ``|m| <= n_modes``.

    ``coeffs[m + n_modes]`` holds ``c_m``.  When ``real`` is set the series
    represents a real-valued function and ``c_{-m} = conj(c_m)`` holds.
    """

    coeffs: np.ndarray
    n_modes: int
    real: bool = False

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.shape != (2 * self.n_modes + 1,):
            raise ValueError(
                f"expected {2 * self.n_modes + 1} coefficients, got {c.shape}")
        if self.n_modes < 1:
            raise ValueError("n_modes must be positive")
        if c[self.n_modes] != 0:
            raise ValueError("the constant mode c_0 must vanish")
        if self.real:
            scale = max(1.0, float(np.max(np.abs(c))))
            if np.max(np.abs(c - np.conj(c[::-1]))) > _REALITY_TOL * scale:
                raise ValueError("real series needs c_{-m} = conj(c_m)")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zeros(cls, n_modes: int, real: bool = False) -> "CircleSeries":
        return cls(np.zeros(2 * n_modes + 1, dtype=complex), n_modes, real)

    @classmethod
    def from_modes(cls, modes: Mapping[int, complex], n_modes: int,
                   real: bool = False) -> "CircleSeries":
        """Build a series from a sparse ``{m: c_m}`` mapping.

        With ``real=True`` only one of each pair ``m, -m`` needs to be
        given; the partner is filled in by conjugation.
        """
        c = np.zeros(2 * n_modes + 1, dtype=complex)
        for m, value in modes.items():
            m = int(m)
            if m == 0:
                raise ValueError("mode 0 is not allowed (quotient by constants)")
            if abs(m) > n_modes:
                raise ValueError(f"mode {m} exceeds n_modes={n_modes}")
            c[m + n_modes] = value
        if real:
            for m, value in modes.items():
                partner = -int(m) + n_modes
                if -int(m) not in modes:
                    c[partner] = np.conj(value)
        return cls(c, n_modes, real)

    def __getitem__(self, m: int) -> complex:
        if abs(m) > self.n_modes:
            return 0j
        return complex(self.coeffs[m + self.n_modes])

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.n_modes, self.n_modes + 1)

    def padded(self, n_modes: int) -> "CircleSeries":
        """Same series stored with a larger cutoff."""
        if n_modes < self.n_modes:
            raise ValueError("padding cannot shrink a series")
        c = np.zeros(2 * n_modes + 1, dtype=complex)
        off = n_modes - self.n_modes
        c[off:off + 2 * self.n_modes + 1] = self.coeffs
        return CircleSeries(c, n_modes, self.real)

    def truncated(self, n_modes: int) -> "CircleSeries":
        if n_modes >= self.n_modes:
            return self.padded(n_modes)
        off = self.n_modes - n_modes
        return CircleSeries(self.coeffs[off:off + 2 * n_modes + 1], n_modes,
                            self.real)

    def derivative(self) -> "CircleSeries":
        return CircleSeries(1j * self.modes * self.coeffs, self.n_modes,
                            self.real)

    def conj(self) -> "CircleSeries":
        """Pointwise complex conjugate of the represented function."""
        return CircleSeries(np.conj(self.coeffs[::-1]), self.n_modes,
                            self.real)

    def __add__(self, other: "CircleSeries") -> "CircleSeries":
        n = max(self.n_modes, other.n_modes)
        a, b = self.padded(n), other.padded(n)
        return CircleSeries(a.coeffs + b.coeffs, n, self.real and other.real)

    def __sub__(self, other: "CircleSeries") -> "CircleSeries":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "CircleSeries":
        real = self.real and np.isrealobj(scalar)
        return CircleSeries(scalar * self.coeffs, self.n_modes, real)

    def __neg__(self) -> "CircleSeries":
        return (-1.0) * self

    def __call__(self, theta) -> np.ndarray:
        """Evaluate at arbitrary angles by direct summation."""
        theta = np.asarray(theta, dtype=float)
        phases = np.exp(1j * np.multiply.outer(theta, self.modes))
        values = phases @ self.coeffs
        return values.real if self.real else values


def basis_vector(k: int, n_modes: int) -> CircleSeries:
    """Orthonormal basis element ``e_k = exp(ik theta) / sqrt|k|``."""
    return CircleSeries.from_modes({k: 1.0 / np.sqrt(abs(k))}, n_modes)


def analyze(samples, n_modes: int, real: bool | None = None) -> CircleSeries:
    """Fourier coefficients of uniform samples ``f(2 pi j / M)``.

    The constant mode is dropped.  ``M`` must be a power of two and at
    least ``4 * n_modes``.
    """
    samples = np.asarray(samples)
    m_count = samples.shape[0]
    if not _is_power_of_two(m_count):
        raise ValueError(f"sample count {m_count} is not a power of two")
    if m_count < 4 * n_modes:
        raise ValueError(
            f"{m_count} samples cannot resolve {n_modes} modes (need 4x)")
    if real is None:
        real = np.isrealobj(samples) or not np.any(np.imag(samples))
    c_hat = np.fft.fft(samples) / m_count
    c = np.empty(2 * n_modes + 1, dtype=complex)
    c[n_modes:] = c_hat[:n_modes + 1]
    c[:n_modes] = c_hat[m_count - n_modes:]
    c[n_modes] = 0
    if real:
        # symmetrize away FFT roundoff
        c = 0.5 * (c + np.conj(c[::-1]))
    return CircleSeries(c, n_modes, real)


def synthesize(series: CircleSeries, m_count: int) -> np.ndarray:
    """Samples of the series on ``M`` uniform points."""
    n = series.n_modes
    if m_count < 2 * n + 1:
        raise ValueError(f"{m_count} samples cannot carry {n} modes")
    c_hat = np.zeros(m_count, dtype=complex)
    c_hat[:n + 1] = series.coeffs[n:]
    c_hat[m_count - n:] = series.coeffs[:n]
    values = np.fft.ifft(c_hat) * m_count
    return values.real if series.real else values


def symplectic_form(sigma: CircleSeries, tau: CircleSeries) -> complex:
    """``S(sigma, tau) = integral of sigma * tau'`` over the circle.

    Spectrally this is ``2 pi i sum_m m sigma_{-m} tau_m``; the complex
    bilinear extension is used for complex series.
    """
    n = max(sigma.n_modes, tau.n_modes)
    s, t = sigma.padded(n).coeffs, tau.padded(n).coeffs
    m = np.arange(-n, n + 1)
    return complex(2j * np.pi * np.sum(m * s[::-1] * t))


def _require_positive(w: CircleSeries, name: str) -> None:
    if np.any(w.coeffs[:w.n_modes] != 0):
        raise ValueError(f"{name} has negative-mode content; not in W+")


def hermitian_pairing(w1: CircleSeries, w2: CircleSeries) -> complex:
    """Inner product on positive-mode series, conjugate-linear in ``w1``.

    Normalized as ``(-i / 2 pi) S(conj(w1), w2)``, which makes the
    ``e_k`` orthonormal.
    """
    _require_positive(w1, "w1")
    _require_positive(w2, "w2")
    return -1j / (2 * np.pi) * symplectic_form(w1.conj(), w2)


def project_plus(series: CircleSeries) -> CircleSeries:
    c = series.coeffs.copy()
    c[:series.n_modes + 1] = 0
    return CircleSeries(c, series.n_modes)


def project_minus(series: CircleSeries) -> CircleSeries:
    c = series.coeffs.copy()
    c[series.n_modes:] = 0
    return CircleSeries(c, series.n_modes)


@dataclass(frozen=True, eq=False)
class VectorField:
    """Real vector field ``u(theta) d/dtheta`` given by its coefficients.

    ``sl2_normalized`` marks tangent vectors to the quotient by Moebius
    maps, for which ``u_{-1} = u_0 = u_1 = 0``.
    """

    series: CircleSeries
    sl2_normalized: bool = False

    def __post_init__(self):
        if not self.series.real:
            raise ValueError("vector fields must be real-valued")
        if self.sl2_normalized and (self.series[1] != 0 or self.series[-1] != 0):
            raise ValueError("normalized field must have u_1 = u_-1 = 0")

    @classmethod
    def from_modes(cls, modes: Mapping[int, complex], n_modes: int,
                   sl2_normalized: bool | None = None) -> "VectorField":
        """Field with the given ``{m: u_m}`` (partners filled by reality).

        Normalization is inferred from the absence of modes +-1 unless
        stated.
        """
        series = CircleSeries.from_modes(modes, n_modes, real=True)
        if sl2_normalized is None:
            sl2_normalized = series[1] == 0
        return cls(series, sl2_normalized)

    @classmethod
    def cos(cls, m: int, n_modes: int | None = None, amplitude: float = 1.0):
        n_modes = n_modes or m
        return cls.from_modes({m: amplitude / 2}, n_modes)

    @classmethod
    def sin(cls, m: int, n_modes: int | None = None, amplitude: float = 1.0):
        n_modes = n_modes or m
        return cls.from_modes({m: amplitude / 2j}, n_modes)

    @property
    def n_modes(self) -> int:
        return self.series.n_modes

    def __getitem__(self, m: int) -> complex:
        return self.series[m]

    def __call__(self, theta) -> np.ndarray:
        return self.series(theta)

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.series + other.series,
                           self.sl2_normalized and other.sl2_normalized)

    def __rmul__(self, scalar: float) -> "VectorField":
        if not np.isrealobj(scalar):
            raise ValueError("vector fields only scale by real numbers")
        return VectorField(scalar * self.series, self.sl2_normalized)

    def __neg__(self) -> "VectorField":
        return (-1.0) * self

    def normalized(self) -> "VectorField":
        """Drop the modes ``-1, 0, 1``."""
        c = self.series.coeffs.copy()
        n = self.n_modes
        c[n - 1:n + 2] = 0
        return VectorField(CircleSeries(c, n, real=True), True)


def apply_J(v: VectorField) -> VectorField:
    """Complex structure: ``u_m -> -i sgn(m) u_m``."""
    if not v.sl2_normalized:
        raise ValueError("J acts on sl2-normalized fields only")
    c = -1j * np.sign(v.series.modes) * v.series.coeffs
    return VectorField(CircleSeries(c, v.n_modes, real=True), True)
