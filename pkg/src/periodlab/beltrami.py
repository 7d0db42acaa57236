"""First-order variation of the period matrix under a Beltrami coefficient.

Only disc moments ``m_n = iint mu(z) z^{n-2} dx dy`` enter at first order:

    Pi([t mu])_rs = t / pi * sqrt(rs) * m_{r+s} + O(t^2)

Moments use Gauss-Legendre in the radius and the FFT in the angle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np


@dataclass(frozen=True)
class BeltramiCoefficient:
    """``evaluator(r, alpha)`` on the closed unit disc, with a sup bound."""

    evaluator: Callable[[np.ndarray, np.ndarray], np.ndarray]
    sup_bound: float

    def __call__(self, r, alpha):
        return self.evaluator(np.asarray(r), np.asarray(alpha))

    @classmethod
    def zbar_pow(cls, k: int) -> "BeltramiCoefficient":
        if k < 0:
            raise ValueError("power must be non-negative")
        return cls(lambda r, a: (r * np.exp(-1j * a)) ** k, 1.0)

    @classmethod
    def constant(cls, value: complex) -> "BeltramiCoefficient":
        value = complex(value)
        return cls(lambda r, a: np.full(np.broadcast(r, a).shape, value), abs(value))

    @classmethod
    def polynomial(cls, terms: Iterable[tuple[int, int, complex]]) -> "BeltramiCoefficient":
        """``sum c z^i conj(z)^j`` from ``(i, j, c)`` triples."""
        terms = [(int(i), int(j), complex(c)) for i, j, c in terms]
        if any(i < 0 or j < 0 for i, j, _ in terms):
            raise ValueError("polynomial exponents must be non-negative")

        def evaluate(r, a):
            out = np.zeros(np.broadcast(r, a).shape, dtype=complex)
            for i, j, c in terms:
                out = out + c * r ** (i + j) * np.exp(1j * (i - j) * a)
            return out

        return cls(evaluate, float(sum(abs(c) for _, _, c in terms)))


@dataclass(frozen=True, eq=False)
class MomentSequence:
    """``values[n - 2] = m_n`` for ``n = 2..n_max``."""

    values: np.ndarray
    n_r: int
    n_a: int

    @property
    def n_max(self) -> int:
        return self.values.size + 1

    def __getitem__(self, n: int) -> complex:
        if n < 2 or n > self.n_max:
            raise IndexError(f"moment m_{n} not available")
        return complex(self.values[n - 2])


def disc_moments(mu: BeltramiCoefficient, n_max: int, n_r: int = 32,
                 n_a: int | None = None) -> MomentSequence:
    """Moments ``m_2..m_{n_max}`` from one pass over a polar grid."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    n_a = n_a or 4 * n_max
    if n_a < 4 * n_max:
        raise ValueError(f"n_a={n_a} too small; need >= 4 * n_max = {4 * n_max}")
    if n_r < 1:
        raise ValueError("need at least one radial node")
    x, w = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * (x + 1)
    w = 0.5 * w
    alpha = 2 * np.pi * np.arange(n_a) / n_a
    samples = mu(r[:, None], alpha[None, :])
    # int mu e^{ik alpha} d alpha = 2 pi * ifft(mu)[k]
    angular = 2 * np.pi * np.fft.ifft(samples, axis=1)[:, :n_max - 1]
    k = np.arange(n_max - 1)
    radial = w[:, None] * r[:, None] ** (k[None, :] + 1)
    values = np.sum(radial * angular, axis=0)
    return MomentSequence(values, n_r, n_a)


def rauch_first_variation(moments: MomentSequence, t: float,
                          n_modes: int) -> np.ndarray:
    """``t / pi * sqrt(rs) * m_{r+s}`` for ``r, s = 1..N``."""
    if moments.n_max < 2 * n_modes:
        raise ValueError(f"need moments up to {2 * n_modes}, have {moments.n_max}")
    r, s = np.indices((n_modes, n_modes)) + 1
    m = moments.values[r + s - 2]
    return t * (np.sqrt(r * s) * (m / np.pi))


def beltrami_to_vector(moments: MomentSequence) -> np.ndarray:
    """Sequence ``a_n = -i m_n / pi`` (``a[0]`` is ``a_2``).

    Chosen so that the Hankel hom ``i sqrt(pq) a_{p+q}`` reproduces the
    first variation at ``t = 1``.
    """
    return -1j * moments.values / np.pi
