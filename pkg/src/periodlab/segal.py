"""Block matrices of the symplectic operator ``h -> h o phi``.

In the basis ``e_k = e^{ik theta}/sqrt|k|`` the operator has the form
``[[A, B], [conj(B), conj(A)]]`` with

    a_pq = (1/2pi) sqrt(p/q) int e^{i q phi} e^{-i p theta} dtheta
    b_rs = (1/2pi) sqrt(r/s) int e^{-i s phi} e^{-i r theta} dtheta

Every column comes from one FFT of the sampled integrand.  Blocks are kept
on ``n_ext >= n_modes`` modes; the extra rows and columns are a guard band
so that products and sums over intermediate modes are not cut off at
``n_modes``.  ``A`` and ``B`` expose the ``n_modes`` square blocks.

Since ``T_psi T_phi = T_{phi o psi}`` the representation reverses order:
``blocks(compose(phi, psi)) == compose_blocks(blocks(psi), blocks(phi))``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .diffeo import CircleDiffeo


@dataclass(frozen=True, eq=False)
class SymplecticBlocks:
    A_ext: np.ndarray
    B_ext: np.ndarray
    n_modes: int
    samples_used: int
    source: str = ""

    @property
    def n_ext(self) -> int:
        return self.A_ext.shape[0]

    @property
    def A(self) -> np.ndarray:
        n = self.n_modes
        return self.A_ext[:n, :n]

    @property
    def B(self) -> np.ndarray:
        n = self.n_modes
        return self.B_ext[:n, :n]

    def full(self, size: int | None = None) -> np.ndarray:
        """Operator matrix on modes ``1..size, -1..-size``."""
        k = size or self.n_modes
        A, B = self.A_ext[:k, :k], self.B_ext[:k, :k]
        return np.block([[A, B], [B.conj(), A.conj()]])

    def cond_A(self, interior: int | None = None) -> float:
        """Condition number of the ``k x n_ext`` slab of ``A``.

        This is the matrix the period solve uses.  The square section
        ``A[:k, :k]`` is reported by ``cond_A_square``; it degrades with
        ``k`` even for analytic maps because cutting columns at ``k``
        drops mass that rows near ``k`` still carry.
        """
        k = interior or self.n_modes
        return float(np.linalg.cond(self.A_ext[:k, :]))

    def cond_A_square(self, interior: int | None = None) -> float:
        k = interior or self.n_modes
        return float(np.linalg.cond(self.A_ext[:k, :k]))

    def hs_norm_B(self) -> float:
        return float(np.linalg.norm(self.B))


def default_extension(n_modes: int, m_count: int) -> int:
    return max(n_modes, min(4 * n_modes, m_count // 8))


def blocks(phi: CircleDiffeo, n_modes: int, m_count: int | None = None,
           n_ext: int | None = None) -> SymplecticBlocks:
    """Truncated blocks ``A``, ``B`` of the operator ``h -> h o phi``."""
    m_count = m_count or phi.m_count
    if m_count < 8 * n_modes:
        raise ValueError(
            f"M={m_count} too small for N={n_modes}; need M >= 8N")
    if n_ext is None:
        n_ext = default_extension(n_modes, m_count)
    if n_ext < n_modes:
        raise ValueError("n_ext must be at least n_modes")
    phi = phi.resampled(m_count)
    q = np.arange(1, n_ext + 1)
    integrand = np.exp(1j * np.outer(phi.samples, q))
    if not np.all(np.isfinite(integrand)):
        raise FloatingPointError("non-finite integrand in block quadrature")
    coeff = np.fft.fft(integrand, axis=0) / m_count
    scale = np.sqrt(np.outer(q, 1.0 / q))
    A_ext = scale * coeff[q, :]
    # conj(b_rq) is the e^{-ir theta} coefficient of e^{iq phi}
    B_ext = np.conj(scale * coeff[m_count - q, :])
    digest = hashlib.sha1(np.ascontiguousarray(phi.samples).tobytes()).hexdigest()
    return SymplecticBlocks(A_ext, B_ext, n_modes, m_count, digest[:12])


def symplectic_matrix(size: int) -> np.ndarray:
    """Matrix of ``S / 2 pi`` on ``e_1..e_size, e_-1..e_-size``."""
    eye = np.eye(size)
    zero = np.zeros((size, size))
    return np.block([[zero, -1j * eye], [1j * eye, zero]])


def check_symplectic(b: SymplecticBlocks, interior: int | None = None) -> float:
    """Max entry of ``T^T S T - S`` on modes ``|k| <= interior``.

    Columns for the interior modes are taken with all ``n_ext`` rows so
    the sum over intermediate modes is not truncated at ``n_modes``.
    """
    if interior is None:
        interior = b.n_modes // 2
    if interior > b.n_modes // 2 or interior < 1:
        raise ValueError("interior must lie in 1..N/2")
    k = interior
    A, B = b.A_ext[:, :k], b.B_ext[:, :k]
    # columns for e_1..e_k then e_-1..e_-k
    cols = np.hstack([np.vstack([A, B.conj()]), np.vstack([B, A.conj()])])
    lhs = cols.T @ symplectic_matrix(b.n_ext) @ cols
    return float(np.max(np.abs(lhs - symplectic_matrix(k))))


def compose_blocks(b1: SymplecticBlocks, b2: SymplecticBlocks) -> SymplecticBlocks:
    """Operator product ``T1 T2`` in block form."""
    if b1.n_modes != b2.n_modes or b1.n_ext != b2.n_ext:
        raise ValueError("block sizes differ")
    A1, B1, A2, B2 = b1.A_ext, b1.B_ext, b2.A_ext, b2.B_ext
    A = A1 @ A2 + B1 @ B2.conj()
    B = A1 @ B2 + B1 @ A2.conj()
    return SymplecticBlocks(A, B, b1.n_modes,
                            min(b1.samples_used, b2.samples_used),
                            f"{b1.source}*{b2.source}")


def identity_blocks(n_modes: int, n_ext: int | None = None) -> SymplecticBlocks:
    k = n_ext or n_modes
    return SymplecticBlocks(np.eye(k, dtype=complex),
                            np.zeros((k, k), dtype=complex), n_modes, 0, "id")


def decay_profile(b: SymplecticBlocks) -> dict:
    """Log10 decay of ``|a_pq|`` off the diagonal and ``|b_pq|`` in ``p+q``.

    Slopes are least-squares fits of the log of the max entry per band over
    bands above roundoff.
    """
    n = b.n_modes
    p, q = np.indices((n, n)) + 1
    a_band = np.array([np.max(np.abs(b.A[np.abs(p - q) == d])) for d in range(n)])
    b_band = np.array([np.max(np.abs(b.B[p + q == s])) for s in range(2, 2 * n + 1)])
    return {"a_offdiag": a_band, "b_antidiag": b_band,
            "a_slope": _log_slope(a_band), "b_slope": _log_slope(b_band)}


def _log_slope(values: np.ndarray) -> float:
    keep = values > 1e-13
    if keep.sum() < 2:
        return float("-inf")
    x = np.nonzero(keep)[0]
    return float(np.polyfit(x, np.log10(values[keep]), 1)[0])
