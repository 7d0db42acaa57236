"""Period matrices ``Z = conj(B) A^{-1}`` and the Siegel disc.

``Z[r-1, s-1]`` is the ``e_{-r}`` component of the image of ``e_s``, so the
Siegel symmetry condition is a plain transpose.  ``Z`` is obtained from
``Z A = conj(B)`` restricted to ``n`` rows of ``A`` but all ``n_ext``
guard-band columns, solved by a column-pivoted least-squares
factorization; the extra columns keep the solve well posed where the
square section ``A[:n, :n]`` is not.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .segal import SymplecticBlocks

COND_MAX = 1e8
DEFAULT_TOL = 1e-6


class ConditioningError(ArithmeticError):
    pass


class SiegelDiagnostics(NamedTuple):
    symmetry_residual: float
    min_eig: float
    member: bool


@dataclass(frozen=True, eq=False)
class PeriodPoint:
    Z: np.ndarray
    cond_A: float
    symmetry_residual: float
    min_eig_IminusZZbar: float
    interior: int

    def diagnostics(self) -> dict:
        return {"cond_A": self.cond_A, "sym_residual": self.symmetry_residual,
                "min_eig": self.min_eig_IminusZZbar}


def _graph_solve(lhs: np.ndarray, rhs: np.ndarray, cond_max: float,
                 what: str) -> tuple[np.ndarray, float]:
    """Solve ``X @ lhs = rhs`` for ``X`` with ``lhs`` of shape (n, q >= n)."""
    sv = np.linalg.svd(lhs, compute_uv=False)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else np.inf
    if cond > cond_max:
        raise ConditioningError(
            f"ill-conditioned {what} (cond {cond:.3g}, smallest singular value "
            f"{sv[-1]:.3g}); increase N/M or reduce diffeo amplitude")
    x = scipy.linalg.lstsq(lhs.T, rhs.T, lapack_driver="gelsy")[0]
    return x.T, cond


def siegel_membership(Z, interior: int | None = None,
                      tol: float = DEFAULT_TOL) -> SiegelDiagnostics:
    """Symmetry residual and smallest eigenvalue of ``I - Z conj(Z)``."""
    Z = np.asarray(Z)
    if Z.ndim != 2 or Z.shape[0] != Z.shape[1]:
        raise ValueError("Z must be square")
    k = interior or Z.shape[0]
    Zi = Z[:k, :k]
    sym = float(np.max(np.abs(Zi - Zi.T))) if k else 0.0
    X = np.eye(k) - Zi @ Zi.conj()
    min_eig = float(np.linalg.eigvalsh(0.5 * (X + X.conj().T))[0])
    return SiegelDiagnostics(sym, min_eig, sym <= tol and min_eig > 0)


def period_matrix(b: SymplecticBlocks, interior: int | None = None,
                  cond_max: float = COND_MAX, size: int | None = None) -> PeriodPoint:
    """Period matrix of the polarization ``T(W+)`` with diagnostics.

    ``size`` (default ``n_modes``) may be raised up to ``n_ext`` to get
    the period matrix on more modes from the same blocks.
    """
    n = size or b.n_modes
    if n > b.n_ext:
        raise ValueError("size exceeds the computed block extension")
    lhs = b.A_ext[:n]
    rhs = b.B_ext[:n].conj()
    Z, cond = _graph_solve(lhs, rhs, cond_max, "A block")
    interior = interior or max(1, b.n_modes // 2)
    diag = siegel_membership(Z, interior)
    return PeriodPoint(Z, cond, diag.symmetry_residual, diag.min_eig, interior)


def mobius_act(b: SymplecticBlocks, Z, cond_max: float = COND_MAX,
               size: int | None = None) -> np.ndarray:
    """``Z -> (conj(A) Z + conj(B)) (B Z + A)^{-1}``.

    ``Z`` (at most ``n_ext`` modes) is zero-padded to ``n_ext``, so
    supplying it on more modes than the output feeds those modes into the
    products.  ``size`` sets the output size.
    """
    Z = np.asarray(Z, dtype=complex)
    n = size or b.n_modes
    width = b.n_ext
    if Z.shape[0] > width or n > width:
        raise ValueError("Z larger than the block extension")
    Zp = np.zeros((width, width), dtype=complex)
    Zp[:Z.shape[0], :Z.shape[1]] = Z
    A, B = b.A_ext, b.B_ext
    denom = B @ Zp + A
    numer = A.conj() @ Zp + B.conj()
    out, _ = _graph_solve(denom[:n], numer[:n], cond_max, "B Z + A")
    return out
