"""Derivative of the period map at the origin and the two Kaehler metrics.

A tangent vector to the Siegel disc at 0 is a matrix ``lam`` with
``lam[p-1, q-1]`` the ``e_{-p}`` component of the image of ``e_q``.  The
derivative sends ``u d/dtheta`` to ``sigma -> pi_-(u sigma')`` which in
coordinates is ``lam_pq = i sqrt(pq) u_{-(p+q)}``: a Hankel pattern in
``p + q`` that also describes the tangent space of the Schottky locus.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .fourier import (VectorField, analyze, apply_J, basis_vector,
                      project_minus, synthesize)


@dataclass(frozen=True, eq=False)
class TangentHom:
    lam: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.lam.shape[0]

    def __sub__(self, other: "TangentHom") -> "TangentHom":
        return TangentHom(self.lam - other.lam)

    def __rmul__(self, scalar: complex) -> "TangentHom":
        return TangentHom(scalar * self.lam)

    def hs_norm(self) -> float:
        return float(np.linalg.norm(self.lam))


def _require_normalized(v: VectorField) -> None:
    if not v.sl2_normalized:
        raise ValueError("field must be sl2-normalized (u_-1 = u_0 = u_1 = 0)")


def wp_metric(v: VectorField, w: VectorField) -> complex:
    """``sum_{m>=2} v_m conj(w_m) (m^3 - m)``, linear in ``v``."""
    _require_normalized(v)
    _require_normalized(w)
    n = max(v.n_modes, w.n_modes)
    m = np.arange(2, n + 1)
    vm = np.array([v[k] for k in m])
    wm = np.array([w[k] for k in m])
    return complex(np.sum(vm * np.conj(wm) * (m ** 3 - m)))


def d_pi(v: VectorField, n_modes: int) -> TangentHom:
    """Closed form ``lam_pq = i sqrt(pq) u_{-(p+q)}``."""
    _require_normalized(v)
    p, q = np.indices((n_modes, n_modes)) + 1
    u_neg = np.array([v[-k] for k in range(2 * n_modes + 1)])
    return TangentHom(1j * (np.sqrt(p * q) * u_neg[p + q]))


def d_pi_projected(v: VectorField, n_modes: int) -> TangentHom:
    """Same hom by applying ``sigma -> pi_-(u sigma')`` to each ``e_q``.

    The product is formed pointwise on a grid fine enough to be exact for
    the trigonometric polynomials involved.
    """
    _require_normalized(v)
    width = v.n_modes + n_modes
    m_count = 1 << int(np.ceil(np.log2(4 * (width + 1))))
    u = synthesize(v.series, m_count)
    lam = np.zeros((n_modes, n_modes), dtype=complex)
    for q in range(1, n_modes + 1):
        dsigma = synthesize(basis_vector(q, n_modes).derivative(), m_count)
        image = project_minus(analyze(u * dsigma, width))
        # e_{-p} component of c e^{-ip theta} is c sqrt(p)
        lam[:, q - 1] = [image[-p] * np.sqrt(p) for p in range(1, n_modes + 1)]
    return TangentHom(lam)


def siegel_metric(phi: TangentHom, psi: TangentHom) -> complex:
    """``trace(phi o conj(psi))`` = ``sum phi_pq conj(psi_pq)``."""
    if phi.lam.shape != psi.lam.shape:
        raise ValueError("homs of different size")
    return complex(np.sum(phi.lam * np.conj(psi.lam)))


def schottky_tangent(a: Sequence[complex], n_modes: int) -> TangentHom:
    """Hankel hom ``lam_pq = i sqrt(pq) a_{p+q}``; ``a[0]`` is ``a_2``."""
    seq = np.zeros(2 * n_modes + 1, dtype=complex)
    a = np.asarray(a, dtype=complex)[:2 * n_modes - 1]
    seq[2:2 + a.size] = a
    p, q = np.indices((n_modes, n_modes)) + 1
    return TangentHom(1j * (np.sqrt(p * q) * seq[p + q]))


def schottky_residual(hom: TangentHom) -> float:
    """Largest spread of ``lam_pq / sqrt(pq)`` along an anti-diagonal.

    Zero exactly when the hom has the Hankel form of the image of ``d_pi``.
    """
    n = hom.n_modes
    p, q = np.indices((n, n)) + 1
    scaled = hom.lam / np.sqrt(p * q)
    worst = 0.0
    for s in range(3, 2 * n):
        vals = scaled[p + q == s]
        worst = max(worst, float(np.max(np.abs(vals[:, None] - vals[None, :]))))
    return worst


def hankel_parameters(hom: TangentHom) -> np.ndarray:
    """``a_2 .. a_2N`` read off the first column and last row."""
    n = hom.n_modes
    first_col = hom.lam[:, 0] / (1j * np.sqrt(np.arange(1, n + 1)))
    last_row = hom.lam[n - 1, 1:] / (1j * np.sqrt(n * np.arange(2, n + 1)))
    return np.concatenate([first_col, last_row])


def field_from_hom(hom: TangentHom) -> VectorField:
    """Invert ``d_pi`` from the first column: ``u_{-(1+q)} = lam_1q / (i sqrt q)``."""
    n = hom.n_modes
    modes = {}
    for q in range(1, n + 1):
        modes[-(1 + q)] = hom.lam[0, q - 1] / (1j * np.sqrt(q))
    return VectorField.from_modes(modes, n + 1, sl2_normalized=True)


def holomorphy_check(v: VectorField, n_modes: int | None = None) -> float:
    """``max |d_pi(Jv) - i d_pi(v)|``."""
    n_modes = n_modes or v.n_modes
    return float(np.max(np.abs(d_pi(apply_J(v), n_modes).lam
                               - 1j * d_pi(v, n_modes).lam)))


def isometry_ratio(pairs: Iterable[tuple[VectorField, VectorField]],
                   n_modes: int | None = None) -> tuple[float, float, np.ndarray]:
    """Ratio of the Siegel pairing of the images to the WP pairing.

    The pullback is compared with ``g(w, v)``: the WP sum runs over the
    positive-index coefficients while ``d_pi`` is complex linear in the
    negative-index ones, so the two Hermitian forms agree up to the order
    of their slots.  Pairs with vanishing pairing are skipped.  Returns
    the mean ratio, the relative spread ``max|r - mean| / |mean|`` and
    all ratios.
    """
    ratios = []
    for v, w in pairs:
        n = n_modes or max(v.n_modes, w.n_modes)
        g = wp_metric(w, v)
        if g == 0:
            warnings.warn("skipping pair with zero WP pairing", stacklevel=2)
            continue
        ratios.append(siegel_metric(d_pi(v, n), d_pi(w, n)) / g)
    if not ratios:
        raise ValueError("no non-degenerate pairs")
    ratios = np.array(ratios)
    mean = ratios.mean()
    spread = float(np.max(np.abs(ratios - mean)) / abs(mean))
    return float(mean.real), spread, ratios
