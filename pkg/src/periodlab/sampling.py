"""Seeded random inputs for property checks."""

from __future__ import annotations

import numpy as np

from .diffeo import DEFAULT_SAMPLES, CircleDiffeo, MobiusParams, grid, make_diffeo
from .fourier import CircleSeries, VectorField


def random_field(rng: np.random.Generator, n_modes: int = 32,
                 m_min: int = 2, m_max: int = 8) -> VectorField:
    """Normalized real field with ``|u_m| = 2^-m`` and uniform phases."""
    phases = rng.uniform(0, 2 * np.pi, m_max - m_min + 1)
    modes = {m: 2.0 ** -m * np.exp(1j * ph)
             for m, ph in zip(range(m_min, m_max + 1), phases)}
    return VectorField.from_modes(modes, max(n_modes, m_max))


def random_diffeo(rng: np.random.Generator, min_derivative: float | tuple = (0.3, 0.9),
                  m_count: int = DEFAULT_SAMPLES, m_max: int = 8) -> CircleDiffeo:
    """``theta + p`` with decaying random ``p`` scaled to a given ``min phi'``.

    ``p`` has ``|p_m| = 2^-m``, ``m = 1..m_max`` with uniform phases, then
    is rescaled so the grid minimum of ``phi'`` equals ``min_derivative``
    (drawn uniformly when a range is given).
    """
    if np.ndim(min_derivative):
        target = rng.uniform(*min_derivative)
    else:
        target = float(min_derivative)
    if not 0 < target < 1:
        raise ValueError("target min derivative must lie in (0, 1)")
    phases = rng.uniform(0, 2 * np.pi, m_max)
    modes = {m: 2.0 ** -m * np.exp(1j * ph)
             for m, ph in zip(range(1, m_max + 1), phases)}
    p = CircleSeries.from_modes(modes, m_max, real=True)
    dmin = float(np.min(p.derivative()(grid(m_count))))
    return make_diffeo(((1 - target) / -dmin) * p, m_count)


def random_mobius(rng: np.random.Generator, max_radius: float = 0.5) -> MobiusParams:
    radius = max_radius * np.sqrt(rng.uniform())
    return MobiusParams(complex(radius * np.exp(2j * np.pi * rng.uniform())),
                        float(rng.uniform(0, 2 * np.pi)))
