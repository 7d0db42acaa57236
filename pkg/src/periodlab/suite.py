"""Property suite behind ``periodlab verify`` and the resolution sweep."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import beltrami as bm
from . import diffeo as dfm
from . import period, segal, tangent
from .fourier import CircleSeries, VectorField
from .sampling import random_diffeo, random_field, random_mobius

# thresholds for the property checks; ``tol`` in RunConfig covers symmetry
TOLERANCES = {
    "mobius_kernel": 1e-8,
    "symplectic": 1e-8,
    "holomorphy": 1e-12,
    "isometry_spread": 1e-10,
    "isometry_constant": 1e-9,
    "fd_ratio": 0.4,
    "fd_entry": 0.01,
    "schottky_image": 1e-12,
    "schottky_generic": 1e-2,
    "rauch": 1e-10,
    "equivariance": 1e-6,
    "convergence": 1e-8,
}

SIEGEL_RANGE = (0.3, 0.9)


@dataclass
class RunConfig:
    n_modes: int = 32
    samples: int = 2048
    interior: int | None = None
    tol: float = period.DEFAULT_TOL
    seed: int = 42
    fmt: str = "json"
    out: str | None = None

    def __post_init__(self):
        if self.interior is None:
            self.interior = self.n_modes // 2
        if self.samples < 8 * self.n_modes:
            raise ValueError(f"samples={self.samples} must be >= 8 * modes")
        if not 1 <= self.interior <= self.n_modes // 2:
            raise ValueError("interior must lie in 1..modes/2")
        if self.tol < 0:
            raise ValueError("tolerance must be non-negative")
        if self.fmt not in ("json", "csv"):
            raise ValueError("format must be json or csv")


@dataclass
class CheckResult:
    name: str
    value: float
    threshold: float
    op: str
    passed: bool


def _check(name, value, threshold, op="<=") -> CheckResult:
    value = float(value)
    passed = {"<=": value <= threshold, ">=": value >= threshold,
              ">": value > threshold}[op]
    return CheckResult(name, value, float(threshold), op, bool(passed))


@dataclass
class SuiteReport:
    config: RunConfig
    checks: list[CheckResult] = field(default_factory=list)
    metrics: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self, timestamp: str | None = None) -> dict:
        return {
            "generated": timestamp or datetime.now(timezone.utc).isoformat(),
            "config": {k: v for k, v in asdict(self.config).items() if k != "out"},
            "passed": self.passed,
            "metrics": self.metrics,
            "checks": [asdict(c) for c in self.checks],
        }

    def lines(self) -> list[str]:
        return [f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.value:.3e} "
                f"{c.op} {c.threshold:.1e}" for c in self.checks]


def _interior_max(M, k):
    return float(np.max(np.abs(np.asarray(M)[:k, :k])))


def run_suite(config: RunConfig) -> SuiteReport:
    rng = np.random.default_rng(config.seed)
    N, M, K = config.n_modes, config.samples, config.interior
    report = SuiteReport(config)
    add = report.checks.append

    worst = 0.0
    for _ in range(10):
        b = segal.blocks(dfm.mobius_boundary(random_mobius(rng, 0.5), M), N)
        Z = period.period_matrix(b).Z
        worst = max(worst, np.max(np.abs(Z)), np.max(np.abs(b.B)))
    add(_check("mobius_kernel", worst, TOLERANCES["mobius_kernel"]))

    sym, eig, sp = 0.0, np.inf, 0.0
    for _ in range(10):
        b = segal.blocks(random_diffeo(rng, SIEGEL_RANGE, M), N)
        point = period.period_matrix(b, interior=K)
        sym = max(sym, point.symmetry_residual)
        eig = min(eig, point.min_eig_IminusZZbar)
        sp = max(sp, segal.check_symplectic(b, K))
    add(_check("siegel_symmetry", sym, config.tol))
    add(_check("siegel_positivity", eig, 0.0, ">"))
    add(_check("symplectic", sp, TOLERANCES["symplectic"]))

    fields = [random_field(rng, N) for _ in range(20)]
    holo = max(tangent.holomorphy_check(v, N) for v in fields)
    add(_check("holomorphy", holo, TOLERANCES["holomorphy"]))

    pairs = [(random_field(rng, N), random_field(rng, N)) for _ in range(20)]
    c_mean, c_spread, _ = tangent.isometry_ratio(pairs, N)
    add(_check("isometry_spread", c_spread, TOLERANCES["isometry_spread"]))
    add(_check("isometry_constant", abs(c_mean - 1 / 6), TOLERANCES["isometry_constant"]))

    v = VectorField.sin(2)
    lam = tangent.d_pi(v, N).lam
    errors, entry = [], None
    for t in (1e-2, 5e-3):
        Z = period.period_matrix(segal.blocks(dfm.flow(v, t, 20, M), N)).Z
        errors.append(_interior_max(Z / t - lam, K))
        if entry is None:
            entry = Z[0, 0] / t
    add(_check("fd_ratio", abs(errors[0] / errors[1] - 2.0), TOLERANCES["fd_ratio"]))
    add(_check("fd_entry", abs(entry - (-0.5)), TOLERANCES["fd_entry"]))

    image = max(tangent.schottky_residual(tangent.d_pi(random_field(rng, N), N))
                for _ in range(20))
    generic = np.inf
    for _ in range(5):
        X = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
        generic = min(generic, tangent.schottky_residual(tangent.TangentHom(X + X.T)))
    add(_check("schottky_image", image, TOLERANCES["schottky_image"]))
    add(_check("schottky_generic", generic, TOLERANCES["schottky_generic"], ">="))

    m1 = bm.disc_moments(bm.BeltramiCoefficient.zbar_pow(1), 2 * N, n_r=2 * N)
    m2 = bm.disc_moments(bm.BeltramiCoefficient.zbar_pow(2), 2 * N, n_r=2 * N)
    first = bm.rauch_first_variation(m1, 0.01, N)
    rauch = max(abs(m1[3] - math.pi / 2), abs(m2[4] - math.pi / 3),
                abs(first[0, 1] - 0.01 * math.sqrt(2) / 2))
    add(_check("rauch", rauch, TOLERANCES["rauch"]))
    mismatch = np.count_nonzero(
        tangent.schottky_tangent(bm.beltrami_to_vector(m1), N).lam
        != bm.rauch_first_variation(m1, 1.0, N))
    add(_check("rauch_schottky_identity", mismatch, 0))

    equi = 0.0
    for _ in range(5):
        phi = random_diffeo(rng, SIEGEL_RANGE, M)
        psi = random_diffeo(rng, SIEGEL_RANGE, M)
        lhs = period.period_matrix(segal.blocks(dfm.compose(phi, psi), N)).Z
        Z_phi = period.period_matrix(segal.blocks(phi, 2 * N)).Z
        rhs = period.mobius_act(segal.blocks(psi, N), Z_phi)
        equi = max(equi, _interior_max(lhs - rhs, K))
    add(_check("equivariance", equi, TOLERANCES["equivariance"]))

    conv = 0.0
    for phi in convergence_diffeos(M):
        Z1 = period.period_matrix(segal.blocks(phi, N)).Z
        Z2 = period.period_matrix(segal.blocks(phi.resampled(2 * M), 2 * N)).Z
        conv = max(conv, _interior_max(Z1 - Z2[:N, :N], K))
    add(_check("convergence", conv, TOLERANCES["convergence"]))

    report.metrics = {"c_mean": c_mean, "c_spread": c_spread,
                      "holomorphy_max": holo, "schottky_residual": image}
    return report


def convergence_diffeos(m_count: int) -> list[dfm.CircleDiffeo]:
    """Fixed analytic diffeos used for resolution checks."""
    specs = [{3: 0.2 / 2j}, {2: 0.1}, {1: 0.3 / 2j, 2: 0.05 + 0.05j}]
    return [dfm.make_diffeo(CircleSeries.from_modes(s, 4, real=True), m_count)
            for s in specs]


SWEEP_COLUMNS = ["N", "M", "symplectic_residual", "symmetry_residual",
                 "z_delta", "cond_A", "cond_A_square"]


def sweep(phi: dfm.CircleDiffeo, n_list, m_list=None) -> list[dict]:
    """Residuals of the pipeline as ``(N, M)`` grow.

    ``z_delta`` compares interior entries with the previous row on the
    previous row's interior; ``cond_A`` is the condition number of the
    ``N x n_ext`` slab used by the solve and ``cond_A_square`` that of the
    square ``N x N`` section.
    """
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("N list must be increasing")
    if m_list is None:
        m_list = [1 << max(11, int(math.ceil(math.log2(64 * n)))) for n in n_list]
    if len(m_list) != len(n_list):
        raise ValueError("N and M lists differ in length")
    rows, prev = [], None
    for n, m in zip(n_list, m_list):
        b = segal.blocks(phi.resampled(int(m)), n)
        row = {"N": n, "M": int(m), "symplectic_residual": segal.check_symplectic(b),
               "cond_A": b.cond_A(), "cond_A_square": b.cond_A_square()}
        try:
            point = period.period_matrix(b)
        except period.ConditioningError:
            point = None
        if point is None:
            row.update(symmetry_residual=math.nan, z_delta=math.nan)
        else:
            row["symmetry_residual"] = point.symmetry_residual
            if prev is None:
                row["z_delta"] = math.nan
            else:
                k = max(1, prev.shape[0] // 2)
                row["z_delta"] = _interior_max(point.Z[:k, :k] - prev[:k, :k], k)
            prev = point.Z
        rows.append(row)
    return rows


def sweep_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(row[k]) if isinstance(row[k], float) else row[k]
                         for k in SWEEP_COLUMNS})
    return buf.getvalue()
