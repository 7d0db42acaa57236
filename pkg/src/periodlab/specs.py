"""JSON input specs and matrix serialization used by the command line.

Series literal::

    [{"m": 2, "re": 0.5, "im": 0.0}, ...]        # mode 0 is rejected

Diffeo spec::

    {"kind": "fourier", "coeffs": [...], "shift": 0.0}
    {"kind": "mobius", "a_re": .., "a_im": .., "beta": ..}
    {"kind": "flow", "field": [...], "t": .., "steps": 100}
    {"kind": "compose", "of": [spec, ...]}       # of[0] o of[1] o ...
    {"kind": "identity"}

Beltrami spec::

    {"kind": "zbar_pow", "k": 1}
    {"kind": "const", "re": .., "im": ..}
    {"kind": "poly", "terms": [{"i": 0, "j": 1, "re": 1.0, "im": 0.0}]}
"""

from __future__ import annotations

import csv
import io
import json
from functools import reduce
from pathlib import Path

import numpy as np

from . import diffeo as dfm
from .beltrami import BeltramiCoefficient
from .fourier import CircleSeries, VectorField


class SpecError(ValueError):
    pass


def load_json(source: str):
    """Parse inline JSON or the contents of a file path."""
    text = source.strip()
    if not text.startswith(("{", "[")):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise SpecError(f"cannot read {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from exc


def parse_series(literal, real: bool = False) -> CircleSeries:
    if not isinstance(literal, list):
        raise SpecError("series literal must be a JSON array")
    modes = {}
    for entry in literal:
        try:
            m = int(entry["m"])
            value = complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"bad series entry {entry!r}") from exc
        if m == 0:
            raise SpecError("series entries with m = 0 are not allowed")
        if m in modes:
            raise SpecError(f"mode {m} given twice")
        modes[m] = value
    n_modes = max([abs(m) for m in modes] or [1])
    try:
        return CircleSeries.from_modes(modes, n_modes, real=real)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


def series_literal(series: CircleSeries) -> list:
    return [{"m": int(m), "re": float(c.real), "im": float(c.imag)}
            for m, c in zip(series.modes, series.coeffs) if c != 0]


def build_diffeo(spec, m_count: int) -> dfm.CircleDiffeo:
    """Construct a diffeomorphism from a parsed spec.

    Raises ``SpecError`` for malformed specs and ``NotADiffeomorphism``
    when the result fails the derivative check.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise SpecError("diffeo spec must be an object with a 'kind'")
    kind = spec["kind"]
    try:
        if kind == "identity":
            return dfm.identity(m_count)
        if kind == "fourier":
            p = parse_series(spec.get("coeffs", []), real=True)
            return dfm.make_diffeo(p, m_count, float(spec.get("shift", 0.0)))
        if kind == "mobius":
            a = complex(float(spec.get("a_re", 0.0)), float(spec.get("a_im", 0.0)))
            params = dfm.MobiusParams(a, float(spec.get("beta", 0.0)))
            return dfm.mobius_boundary(params, m_count)
        if kind == "flow":
            series = parse_series(spec["field"], real=True)
            field = VectorField(series)
            return dfm.flow(field, float(spec["t"]), int(spec.get("steps", 100)),
                            m_count)
        if kind == "compose":
            parts = [build_diffeo(s, m_count) for s in spec["of"]]
            if not parts:
                raise SpecError("compose needs at least one spec")
            return reduce(dfm.compose, parts)
    except dfm.NotADiffeomorphism:
        raise
    except (KeyError, TypeError) as exc:
        raise SpecError(f"bad {kind} spec: missing or malformed {exc}") from exc
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    raise SpecError(f"unknown diffeo kind {kind!r}")


def build_beltrami(spec) -> BeltramiCoefficient:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise SpecError("beltrami spec must be an object with a 'kind'")
    kind = spec["kind"]
    try:
        if kind == "zbar_pow":
            return BeltramiCoefficient.zbar_pow(int(spec["k"]))
        if kind == "const":
            return BeltramiCoefficient.constant(
                complex(float(spec.get("re", 0.0)), float(spec.get("im", 0.0))))
        if kind == "poly":
            terms = [(t["i"], t["j"], complex(float(t.get("re", 0.0)),
                                              float(t.get("im", 0.0))))
                     for t in spec["terms"]]
            return BeltramiCoefficient.polynomial(terms)
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"bad {kind} spec: {exc}") from exc
    raise SpecError(f"unknown beltrami kind {kind!r}")


def matrix_to_json(Z) -> dict:
    Z = np.asarray(Z, dtype=complex)
    return {"n": int(Z.shape[0]),
            "data": [[float(z.real), float(z.imag)] for z in Z.ravel()]}


def matrix_from_json(obj) -> np.ndarray:
    n = int(obj["n"])
    data = np.asarray(obj["data"], dtype=float)
    if data.shape != (n * n, 2):
        raise SpecError(f"matrix data must have {n * n} [re, im] pairs")
    return (data[:, 0] + 1j * data[:, 1]).reshape(n, n)


def matrix_to_csv(Z) -> str:
    Z = np.asarray(Z, dtype=complex)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "q", "re", "im"])
    for (p, q), z in np.ndenumerate(Z):
        writer.writerow([p + 1, q + 1, repr(float(z.real)), repr(float(z.imag))])
    return buf.getvalue()


def matrix_from_csv(text: str) -> np.ndarray:
    rows = list(csv.DictReader(io.StringIO(text)))
    n = max(int(r["p"]) for r in rows)
    Z = np.zeros((n, n), dtype=complex)
    for r in rows:
        Z[int(r["p"]) - 1, int(r["q"]) - 1] = complex(float(r["re"]), float(r["im"]))
    return Z
