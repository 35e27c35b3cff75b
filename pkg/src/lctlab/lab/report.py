"""Tabular experiment records and power-law fits."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

__all__ = ["ExperimentReport", "PowerFit", "fit_power_law", "format_value"]


@dataclass(frozen=True)
class PowerFit:
    """Least-squares fit ``log y = exponent·log x + log prefactor``."""

    exponent: float
    prefactor: float
    residual: float  # RMS of the log-space residuals

    def to_dict(self) -> dict:
        return {"exponent": self.exponent, "prefactor": self.prefactor, "residual": self.residual}


def fit_power_law(x, y) -> PowerFit:
    """Fit ``y ≈ c·x^e`` on a log-log scale; needs at least two positive points."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ValueError("need matching arrays with at least two points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("power-law fits need positive data")
    lx, ly = np.log(x), np.log(y)
    slope, icpt = np.polyfit(lx, ly, 1)
    res = ly - (slope * lx + icpt)
    return PowerFit(float(slope), float(math.exp(icpt)), float(np.sqrt(np.mean(res * res))))


def format_value(v) -> str:
    """CSV cell text: 17 significant digits for floats, lowercase booleans."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, PowerFit):
        return obj.to_dict()
    return obj


@dataclass
class ExperimentReport:
    """Rows of measurements plus fits, pass/fail flags and a config echo.

    Reports are assembled once by a single experiment function and then
    only serialized; nothing mutates them afterwards.
    """

    experiment: str
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)
    fits: dict[str, PowerFit] = field(default_factory=dict)
    flags: dict[str, bool] = field(default_factory=dict)
    summary: dict[str, Any] = field(default_factory=dict)
    config: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    curves: dict[str, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)

    def add_row(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values, expected {len(self.columns)}")
        self.rows.append(tuple(values))

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([r[j] for r in self.rows])

    def select(self, **match) -> "ExperimentReport":
        """Rows whose named columns equal the given values."""
        idx = [self.columns.index(k) for k in match]
        want = list(match.values())
        rows = [r for r in self.rows if all(r[i] == w for i, w in zip(idx, want))]
        return ExperimentReport(self.experiment, list(self.columns), rows)

    # -- serialization ----------------------------------------------------

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# experiment: {self.experiment}\n")
        buf.write(f"# columns: {', '.join(self.columns)}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return _jsonable({
            "experiment": self.experiment,
            "columns": self.columns,
            "n_rows": len(self.rows),
            "fits": self.fits,
            "flags": self.flags,
            "summary": self.summary,
            "config": self.config,
            "notes": self.notes,
            "curves": sorted(self.curves),
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def curve_text(self, name: str) -> str:
        x, y = self.curves[name]
        return "".join(f"{format_value(float(a))} {format_value(float(b))}\n" for a, b in zip(x, y))

    def write(self, out_dir, stem: str | None = None) -> list[Path]:
        """Write ``<stem>.csv``, ``<stem>.json`` and one ``<stem>_<curve>.dat`` per curve."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = stem or self.experiment
        paths = [out / f"{stem}.csv", out / f"{stem}.json"]
        paths[0].write_text(self.to_csv())
        paths[1].write_text(self.to_json())
        for name in sorted(self.curves):
            p = out / f"{stem}_{name}.dat"
            p.write_text(self.curve_text(name))
            paths.append(p)
        return paths
