"""Reading states/potentials from text files and writing result tables."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .histories import DecoherenceReport
from .propagate import Potential
from .qcore import DecoherenceMatrix, Grid, HistoryClass, WaveFunction

__all__ = [
    "matrix_columns",
    "report_to_record",
    "report_from_record",
    "read_state_file",
    "read_potential_file",
    "format_value",
    "csv_text",
    "json_text",
]


def matrix_columns() -> list[str]:
    cols = []
    for a in HistoryClass:
        for b in HistoryClass:
            cols += [f"D_{a.label}_{b.label}_re", f"D_{a.label}_{b.label}_im"]
    return cols


REPORT_COLUMNS = matrix_columns() + [
    "p_c01",
    "p_c10",
    "p_c11",
    "epsilon_dec",
    "decoherent",
    "sum_check_re",
    "sum_check_im",
]


def report_to_record(report: DecoherenceReport) -> dict:
    rec = {}
    e = report.matrix.entries
    for a in HistoryClass:
        for b in HistoryClass:
            rec[f"D_{a.label}_{b.label}_re"] = float(e[a, b].real)
            rec[f"D_{a.label}_{b.label}_im"] = float(e[a, b].imag)
    for cls, p in zip(HistoryClass, report.probabilities):
        rec[f"p_{cls.label}"] = float(p)
    rec["epsilon_dec"] = float(report.epsilon_dec)
    rec["decoherent"] = bool(report.decoherent)
    rec["sum_check_re"] = float(report.sum_check.real)
    rec["sum_check_im"] = float(report.sum_check.imag)
    return rec


def report_from_record(rec: dict) -> DecoherenceReport:
    m = np.empty((3, 3), dtype=complex)
    for a in HistoryClass:
        for b in HistoryClass:
            m[a, b] = complex(float(rec[f"D_{a.label}_{b.label}_re"]), float(rec[f"D_{a.label}_{b.label}_im"]))
    probs = tuple(float(rec[f"p_{c.label}"]) for c in HistoryClass)
    return DecoherenceReport(
        DecoherenceMatrix(m),
        probs,
        float(rec["epsilon_dec"]),
        complex(float(rec["sum_check_re"]), float(rec["sum_check_im"])),
    )


def _load_columns(path) -> np.ndarray:
    data = np.loadtxt(path, comments="#", delimiter=None, ndmin=2)
    if data.shape[0] < 2:
        raise ValueError(f"{path}: need at least two rows")
    return data


def read_state_file(path, grid: Grid, normalize: bool = True) -> WaveFunction:
    """Load columns (x, Re psi[, Im psi]) sampled on a uniform mesh.

    The samples are resampled onto ``grid`` by Whittaker-Shannon (sinc)
    interpolation, which is exact for states band-limited to the file's
    Nyquist frequency.
    """
    data = _load_columns(path)
    xs = data[:, 0]
    vals = data[:, 1] + (1j * data[:, 2] if data.shape[1] > 2 else 0.0)
    steps = np.diff(xs)
    h = steps.mean()
    if h <= 0 or np.max(np.abs(steps - h)) > 1e-9 * max(abs(h), 1.0):
        raise ValueError(f"{path}: x column must be uniformly spaced and increasing")
    out = np.empty(grid.n_points, dtype=complex)
    chunk = 1024
    for start in range(0, grid.n_points, chunk):
        xg = grid.x[start:start + chunk]
        out[start:start + chunk] = np.sinc((xg[:, None] - xs[None, :]) / h) @ vals
    psi = WaveFunction(grid, out)
    return psi.normalized() if normalize else psi


def read_potential_file(path, grid: Grid) -> Potential:
    """Load columns (x, V); linear interpolation, held constant past the ends."""
    data = _load_columns(path)
    order = np.argsort(data[:, 0])
    return Potential(grid, np.interp(grid.x, data[order, 0], data[order, 1]))


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    if v is None:
        return ""
    return str(v)


def csv_text(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([format_value(row.get(c)) for c in columns])
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=True) + "\n"


def write_text(path, text: str) -> None:
    if path is None or str(path) == "-":
        import sys

        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(path).write_text(text, encoding="utf-8")
