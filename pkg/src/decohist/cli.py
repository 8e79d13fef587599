"""Command-line front end.

    decohist matrix   --T 0.01 --width 1
    decohist sweep    --T-range 1e-3:1e-1:9 --jobs 4 --format csv --out sweep.csv
    decohist gaussian --lambda-range 1:1e6:13
    decohist estimate --preset dust
    decohist verify

Options may also come from a JSON file given with ``--config``; keys are
the long option names with dashes replaced by underscores.  Flags given on
the command line win over the file.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import closedform as cf
from .histories import SweepPoint, decoherence_matrix, loglog_slope, sweep_T
from .io import REPORT_COLUMNS, csv_text, json_text, read_potential_file, read_state_file, report_to_record, write_text
from .qcore import GaussianSpec, Grid, HistoryClass, ModelParams, make_gaussian, make_odd_pair, required_half_width
from .verify import run_checks

DEFAULTS = {
    "mass": 1.0,
    "T": 0.01,
    "T_range": "1e-3:1e-1:9",
    "lambda_range": "1:1e6:13",
    "width": 1.0,
    "grid_n": 8192,
    "grid_halfwidth": None,
    "state": "gaussian",
    "potential": None,
    "n_steps": 64,
    "out": None,
    "format": "csv",
    "jobs": 1,
    "preset": None,
}

# (mass kg, width m)
PRESETS = {
    "electron": (9.1093837015e-31, 2.42631023867e-12),
    "hydrogen": (1.6735575e-27, 5.29177210903e-11),
    "dust": (1e-15, 1e-6),
    "gram": (1e-3, 1e-2),
}


class CLIError(Exception):
    pass


def parse_range(text: str) -> np.ndarray:
    """'a:b:n' -> n log-spaced values from a to b inclusive."""
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as exc:
        raise CLIError(f"range must look like a:b:n, got {text!r}") from exc
    if not (a > 0 and b > a and n >= 2):
        raise CLIError(f"range needs 0 < a < b and n >= 2, got {text!r}")
    return np.logspace(math.log10(a), math.log10(b), n)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="JSON file with option values")
    common.add_argument("--mass", type=float, help="particle mass (hbar=1 units; kg for estimate)")
    common.add_argument("--T", type=float, help="time interval spanned by the alternatives")
    common.add_argument("--T-range", dest="T_range", help="log-spaced intervals a:b:n")
    common.add_argument("--lambda-range", dest="lambda_range", help="log-spaced lambda*l^2 values a:b:n (gaussian)")
    common.add_argument("--width", type=float, help="Gaussian width l (m for estimate)")
    common.add_argument("--state", help="'gaussian', 'odd-pair' or a file with columns x, Re psi, Im psi")
    common.add_argument("--grid-n", dest="grid_n", type=int, help="number of grid points")
    common.add_argument("--grid-halfwidth", dest="grid_halfwidth", type=float, help="grid half width (default: sizing rule)")
    common.add_argument("--potential", help="file with columns x, V")
    common.add_argument("--n-steps", dest="n_steps", type=int, help="split-step count when a potential is given")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--jobs", type=int, help="concurrent sweep points")
    common.add_argument("--preset", choices=sorted(PRESETS), help="estimate: named mass/width pair")

    ap = argparse.ArgumentParser(prog="decohist", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("matrix", parents=[common], help="decoherence functional for one interval")
    sub.add_parser("sweep", parents=[common], help="decoherence functional over a range of intervals")
    sub.add_parser("gaussian", parents=[common], help="exact vs asymptotic interference for the Gaussian")
    sub.add_parser("estimate", parents=[common], help="decoherence time M l^2 / hbar in SI units")
    sub.add_parser("verify", parents=[common], help="run oracle cross-checks")
    return ap


def resolve_config(ns: argparse.Namespace) -> dict:
    given = vars(ns).copy()
    command = given.pop("command")
    cfg = dict(DEFAULTS)
    path = given.pop("config", None)
    if path is not None:
        if not Path(path).is_file():
            raise CLIError(f"config file not found: {path}")
        loaded = json.loads(Path(path).read_text(encoding="utf-8"))
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise CLIError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    cfg.update(given)
    for key in ("potential",):
        if cfg[key] is not None and not Path(cfg[key]).is_file():
            raise CLIError(f"{key} file not found: {cfg[key]}")
    if cfg["state"] not in ("gaussian", "odd-pair") and not Path(cfg["state"]).is_file():
        raise CLIError(f"state file not found: {cfg['state']}")
    cfg["command"] = command
    return cfg


def _grid(cfg: dict, t_max: float) -> Grid:
    hw = cfg["grid_halfwidth"]
    if hw is None:
        hw = required_half_width(cfg["width"], cfg["mass"], t_max)
        if cfg["state"] == "odd-pair":
            hw += 1.0
    return Grid(float(hw), int(cfg["grid_n"]))


def _state(cfg: dict, grid: Grid):
    if cfg["state"] == "gaussian":
        return make_gaussian(GaussianSpec(cfg["width"]), grid)
    if cfg["state"] == "odd-pair":
        return make_odd_pair(GaussianSpec(cfg["width"], 1.0), grid)
    return read_state_file(cfg["state"], grid)


def _potential(cfg: dict, grid: Grid):
    return None if cfg["potential"] is None else read_potential_file(cfg["potential"], grid)


def _point_row(point: SweepPoint, mass: float) -> dict:
    row = {"T": point.interval, "lambda": mass / (2.0 * point.interval)}
    if point.report is not None:
        row.update(report_to_record(point.report))
    row["error"] = point.error
    return row


def _emit(cfg: dict, columns: list[str], rows: list[dict], extra: dict | None = None) -> None:
    if cfg["format"] == "csv":
        write_text(cfg["out"], csv_text(columns, rows))
    else:
        doc = {
            "tool": "decohist",
            "version": __version__,
            "command": cfg["command"],
            "config": {k: v for k, v in sorted(cfg.items()) if k != "command"},
            "results": rows,
        }
        if extra:
            doc.update(extra)
        write_text(cfg["out"], json_text(doc))


def cmd_matrix(cfg: dict) -> int:
    grid = _grid(cfg, cfg["T"])
    psi = _state(cfg, grid)
    rep = decoherence_matrix(psi, ModelParams(cfg["mass"], cfg["T"]), _potential(cfg, grid), cfg["n_steps"])
    row = {"T": cfg["T"], "lambda": cfg["mass"] / (2.0 * cfg["T"]), **report_to_record(rep)}
    _emit(cfg, ["T", "lambda"] + REPORT_COLUMNS, [row])
    return 0


def cmd_sweep(cfg: dict) -> int:
    ts = parse_range(cfg["T_range"])
    grid = _grid(cfg, float(ts[-1]))
    psi = _state(cfg, grid)
    pot = _potential(cfg, grid)
    columns = ["T", "lambda"] + REPORT_COLUMNS + ["fitted_slope", "error"]
    rows: list[dict] = []

    def on_point(p: SweepPoint) -> None:
        rows.append(_point_row(p, cfg["mass"]))

    try:
        points = sweep_T(psi, cfg["mass"], ts, potential=pot, n_steps=cfg["n_steps"], jobs=cfg["jobs"], on_point=on_point)
    except BaseException as exc:
        # keep whatever finished before the failure
        _emit(cfg, columns, rows, {"error": f"{type(exc).__name__}: {exc}"})
        raise
    good = [p for p in points if p.report is not None]
    slope = None
    if len(good) >= 2:
        d = [p.report.matrix[HistoryClass.C01, HistoryClass.C11] for p in good]
        slope = loglog_slope([p.interval for p in good], d)
    for row in rows:
        row["fitted_slope"] = slope
    _emit(cfg, columns, rows, {"fitted_slope": slope})
    return 1 if len(good) < len(points) else 0


def cmd_gaussian(cfg: dict) -> int:
    width = cfg["width"]
    rows = []
    for s in parse_range(cfg["lambda_range"]):
        lam = s / width**2
        g = cf.gaussian_gamma(width, lam)
        e = cf.eta(cf.gaussian_psi0_sq(width), lam)
        rows.append({
            "lambda_l2": float(s),
            "lambda": float(lam),
            "gamma_re": g.real,
            "gamma_im": g.imag,
            "eta_re": e.real,
            "eta_im": e.imag,
            "rel_error": abs(g - e) / abs(g),
        })
    _emit(cfg, list(rows[0]), rows)
    return 0


def cmd_estimate(cfg: dict) -> int:
    if cfg["preset"] is not None:
        label = cfg["preset"]
        mass, width = PRESETS[label]
    else:
        label = "custom"
        mass, width = cfg["mass"], cfg["width"]
    t = cf.decoherence_time(mass, width)
    row = {"label": label, "mass_kg": mass, "width_m": width, "t_decoherence_s": t, "log10_t": math.log10(t)}
    _emit(cfg, list(row), [row])
    return 0


def cmd_verify(cfg: dict) -> int:
    results = run_checks()
    for r in results:
        print(r.line(), file=sys.stderr if cfg["out"] in (None, "-") and cfg["format"] == "json" else sys.stdout)
    if cfg["out"] is not None or cfg["format"] == "json":
        rows = [{"check": r.name, "measured": r.measured, "tolerance": r.tolerance, "passed": r.passed} for r in results]
        _emit(cfg, ["check", "measured", "tolerance", "passed"], rows)
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "matrix": cmd_matrix,
    "sweep": cmd_sweep,
    "gaussian": cmd_gaussian,
    "estimate": cmd_estimate,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(ns)
        return COMMANDS[cfg["command"]](cfg)
    except Exception as exc:
        record = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stderr.write(json.dumps(record) + "\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
