"""Thickness sweeps, rate fits and CSV reports."""

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .elastic_modes import MaterialParams, manufactured_forcing
from .errors import ConfigError, ResonanceError
from .geometry import SphereGeometry
from .norms import ModalNorm, fluid_error_norm, solid_error_norm  # noqa: F401  (re-exported)
from .rates import RateFit, fit_rate, geometric_grid, local_slopes  # noqa: F401
from .special_functions import L_MAX
from .solvers import (MARGIN_TOL, ec_conditioning, multiscale_terms, resonance_margin,
                      solve_ec, solve_transmission)

CONFIG_KEYS = ("rho_s", "lambda", "mu", "rho_f", "c", "omega", "R", "amplitude",
               "l_list", "eps_start", "eps_ratio", "eps_count", "orders", "output")
CSV_HEADER = ("eps", "l", "k", "err_solid", "err_fluid_remainder", "slope_hint",
              "cond_transmission", "cond_ec")


@dataclass(frozen=True)
class SweepConfig:
    rho_s: float
    lam: float
    mu: float
    rho_f: float
    c: float
    omega: float
    R: float
    amplitude: float
    l_list: tuple
    eps_start: float
    eps_ratio: float
    eps_count: int
    orders: tuple
    output: str = "sweep.csv"

    def __post_init__(self):
        if not 0 < self.eps_ratio < 1:
            raise ConfigError(f"eps_ratio must lie in (0, 1), got {self.eps_ratio}")
        if not 0 < self.eps_start < self.R / 2:
            raise ConfigError(f"eps_start must lie in (0, R/2), got {self.eps_start}")
        if int(self.eps_count) != self.eps_count or self.eps_count < 5:
            raise ConfigError(f"eps_count must be an integer >= 5, got {self.eps_count}")
        if not self.l_list:
            raise ConfigError("l_list is empty")
        for l in self.l_list:
            if int(l) != l or not 0 <= l <= L_MAX:
                raise ConfigError(f"mode degree {l!r} outside 0..{L_MAX}")
        if not self.orders:
            raise ConfigError("orders is empty")
        for k in self.orders:
            if k not in (0, 1, 2, 3):
                raise ConfigError(f"order {k!r} outside 0..3")
        try:
            self.material
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def material(self):
        return MaterialParams(self.rho_s, self.lam, self.mu, self.rho_f, self.c, self.omega)

    @property
    def eps_grid(self):
        return geometric_grid(self.eps_start, self.eps_ratio, self.eps_count)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = sorted(set(data) - set(CONFIG_KEYS))
        missing = sorted(set(CONFIG_KEYS) - set(data))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        if missing:
            raise ConfigError(f"missing config keys: {', '.join(missing)}")
        try:
            return cls(
                rho_s=float(data["rho_s"]), lam=float(data["lambda"]), mu=float(data["mu"]),
                rho_f=float(data["rho_f"]), c=float(data["c"]), omega=float(data["omega"]),
                R=float(data["R"]), amplitude=float(data["amplitude"]),
                l_list=tuple(sorted({int(l) for l in data["l_list"]})),
                eps_start=float(data["eps_start"]), eps_ratio=float(data["eps_ratio"]),
                eps_count=_as_count(data["eps_count"]),
                orders=tuple(sorted({int(k) for k in data["orders"]})),
                output=str(data["output"]),
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"malformed config value: {exc}") from exc

    def to_dict(self):
        return {"rho_s": self.rho_s, "lambda": self.lam, "mu": self.mu, "rho_f": self.rho_f,
                "c": self.c, "omega": self.omega, "R": self.R, "amplitude": self.amplitude,
                "l_list": list(self.l_list), "eps_start": self.eps_start,
                "eps_ratio": self.eps_ratio, "eps_count": self.eps_count,
                "orders": list(self.orders), "output": self.output}


def _as_count(value):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise ConfigError(f"eps_count must be an integer, got {value!r}")
    return int(value)


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return SweepConfig.from_dict(data)


def check_margins(mat, l_list, R, tol=MARGIN_TOL):
    """Return {l: margin}; raise ResonanceError naming the first bad mode."""
    margins = {}
    for l in l_list:
        margins[l] = resonance_margin(mat, l, R)
        if margins[l] <= tol:
            raise ResonanceError(
                f"omega={mat.omega} is (nearly) an eigenfrequency of the traction-free ball "
                f"for mode l={l}: margin {margins[l]:.3e} <= {tol:g}", degree=l,
                measure=margins[l])
    return margins


def _sweep_cell(args):
    """All orders for one (eps, l): returns rows without slope hints."""
    config, eps, l, expansion = args
    mat = config.material
    forcing = manufactured_forcing(mat, l, config.amplitude, config.R)
    exact = solve_transmission(mat, SphereGeometry(config.R, eps), l, forcing)
    rows = []
    for k in config.orders:
        approx = solve_ec(k, mat, config.R, eps, l, forcing)
        err = solid_error_norm(exact.solid, approx, R=config.R).value
        fluid = fluid_error_norm(exact.fluid, expansion, eps, k, R=config.R).value
        rows.append({"eps": float(eps), "l": l, "k": k, "err_solid": err,
                     "err_fluid_remainder": fluid, "slope_hint": math.nan,
                     "cond_transmission": exact.conditioning,
                     "cond_ec": ec_conditioning(k, mat, config.R, eps, l)})
    return rows


def run_sweep(config, workers=1):
    """Rows ordered by eps (descending), then l, then k (ascending).

    ``slope_hint`` is the pairwise rate of err_solid against the previous
    (larger) eps of the same (l, k); nan on the first eps.
    """
    mat = config.material
    check_margins(mat, config.l_list, config.R)
    N = max(config.orders)
    expansions = {l: multiscale_terms(mat, SphereGeometry(config.R), l,
                                      manufactured_forcing(mat, l, config.amplitude, config.R), N)
                  for l in config.l_list}
    eps_grid = sorted(config.eps_grid, reverse=True)
    cells = [(config, eps, l, expansions[l]) for eps in eps_grid for l in config.l_list]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_cell, cells))
    else:
        results = [_sweep_cell(c) for c in cells]
    rows = [row for cell in results for row in cell]

    history = {}
    for row in rows:
        key = (row["l"], row["k"])
        history.setdefault(key, []).append(row)
    for series in history.values():
        eps = [r["eps"] for r in series]
        errs = [r["err_solid"] for r in series]
        for r, s in zip(series, local_slopes(eps, errs)):
            r["slope_hint"] = float(s)
    return rows


def _fmt(value):
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return repr(float(value))


def rows_to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_fmt(row[name]) for name in CSV_HEADER])
    return buf.getvalue()


def write_csv(rows, path):
    path = Path(path)
    try:
        path.write_text(rows_to_csv(rows), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write sweep output {path}: {exc}") from exc
    return path


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        rows = []
        for rec in reader:
            row = {name: float(rec[name]) for name in CSV_HEADER}
            row["l"], row["k"] = int(rec["l"]), int(rec["k"])
            rows.append(row)
    return rows


def sweep_fits(rows, column="err_solid"):
    """{(l, k): RateFit} over each series of a sweep table."""
    series = {}
    for row in rows:
        series.setdefault((row["l"], row["k"]), []).append((row["eps"], row[column]))
    return {key: fit_rate([e for e, _ in pts], [v for _, v in pts])
            for key, pts in sorted(series.items())}


def resonance_scan(mat, l_list, omegas, R=1.0):
    """Margins over an omega grid: list of (omega, {l: margin})."""
    out = []
    for w in omegas:
        m = mat.replace(omega=float(w))
        out.append((float(w), {l: resonance_margin(m, l, R) for l in l_list}))
    return out
