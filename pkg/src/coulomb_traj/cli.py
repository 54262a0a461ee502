"""Command-line interface: scattering angles, trajectories, cross sections, figure data.

Every command can read a ``key=value`` config file (``--config``); flags given
on the command line override it. Numbers are written with 12 significant
digits and no run-dependent content, so identical configs give identical files.

Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import enum
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import classical, mode_polar, mode_temple
from .classical import Branch, Scenario
from .errors import CoulombTrajError, DomainError, NoSignChange, NonConvergence

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2
TRAJECTORY_COLUMNS = ["rho", "theta_rad", "x_pm", "y_pm", "tau", "t_seconds", "branch", "gap_flag"]
NUMERIC_ERRORS = (NoSignChange, NonConvergence, ArithmeticError, CoulombTrajError)


class Command(str, enum.Enum):
    SCATTERING_ANGLE = "scattering-angle"
    TRAJECTORY = "trajectory"
    CROSS_SECTION = "cross-section"
    FIGURE = "figure"
    SPECFUN_SELFTEST = "specfun-selftest"
    CONVERT_UNITS = "convert-units"


class System(str, enum.Enum):
    CLASSICAL = "classical"
    POLAR_MODE = "polar-mode"
    TEMPLE_MODE = "temple-mode"


class Spacing(str, enum.Enum):
    LINEAR = "linear"
    GEOMETRIC = "geometric"


class Format(str, enum.Enum):
    CSV = "csv"
    JSON = "json"


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    count: int
    spacing: Spacing = Spacing.LINEAR

    def values(self) -> np.ndarray:
        if self.count < 1:
            raise ConfigError("grid count must be positive")
        if self.spacing is Spacing.GEOMETRIC:
            if self.lo <= 0.0 or self.hi <= 0.0:
                raise ConfigError("geometric grid needs positive bounds")
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


@dataclass
class RunConfig:
    command: Command
    system: System = System.CLASSICAL
    energy_ev: float = 20.0
    z: int = 1
    nu: float | None = None
    ks: float | None = None
    grid: GridSpec | None = None
    out_path: str | None = None
    format: Format = Format.CSV
    figure: int | None = None
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if not self.energy_ev > 0.0:
            raise ConfigError("energy_ev must be positive")
        if self.z == 0:
            raise ConfigError("z must be non-zero")
        if self.command in (Command.SCATTERING_ANGLE, Command.TRAJECTORY):
            need_nu = self.system is System.POLAR_MODE
            if need_nu and (self.nu is None or self.ks is not None):
                raise ConfigError("polar-mode needs --nu (and no --ks)")
            if not need_nu and (self.ks is None or self.nu is not None):
                raise ConfigError(f"{self.system.value} needs --ks (and no --nu)")
        if self.ks is not None and not self.ks > 0.0:
            raise ConfigError("ks must be positive")
        if self.nu is not None and not self.nu > -0.5:
            raise ConfigError("nu must exceed -1/2")
        if self.command is Command.FIGURE and self.figure not in (1, 2, 3, 4, 5):
            raise ConfigError("figure must be 1..5")

    @property
    def scenario(self) -> Scenario:
        return Scenario(self.energy_ev, self.z)


# ------------------------------------------------------------------ formatting
def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        return f"{v:.12g}"
    if isinstance(v, enum.Enum):
        return str(v.value)
    return str(v)


def write_csv(path: Path | None, header: Sequence[str], rows, comments: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    text = buf.getvalue()
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return text


def write_json(path: Path | None, header: Sequence[str], rows, comments: Sequence[str] = ()) -> str:
    recs = [{h: _json_value(v) for h, v in zip(header, r)} for r in rows]
    text = json.dumps({"notes": list(comments), "columns": list(header), "rows": recs},
                      indent=1, sort_keys=False) + "\n"
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return text


def _json_value(v):
    s = fmt(v)
    if isinstance(v, (float, np.floating, int, np.integer)) and not isinstance(v, bool):
        return None if s == "nan" else float(s)
    return s


def emit(cfg: RunConfig, header, rows, comments=(), default_name="out") -> str:
    path = None
    if cfg.out_path:
        path = Path(cfg.out_path)
        if path.suffix == "":
            path = path / f"{default_name}.{cfg.format.value}"
    writer = write_json if cfg.format is Format.JSON else write_csv
    return writer(path, header, rows, comments)


# -------------------------------------------------------------------- commands
def _scattering_angle(cfg: RunConfig) -> tuple[float, float | None]:
    sc = cfg.scenario
    if cfg.system is System.CLASSICAL:
        return classical.scattering_angle_classical(sc, cfg.ks), None
    if cfg.system is System.TEMPLE_MODE:
        return mode_temple.scattering_angle_temple(sc, cfg.ks), None
    ang = mode_polar.scattering_angle_mode(sc, cfg.nu)
    return ang.signed, ang.raw


def cmd_scattering_angle(cfg: RunConfig) -> int:
    signed, raw = _scattering_angle(cfg)
    param = cfg.nu if cfg.system is System.POLAR_MODE else cfg.ks
    header = ["system", "energy_ev", "z", "parameter", "theta_sc_rad", "theta_sc_deg", "theta_raw_rad"]
    rows = [[cfg.system, cfg.energy_ev, cfg.z, param, signed, math.degrees(signed),
             math.nan if raw is None else raw]]
    if cfg.out_path:
        emit(cfg, header, rows, default_name="scattering_angle")
    print(f"theta_sc = {math.degrees(signed):.1f}\u00b0")
    return EXIT_OK


def _points_rows(sc: Scenario, pts, gap_rows=()):
    k, tu = sc.k, sc.time_unit_s
    rows = []
    for p in pts:
        x, y = p.xy_pm(k)
        rows.append([p.rho, p.theta, x, y, p.tau, p.tau * tu, p.branch, False])
    for br, g in gap_rows:
        rows.append([g if br is Branch.SCATTERED else math.nan, math.nan,
                     g / k if br is Branch.INCIDENT else math.nan, math.nan,
                     math.nan, math.nan, br, True])
    return rows


def trajectory_rows(cfg: RunConfig, grid: np.ndarray):
    """Rows in TRAJECTORY_COLUMNS for the configured system; failures become gap rows."""
    sc = cfg.scenario
    if cfg.system is System.CLASSICAL:
        return _points_rows(sc, classical.polar_orbit(sc, cfg.ks, grid))
    if cfg.system is System.POLAR_MODE:
        pts = mode_polar.trajectory_polar(sc, cfg.nu, grid, skip_failures=True)
        solved = {(p.branch, p.rho) for p in pts}
        gaps = [(b, float(r)) for b in (Branch.INCIDENT, Branch.SCATTERED)
                for r in grid if r > 0 and (b, float(r)) not in solved]
        return _points_rows(sc, pts, gaps)
    # Temple: incident on kx in [-max, x0], scattered on kr in [x0, max]
    x0 = cfg.ks ** 2 / (2.0 * sc.eta_s) if sc.z > 0 else 0.0
    inc_grid = np.concatenate([-grid[::-1], np.linspace(0.0, x0, 6)])
    sc_grid = grid[grid > x0 * (1.0 + 1e-9)]
    pi, gi = mode_temple.temple_trajectory(sc, cfg.ks, Branch.INCIDENT, inc_grid)
    ps, gs = mode_temple.temple_trajectory(sc, cfg.ks, Branch.SCATTERED, sc_grid)
    gaps = [(Branch.INCIDENT, g) for g in gi.incident] + [(Branch.SCATTERED, g) for g in gs.scattered]
    return _points_rows(sc, pi + ps, gaps)


def cmd_trajectory(cfg: RunConfig) -> int:
    grid = (cfg.grid or GridSpec(1e-3, 100.0, 120, Spacing.GEOMETRIC)).values()
    rows = trajectory_rows(cfg, grid)
    notes = [f"system={cfg.system.value} energy_ev={fmt(cfg.energy_ev)} z={cfg.z} "
             f"{'nu=' + fmt(cfg.nu) if cfg.nu is not None else 'ks=' + fmt(cfg.ks)}"]
    text = emit(cfg, TRAJECTORY_COLUMNS, rows, notes, default_name="trajectory")
    if not cfg.out_path:
        sys.stdout.write(text)
    n_gap = sum(1 for r in rows if r[-1])
    return EXIT_NUMERIC if n_gap and cfg.system is System.POLAR_MODE else EXIT_OK


def cross_section_rows(cfg: RunConfig, grid: np.ndarray):
    sc = cfg.scenario
    rows, failed = [], 0
    for g in grid:
        g = float(g)
        try:
            if cfg.system is System.POLAR_MODE:
                cs = mode_polar.cross_section_mode(sc, g)
                th, s1, s2 = cs.theta_sc, cs.sigma_inv_k2, cs.sigma_pm2
            else:
                th = classical.scattering_angle_classical(sc, g)
                s1, s2 = (classical.rutherford_cross_section if cfg.system is System.CLASSICAL
                          else mode_temple.temple_cross_section)(sc, th)
            rows.append([g, th, math.degrees(th), s1, s2, ""])
        except NUMERIC_ERRORS as exc:
            failed += 1
            rows.append([g, math.nan, math.nan, math.nan, math.nan, type(exc).__name__])
    return rows, failed


def cmd_cross_section(cfg: RunConfig) -> int:
    default = GridSpec(0.0, 20.0, 81) if cfg.system is System.POLAR_MODE else GridSpec(0.2, 20.0, 81)
    rows, failed = cross_section_rows(cfg, (cfg.grid or default).values())
    param = "nu" if cfg.system is System.POLAR_MODE else "ks"
    header = [param, "theta_sc_rad", "theta_sc_deg", "sigma_inv_k2", "sigma_pm2", "error"]
    text = emit(cfg, header, rows, default_name="cross_section")
    if not cfg.out_path:
        sys.stdout.write(text)
    return EXIT_NUMERIC if failed else EXIT_OK


def convert_units(sc: Scenario, ks: float | None = None) -> dict:
    rep = {"energy_ev": sc.energy_ev, "z": sc.z, "k_per_pm": sc.k, "eta_s": sc.eta_s,
           "time_unit_s": sc.time_unit_s}
    if ks is not None:
        rep["ks"] = ks
        rep["s_pm"] = ks / sc.k
    return rep


def cmd_convert_units(cfg: RunConfig) -> int:
    rep = convert_units(cfg.scenario, cfg.ks)
    if cfg.format is Format.JSON:
        print(json.dumps({k: _json_value(v) for k, v in rep.items()}, indent=1))
    else:
        for key, v in rep.items():
            print(f"{key} = {fmt(v)}")
    return EXIT_OK


def cmd_specfun_selftest(cfg: RunConfig) -> int:
    from . import selftest
    ok = selftest.run(print_fn=print)
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_figure(cfg: RunConfig) -> int:
    from . import figures
    out = Path(cfg.out_path or f"fig{cfg.figure}")
    failed = figures.write_figure(cfg.figure, out, cfg.format)
    print(f"figure {cfg.figure} written to {out}")
    return EXIT_NUMERIC if failed else EXIT_OK


HANDLERS = {
    Command.SCATTERING_ANGLE: cmd_scattering_angle,
    Command.TRAJECTORY: cmd_trajectory,
    Command.CROSS_SECTION: cmd_cross_section,
    Command.FIGURE: cmd_figure,
    Command.SPECFUN_SELFTEST: cmd_specfun_selftest,
    Command.CONVERT_UNITS: cmd_convert_units,
}


def run(cfg: RunConfig) -> int:
    """Execute one configured command and return its exit status."""
    try:
        cfg.validate()
        return HANDLERS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NUMERIC_ERRORS as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


# ----------------------------------------------------------------- arguments
class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: config error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


CONFIG_KEYS = {"command", "system", "energy_ev", "z", "nu", "ks", "grid_min", "grid_max",
               "grid_count", "spacing", "out_path", "format", "figure"}


def read_config_file(path: str) -> dict:
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{n}: unknown key {key!r}")
        out[key] = val
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coulomb-traj", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="key=value file mirroring the flags")
    sub = p.add_subparsers(dest="command")

    def common(sp, system=True, param=True, grid=False):
        if system:
            sp.add_argument("--system", choices=[s.value for s in System])
        sp.add_argument("--energy-ev", type=float)
        sp.add_argument("--z", type=int)
        if param:
            sp.add_argument("--nu", type=float)
            sp.add_argument("--ks", type=float)
        if grid:
            sp.add_argument("--grid-min", type=float)
            sp.add_argument("--grid-max", type=float)
            sp.add_argument("--grid-count", type=int)
            sp.add_argument("--spacing", choices=[s.value for s in Spacing])
        sp.add_argument("--out", dest="out_path")
        sp.add_argument("--format", choices=[f.value for f in Format])

    common(sub.add_parser(Command.SCATTERING_ANGLE.value, help="scattering angle"))
    common(sub.add_parser(Command.TRAJECTORY.value, help="trajectory points"), grid=True)
    common(sub.add_parser(Command.CROSS_SECTION.value, help="cross section over a ks or nu grid"),
           param=False, grid=True)
    fig = sub.add_parser(Command.FIGURE.value, help="figure data (1..5)")
    fig.add_argument("figure", type=int, choices=[1, 2, 3, 4, 5])
    fig.add_argument("--out", dest="out_path")
    fig.add_argument("--format", choices=[f.value for f in Format])
    sub.add_parser(Command.SPECFUN_SELFTEST.value, help="special-function self test")
    cu = sub.add_parser(Command.CONVERT_UNITS.value, help="k, eta_s, s(ks), time unit")
    common(cu, system=False)
    return p


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    vals = read_config_file(args.config) if args.config else {}
    for key, v in vars(args).items():
        if key != "config" and v is not None:
            vals[key] = v
    if "command" not in vals:
        raise ConfigError("no command given")
    try:
        command = Command(vals["command"])
        grid = None
        if any(k in vals for k in ("grid_min", "grid_max", "grid_count")):
            if not all(k in vals for k in ("grid_min", "grid_max", "grid_count")):
                raise ConfigError("grid needs grid_min, grid_max and grid_count")
            grid = GridSpec(float(vals["grid_min"]), float(vals["grid_max"]), int(vals["grid_count"]),
                            Spacing(vals.get("spacing", "linear")))
        return RunConfig(
            command=command,
            system=System(vals.get("system", "classical")),
            energy_ev=float(vals.get("energy_ev", 20.0)),
            z=int(vals.get("z", 1)),
            nu=None if vals.get("nu") is None else float(vals["nu"]),
            ks=None if vals.get("ks") is None else float(vals["ks"]),
            grid=grid,
            out_path=vals.get("out_path"),
            format=Format(vals.get("format", "csv")),
            figure=None if vals.get("figure") is None else int(vals["figure"]),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    raise SystemExit(main())
