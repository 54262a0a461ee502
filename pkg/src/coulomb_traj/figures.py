"""Data behind the five figures, written as CSV (or JSON) plus a gnuplot stub."""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from . import classical, mode_polar, mode_temple
from .classical import Branch, Scenario

FIG_PRESETS = {
    4: dict(energy_ev=20.0, z=1, nu=0.629, ks=1.2, theta_deg=-69.0),
    5: dict(energy_ev=20.0, z=1, nu=1.2, ks=1.79, theta_deg=-49.5),
}
RHO_MAX = 30.0


def _writer(fmt):
    from .cli import Format, write_csv, write_json
    return write_json if fmt is Format.JSON else write_csv


def _ext(fmt) -> str:
    return fmt.value


def figure1(out: Path, fmt) -> int:
    th = np.linspace(0.0, math.pi, 181)[1:-1]
    rows = [[t, mode_polar.dnu_w_theta(t, 0.5), mode_polar.dnu_w_theta(t, 1.2), t] for t in th]
    _writer(fmt)(out / f"fig1.{_ext(fmt)}", ["theta_rad", "dnu_w_nu0.5", "dnu_w_nu1.2", "theta_ref"], rows,
                 ["d_nu W_theta against theta for nu = 0.5 and 1.2, with the line theta"])
    _stub(out, "fig1", [(1, 2, "nu=0.5"), (1, 3, "nu=1.2"), (1, 4, "theta")])
    return 0


def figure2(out: Path, fmt) -> int:
    sc = Scenario(20.0, 1)
    rows, failed = [], 0
    for ks in np.linspace(0.5, 6.0, 45):
        cl = classical.scattering_angle_classical(sc, ks)
        try:
            m = mode_polar.scattering_angle_mode(sc, ks - 0.5).signed
        except (ArithmeticError, ValueError):
            m, failed = math.nan, failed + 1
        rows.append([ks, math.degrees(cl), ks, math.degrees(m)])
    _writer(fmt)(out / f"fig2.{_ext(fmt)}",
                 ["ks", "theta_sc_classical_deg", "nu_plus_half", "theta_sc_mode_deg"], rows,
                 ["E=20 eV Z=1; classical (= Temple) angle against ks, mode angle against nu+1/2",
                  "reproduction target: mode within 2 deg of classical"])
    _stub(out, "fig2", [(1, 2, "classical"), (3, 4, "mode")])
    return failed


def figure3(out: Path, fmt) -> int:
    sc = Scenario(2000.0, 6)
    lim = mode_polar.limiting_angle(sc)
    rows, failed = [], 0
    nus = np.concatenate([np.linspace(0.0, 1.0, 21), np.linspace(1.25, 20.0, 40)])
    for nu in nus:
        try:
            cs = mode_polar.cross_section_mode(sc, float(nu))
        except (ArithmeticError, ValueError):
            failed += 1
            continue
        ruth = classical.rutherford_cross_section(sc, cs.theta_sc)[0]
        rows.append([nu, math.degrees(cs.theta_sc), cs.sigma_inv_k2, ruth])
    w = _writer(fmt)
    w(out / f"fig3_mode.{_ext(fmt)}", ["nu", "theta_sc_deg", "sigma_mode_inv_k2", "sigma_rutherford_inv_k2"],
      rows, ["E=2000 eV Z=6; mode cross section ends at the limiting angle "
             f"{math.degrees(lim.signed):.6g} deg", "reproduction target: within 5% of Rutherford"])
    th = np.radians(np.linspace(-5.0, -179.0, 120))
    w(out / f"fig3_classical.{_ext(fmt)}", ["theta_sc_deg", "sigma_rutherford_inv_k2", "sigma_pm2"],
      [[math.degrees(t), *classical.rutherford_cross_section(sc, t)] for t in th],
      ["E=2000 eV Z=6; Rutherford (classical and Temple) cross section"])
    _stub(out, "fig3_mode", [(2, 3, "mode"), (2, 4, "Rutherford")], logy=True)
    return failed


def _arc(rows) -> list[list]:
    out, prev, s = [], None, 0.0
    for r in rows:
        if r[-1]:
            continue
        x, y = r[2], r[3]
        if prev is not None:
            s += math.hypot(x - prev[0], y - prev[1])
        prev = (x, y)
        out.append([r[6], s, r[4]])
    return out


def figure_dynamics(n: int, out: Path, fmt) -> int:
    from .cli import RunConfig, Command, System, trajectory_rows, TRAJECTORY_COLUMNS
    p = FIG_PRESETS[n]
    sc = Scenario(p["energy_ev"], p["z"])
    grid = np.concatenate([np.geomspace(1e-3, 1.0, 40), np.linspace(1.0, RHO_MAX, 59)[1:]])
    note = (f"E={p['energy_ev']:g} eV Z={p['z']} nu={p['nu']} ks={p['ks']} "
            f"s={p['ks'] / sc.k:.1f} pm; expected angle {p['theta_deg']} deg (tolerance 1 deg)")
    w = _writer(fmt)
    failed = 0
    arcs = []
    for system, kw in ((System.POLAR_MODE, {"nu": p["nu"]}), (System.TEMPLE_MODE, {"ks": p["ks"]}),
                       (System.CLASSICAL, {"ks": p["ks"]})):
        cfg = RunConfig(Command.TRAJECTORY, system, p["energy_ev"], p["z"], **kw)
        try:
            rows = trajectory_rows(cfg, grid)
        except (ArithmeticError, ValueError) as exc:
            failed += 1
            rows = []
            note_s = f"failed: {type(exc).__name__}"
        else:
            note_s = f"{sum(1 for r in rows if r[-1])} gap rows"
        name = system.value.replace("-", "_")
        w(out / f"fig{n}_{name}.{_ext(fmt)}", TRAJECTORY_COLUMNS, rows, [note, note_s])
        arcs += [[system.value, *a] for a in _arc(rows)]
    w(out / f"fig{n}_tau_vs_arc.{_ext(fmt)}", ["series", "branch", "arc_pm", "tau"], arcs, [note])
    _stub(out, f"fig{n}_polar_mode", [(3, 4, "polar mode")])
    return failed


def _stub(out: Path, stem: str, series, logy: bool = False) -> None:
    lines = ["# plot stub for gnuplot; columns are 1-based", "set datafile separator ','",
             "set datafile commentschars '#'", "set key autotitle columnhead"]
    if logy:
        lines.append("set logscale y")
    plots = ", ".join(f"'{stem}.csv' using {x}:{y} title '{t}'" for x, y, t in series)
    lines.append(f"plot {plots}")
    (out / f"{stem}.gp").write_text("\n".join(lines) + "\n")


def write_figure(n: int, out: Path, fmt=None) -> int:
    """Write figure ``n`` data into directory ``out``; returns the number of failed series."""
    from .cli import Format
    fmt = fmt or Format.CSV
    out.mkdir(parents=True, exist_ok=True)
    if n == 1:
        return figure1(out, fmt)
    if n == 2:
        return figure2(out, fmt)
    if n == 3:
        return figure3(out, fmt)
    if n in FIG_PRESETS:
        return figure_dynamics(n, out, fmt)
    raise ValueError(f"unknown figure {n}")
