"""Command-line driver: exact/numeric solution dumps, comparisons, reports.

One JSON scenario per run (schema in the README); subcommands `exact`,
`simulate`, `compare`, `blowup`, `grh` and `batch`.  CSV output carries a
header row and 17 significant digits so runs are byte-reproducible.
Exit codes: 0 ok, 2 configuration error, 3 numerical abort.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from . import grh
from .burgers import blowup
from .core import BlowupError, ModelParams, RiemannData, SmoothProfile
from .droplet import (
    DeltaShockSolution,
    NumericDeltaShockSolution,
    VacuumSolution,
    solve,
)
from .fv import FieldState, Grid1D, SolverAbort, advance, reconstruct_velocity
from .svgplot import line_plot
from .validation import ErrorReport, compare, first_crossing_time
from .grh import GrhMonitorError

__all__ = ["main", "ConfigError"]


class ConfigError(Exception):
    """The scenario file is missing, malformed, or inconsistent."""


def _fmt(v: float) -> str:
    return f"{float(v):.17g}"


def write_csv(path: str, header: Sequence[str], columns: Sequence[np.ndarray]) -> None:
    rows = len(columns[0])
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(rows):
            fh.write(",".join(_fmt(col[i]) for col in columns) + "\n")


def _load_config(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    return cfg, raw


def _require(cfg: dict, key: str, where: str = "scenario"):
    if key not in cfg:
        raise ConfigError(f"{where} is missing required key {key!r}")
    return cfg[key]


def _params_from(cfg: dict) -> ModelParams:
    p = _require(cfg, "params")
    try:
        return ModelParams(mu=float(_require(p, "mu", "params")), ua=float(_require(p, "ua", "params")))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad params block: {exc}") from exc


def _riemann_from(cfg: dict) -> RiemannData:
    if "riemann" not in cfg:
        raise ConfigError("scenario needs a 'riemann' block (smooth profiles go through `blowup`)")
    r = cfg["riemann"]
    try:
        return RiemannData(
            alpha_l=float(_require(r, "alpha_l", "riemann")),
            u_l=float(_require(r, "u_l", "riemann")),
            alpha_r=float(_require(r, "alpha_r", "riemann")),
            u_r=float(_require(r, "u_r", "riemann")),
            omega0=float(r.get("omega0", 0.0)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad riemann block: {exc}") from exc


@dataclass
class Scenario:
    name: str
    params: ModelParams
    data: Optional[RiemannData]
    domain: tuple
    n_cells: int
    t_snapshots: List[float]
    cfl: float
    fixed_dt: Optional[float]
    outputs: dict
    exclusion_half_width: float
    raw: str
    cfg: dict


def _scenario_from(cfg: dict, raw: str, args) -> Scenario:
    name = str(cfg.get("name", "scenario"))
    params = _params_from(cfg)
    data = _riemann_from(cfg) if "riemann" in cfg else None
    domain = cfg.get("domain", [-1.0, 2.0])
    if not (isinstance(domain, (list, tuple)) and len(domain) == 2 and domain[1] > domain[0]):
        raise ConfigError(f"domain must be [x_min, x_max] with x_min < x_max, got {domain!r}")
    n_cells = int(cfg.get("n_cells", 3000))
    if getattr(args, "cells", None):
        n_cells = int(args.cells)
    if n_cells < 16:
        raise ConfigError(f"n_cells must be at least 16, got {n_cells}")
    snaps = cfg.get("t_snapshots", [])
    if not isinstance(snaps, list) or len(snaps) == 0:
        raise ConfigError("t_snapshots must be a nonempty list of times")
    snaps = [float(t) for t in snaps]
    if any(t < 0 for t in snaps) or any(b <= a for a, b in zip(snaps, snaps[1:])):
        raise ConfigError("t_snapshots must be nonnegative and strictly increasing")
    cfl = float(cfg.get("cfl", 0.15))
    fixed_dt = cfg.get("fixed_dt")
    if getattr(args, "fixed_dt", None) is not None:
        fixed_dt = args.fixed_dt
    fixed_dt = None if fixed_dt is None else float(fixed_dt)
    outputs = {"csv": True, "svg": False, "report": True}
    outputs.update(cfg.get("outputs", {}))
    excl = float(cfg.get("exclusion_half_width", 0.05))
    return Scenario(
        name=name,
        params=params,
        data=data,
        domain=(float(domain[0]), float(domain[1])),
        n_cells=n_cells,
        t_snapshots=snaps,
        cfl=cfl,
        fixed_dt=fixed_dt,
        outputs=outputs,
        exclusion_half_width=excl,
        raw=raw,
        cfg=cfg,
    )


def _solution_kind(solution) -> str:
    if isinstance(solution, (DeltaShockSolution, NumericDeltaShockSolution)):
        return "delta-shock"
    if isinstance(solution, VacuumSolution):
        return "vacuum"
    return "contact"


def _exact_snapshot_row(solution, t: float) -> dict:
    kind = _solution_kind(solution)
    if kind == "delta-shock":
        gl, gr = solution.entropy_gaps(t)
        return {
            "t": t,
            "xi": float(solution.position(t)),
            "sigma": float(solution.speed(t)),
            "omega": float(solution.weight(t)),
            "gap_left": float(gl),
            "gap_right": float(gr),
        }
    if kind == "vacuum":
        x1, x2 = solution.bounds(t)
        return {"t": t, "X1": float(x1), "X2": float(x2)}
    return {"t": t, "xi": float(solution.position(t)), "sigma": float(solution.speed(t))}


def _write_report(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _out_dir(args) -> str:
    out = getattr(args, "out", ".") or "."
    os.makedirs(out, exist_ok=True)
    return out


def cmd_exact(args, cfg=None, raw=None, out=None) -> int:
    if cfg is None:
        cfg, raw = _load_config(args.config)
    sc = _scenario_from(cfg, raw, args)
    if sc.data is None:
        raise ConfigError("`exact` needs Riemann data; smooth profiles go through `blowup`")
    out = out or _out_dir(args)
    solution = solve(sc.data, sc.params)
    x = Grid1D(sc.domain[0], sc.domain[1], sc.n_cells).centers()
    rows = []
    for t in sc.t_snapshots:
        alpha, u = solution.regular_fields(x, t)
        if sc.outputs["csv"]:
            write_csv(os.path.join(out, f"{sc.name}_exact_t{t:g}.csv"), ("x", "alpha", "u"), (x, alpha, u))
        rows.append(_exact_snapshot_row(solution, t))
    if sc.outputs["report"]:
        payload = {
            "scenario": sc.raw,
            "solution_kind": _solution_kind(solution),
            "snapshots": rows,
        }
        warning = getattr(solution, "warning", None)
        if warning:
            payload["warning"] = warning
        _write_report(os.path.join(out, f"{sc.name}_exact_report.json"), payload)
    return 0


def _run_snapshots(sc: Scenario):
    grid = Grid1D(sc.domain[0], sc.domain[1], sc.n_cells)
    state = FieldState.from_riemann(grid, sc.data)
    for t in sc.t_snapshots:
        state = advance(state, sc.params, t, cfl=sc.cfl, fixed_dt=sc.fixed_dt)
        yield t, state


def cmd_simulate(args, cfg=None, raw=None, out=None) -> int:
    if cfg is None:
        cfg, raw = _load_config(args.config)
    sc = _scenario_from(cfg, raw, args)
    if sc.data is None:
        raise ConfigError("`simulate` needs Riemann data")
    out = out or _out_dir(args)
    files = []
    for t, state in _run_snapshots(sc):
        u = reconstruct_velocity(state, sc.params)
        fname = f"{sc.name}_num_t{t:g}.csv"
        if sc.outputs["csv"]:
            write_csv(os.path.join(out, fname), ("x", "alpha", "u"), (state.grid.centers(), state.alpha, u))
        files.append({"t": t, "file": fname})
    if sc.outputs["report"]:
        _write_report(
            os.path.join(out, f"{sc.name}_simulate_report.json"),
            {"scenario": sc.raw, "snapshots": files},
        )
    return 0


def cmd_compare(args, cfg=None, raw=None, out=None) -> int:
    if cfg is None:
        cfg, raw = _load_config(args.config)
    sc = _scenario_from(cfg, raw, args)
    if sc.data is None:
        raise ConfigError("`compare` needs Riemann data")
    out = out or _out_dir(args)
    solution = solve(sc.data, sc.params)
    rescale = bool(getattr(args, "rescale_alpha", False))
    reports: List[ErrorReport] = []
    exact_rows = []
    for t, state in _run_snapshots(sc):
        x = state.grid.centers()
        u_num = reconstruct_velocity(state, sc.params)
        alpha_ex, u_ex = solution.regular_fields(x, t)
        if sc.outputs["csv"]:
            write_csv(os.path.join(out, f"{sc.name}_num_t{t:g}.csv"), ("x", "alpha", "u"), (x, state.alpha, u_num))
            write_csv(os.path.join(out, f"{sc.name}_exact_t{t:g}.csv"), ("x", "alpha", "u"), (x, alpha_ex, u_ex))
        reports.append(compare(state, solution, sc.exclusion_half_width, label=f"{sc.name}_t{t:g}"))
        exact_rows.append(_exact_snapshot_row(solution, t))
        if sc.outputs["svg"]:
            scale = 100.0 if rescale else 1.0
            suffix = " (x100)" if rescale else ""
            line_plot(
                os.path.join(out, f"{sc.name}_overlay_alpha_t{t:g}.svg"),
                x,
                [("exact", alpha_ex * scale), ("numeric", state.alpha * scale)],
                title=f"volume fraction{suffix} at t={t:g}",
                ylabel=f"alpha{suffix}",
            )
            line_plot(
                os.path.join(out, f"{sc.name}_overlay_u_t{t:g}.svg"),
                x,
                [("exact", u_ex), ("numeric", u_num)],
                title=f"velocity at t={t:g}",
                ylabel="u",
            )
    with open(os.path.join(out, f"{sc.name}_errors.csv"), "w", encoding="utf-8") as fh:
        fh.write(ErrorReport.CSV_HEADER + "\n")
        for rep in reports:
            fh.write(rep.csv_row() + "\n")
    if sc.outputs["report"]:
        _write_report(
            os.path.join(out, f"{sc.name}_compare_report.json"),
            {
                "scenario": sc.raw,
                "solution_kind": _solution_kind(solution),
                "snapshots": exact_rows,
                "errors": [rep.__dict__ for rep in reports],
            },
        )
    return 0


def _profile_from(cfg: dict) -> SmoothProfile:
    p = _require(cfg, "profile")
    kind = _require(p, "kind", "profile")
    center = float(p.get("center", 0.0))
    offset = float(p.get("offset", 0.0))
    alpha0 = float(p.get("alpha0", 1.0))
    domain = cfg.get("domain", [-3.0, 3.0])
    count = int(cfg.get("sample_count", 2001))
    if kind == "tanh":
        amp = float(_require(p, "amplitude", "profile"))
        width = float(p.get("width", 1.0))
        if width <= 0:
            raise ConfigError("profile width must be positive")
        u0 = lambda x: offset + amp * np.tanh((np.asarray(x) - center) / width)
        u0p = lambda x: amp / width / np.cosh((np.asarray(x) - center) / width) ** 2
    elif kind == "cubic":
        c1 = float(_require(p, "c1", "profile"))
        c3 = float(p.get("c3", 0.0))
        u0 = lambda x: offset + c1 * (np.asarray(x) - center) + c3 * (np.asarray(x) - center) ** 3
        u0p = lambda x: c1 + 3.0 * c3 * (np.asarray(x) - center) ** 2
    else:
        raise ConfigError(f"unknown profile kind {kind!r} (expected 'tanh' or 'cubic')")
    try:
        return SmoothProfile(
            u0=u0,
            u0_prime=u0p,
            alpha0=lambda x: alpha0 + 0.0 * np.asarray(x, dtype=float),
            domain=(float(domain[0]), float(domain[1])),
            sample_count=count,
        )
    except ValueError as exc:
        raise ConfigError(f"bad profile: {exc}") from exc


def cmd_blowup(args, cfg=None, raw=None, out=None) -> int:
    if cfg is None:
        cfg, raw = _load_config(args.config)
    params = _params_from(cfg)
    profile = _profile_from(cfg)
    out = out or _out_dir(args)
    t_max = float(cfg.get("t_max", 50.0))
    n_feet = int(cfg.get("n_feet", 4001))
    report = blowup(profile, params)
    oracle = first_crossing_time(profile, params, t_max, n_feet)
    name = str(cfg.get("name", "profile"))
    _write_report(
        os.path.join(out, f"{name}_blowup_report.json"),
        {
            "scenario": raw,
            "blows_up": report.blows_up,
            "t_star_formula": report.t_star,
            "x0_star": report.x0_star,
            "t_star_oracle": oracle,
        },
    )
    return 0


def cmd_grh(args, cfg=None, raw=None, out=None) -> int:
    if cfg is None:
        cfg, raw = _load_config(args.config)
    params = _params_from(cfg)
    data = _riemann_from(cfg)
    out = out or _out_dir(args)
    name = str(cfg.get("name", "grh"))
    t_end = float(cfg.get("t_end", 1.0))
    dt = float(cfg.get("dt", 1e-4))
    sigma0 = cfg.get("sigma0")
    sigma0 = None if sigma0 is None else float(sigma0)
    if t_end <= 0 or dt <= 0:
        raise ConfigError("t_end and dt must be positive")
    states = grh.LimitStates.from_riemann(data, params)
    try:
        if sigma0 is None and data.omega0 > 0.0:
            from .droplet import initial_shock_speed

            sigma0 = initial_shock_speed(data.alpha_l, data.u_l, data.alpha_r, data.u_r)
        traj = grh.integrate(
            grh.GrhState(mass=data.omega0, momentum=data.omega0 * (sigma0 if sigma0 else 0.0)),
            sigma0,
            t_end,
            dt,
            states,
            params,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    u_l = np.asarray(states.u_l(traj.t), dtype=float)
    u_r = np.asarray(states.u_r(traj.t), dtype=float)
    entropy_ok = ((u_r < traj.speed) & (traj.speed < u_l)).astype(float)
    write_csv(
        os.path.join(out, f"{name}_grh.csv"),
        ("t", "omega", "sigma", "u_l", "u_r", "entropy_ok"),
        (traj.t, traj.mass, traj.speed, u_l, u_r, entropy_ok),
    )
    _write_report(
        os.path.join(out, f"{name}_grh_report.json"),
        {
            "scenario": raw,
            "final": {
                "t": float(traj.t[-1]),
                "omega": float(traj.mass[-1]),
                "sigma": float(traj.speed[-1]),
                "xi": float(traj.position[-1]),
            },
        },
    )
    return 0


_COMMANDS = {
    "exact": cmd_exact,
    "simulate": cmd_simulate,
    "compare": cmd_compare,
    "blowup": cmd_blowup,
    "grh": cmd_grh,
}


def cmd_batch(args) -> int:
    cfg, _ = _load_config(args.config)
    runs = cfg.get("runs")
    if not isinstance(runs, list) or not runs:
        raise ConfigError("batch config needs a nonempty 'runs' list")
    base = _out_dir(args)
    for k, run in enumerate(runs):
        command = run.get("command")
        if command not in _COMMANDS:
            raise ConfigError(f"runs[{k}] has unknown command {command!r}")
        scenario = run.get("scenario")
        if not isinstance(scenario, dict):
            raise ConfigError(f"runs[{k}] needs an inline 'scenario' object")
        sub_raw = json.dumps(scenario, indent=2)
        sub_out = os.path.join(base, str(scenario.get("name", f"run{k}")))
        os.makedirs(sub_out, exist_ok=True)
        _COMMANDS[command](args, cfg=scenario, raw=sub_raw, out=sub_out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dropshock",
        description="Exact and finite-volume Riemann solutions for the droplet flow model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, cells=True, fixed_dt=False, rescale=False):
        p.add_argument("--config", required=True, help="scenario JSON file")
        p.add_argument("--out", default=".", help="output directory")
        if cells:
            p.add_argument("--cells", type=int, default=None, help="override n_cells")
        if fixed_dt:
            p.add_argument("--fixed-dt", dest="fixed_dt", type=float, default=None,
                           help="fixed time step (replaces the CFL-adaptive step)")
        if rescale:
            p.add_argument("--rescale-alpha", dest="rescale_alpha", action="store_true",
                           help="multiply plotted volume fraction by 100")

    p = sub.add_parser("exact", help="dump the exact solution at the snapshot times")
    add_common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("simulate", help="run the finite-volume solver")
    add_common(p, fixed_dt=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="run the solver and compare with the exact solution")
    add_common(p, fixed_dt=True, rescale=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("blowup", help="blowup prediction for a smooth profile")
    add_common(p, cells=False)
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("grh", help="integrate the point-mass balance ODEs")
    add_common(p, cells=False)
    p.set_defaults(func=cmd_grh)

    p = sub.add_parser("batch", help="run a list of scenarios")
    add_common(p, cells=False)
    p.set_defaults(func=cmd_batch)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (SolverAbort, GrhMonitorError, BlowupError) as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
