"""Command-line interface.

Every subcommand reads one TOML config, writes fixed-name CSV tables into the
output directory, and drops a ``manifest.json`` recording the resolved config,
its hash, package versions, tolerances, output names, and summary metrics.
Re-feeding a manifest as ``--config`` reproduces the run.

Exit codes: 0 success, 1 numerical contract violation (failed quadrature,
invariant drift, non-convergent solve), 2 usage or config error.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import platform
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np
import scipy

from . import __version__
from .config import (ConfigError, DriveConfig, RunConfig, parse_config,
                     resolved_dict)
from .couplings import (CouplingError, CouplingSet, couplings_by_quadrature,
                        fourier_component, plasma_closed_form, synthetic_drive,
                        wall_closed_form)
from .evolution import (DriveSpec, EvolutionError, integrate_master,
                        integrate_multimode, rwa_solve)
from .experiments import (ExperimentError, SweepSpec, detuning_scan, estimate,
                          compare_formulations, pulse_train)
from .modes import Mode, ModeSolverError, eval_mode, orthonormality_check, solve_modes
from .profiles import PulseTrainProfile, SinusoidalProfile, TableProfile
from .scenario import PlasmaScenario, ScenarioError, WallScenario

__all__ = ["main"]

SUBCOMMANDS = ("modes", "couplings", "evolve", "rwa", "sweep", "compare",
               "estimate", "pulse-train")

# frozen CSV headers; consumers (plotting, analysis) key on these names
HEADERS = {
    "modes": "mode_index,k,omega0,k_perp,xi,r_k,norm_residual",
    "modes_profile": "mode_index,x,f",
    "couplings": "t,delta_omega,re_g,im_g,provenance",
    "evolve": "t,ReA,ImA,ReB,ImB,Ngamma,r,K,residual",
    "evolve_multimode": "t,mode_index,Ngamma,residual",
    "rwa": "t,Ngamma_rwa,chi,branch",
    "sweep": ("variable,value,Omega,Delta,chi,peak_Omega,Ngamma_final,"
              "omega0,mean_delta_omega"),
    "compare": "t,Ngamma_std,Ngamma_inst",
    "compare_avg": "t,avg_std,avg_inst,rel_dev",
    "estimate": "chi_over_omega0,enhancement,n_pulse_required,q_min",
    "pulse_train": "pulse,t,Ngamma,Ngamma_rwa,r",
}


# ---------------------------------------------------------------------------
# small output helpers

def _formatter(precision: str | int) -> Callable[[float], str]:
    if precision == "full":
        return lambda x: repr(float(x))
    digits = int(precision)
    return lambda x: format(float(x), f".{digits}g")


def _write_csv(path: Path, header: str, rows: Sequence[Sequence[Any]],
               fmt: Callable[[float], str]) -> None:
    lines = [header]
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, str):
                cells.append(v)
            elif isinstance(v, (bool, np.bool_)):
                cells.append(str(bool(v)))
            elif isinstance(v, (int, np.integer)):
                cells.append(str(int(v)))
            else:
                cells.append(fmt(v))
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _config_hash(resolved: dict) -> str:
    """Hash of the resolved config with the output directory excluded,
    so reruns into a different directory hash identically."""
    doc = {k: dict(v) for k, v in resolved.items()}
    doc.get("output", {}).pop("directory", None)
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _jsonable(value: Any) -> Any:
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _write_manifest(outdir: Path, subcommand: str, cfg: RunConfig,
                    outputs: list[str], summary: dict) -> None:
    resolved = resolved_dict(cfg)
    doc = {
        "subcommand": subcommand,
        "config": resolved,
        "configHash": _config_hash(resolved),
        "versions": {
            "dcesim": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
        "tolerances": {
            "tolQuad": cfg.numerics.tol_quad,
            "tolOde": cfg.numerics.tol_ode,
            "invariantTol": cfg.numerics.invariant_tol,
        },
        "outputs": outputs,
        "summary": _jsonable(summary),
    }
    (outdir / "manifest.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n",
                                          encoding="utf-8")


# ---------------------------------------------------------------------------
# config -> physics objects

@dataclasses.dataclass
class _Run:
    """Everything a subcommand needs, resolved once from the config."""
    cfg: RunConfig
    scenario: WallScenario | PlasmaScenario | None   # None for synthetic
    modes: tuple[Mode, ...] | None
    closed: CouplingSet          # closed-form (material) or synthetic coefficients
    drive: DriveSpec             # Omega resolved, g_omega filled
    omega0: float
    mean_delta_omega: float
    g_omega: complex

    @property
    def Omega(self) -> float:
        return self.drive.Omega


def _build_profile(dr: DriveConfig, Omega: float, baseline: float):
    if dr.profile == "sinusoidal":
        return SinusoidalProfile(dr.pmax, Omega, baseline=baseline)
    if dr.profile == "pulseTrain":
        return PulseTrainProfile(dr.pmax, 2.0 * np.pi / Omega, dr.width,
                                 baseline=baseline)
    return TableProfile(dr.times, dr.values)


def _build_scenario(cfg: RunConfig, Omega: float) -> WallScenario | PlasmaScenario:
    sc, dr = cfg.scenario, cfg.drive
    if sc.type == "wall":
        prof = _build_profile(dr, Omega, dr.baseline)
        return WallScenario(L=sc.length, m2=sc.mass2, delta_profile=prof,
                            eps0=sc.eps0, eps1=sc.eps1, k_perp=cfg.modes.k_perp,
                            delta_max=sc.delta_max)
    if dr.target == "eps1":
        if dr.baseline != 0.0:
            raise ConfigError("drive.baseline: for the eps1 target the static "
                              "permittivity comes from scenario.eps1")
        prof = _build_profile(dr, Omega, sc.eps1)
        return PlasmaScenario(L=sc.length, slab_left=sc.slab_left,
                              slab_thickness=sc.slab_thickness,
                              mp2_profile=_zero_profile(), eps1_profile=prof,
                              eps0=sc.eps0, k_perp=cfg.modes.k_perp)
    prof = _build_profile(dr, Omega, dr.baseline)
    return PlasmaScenario(L=sc.length, slab_left=sc.slab_left,
                          slab_thickness=sc.slab_thickness, mp2_profile=prof,
                          eps1_profile=sc.eps1, eps0=sc.eps0,
                          k_perp=cfg.modes.k_perp)


def _zero_profile():
    from .profiles import ConstantProfile
    return ConstantProfile(0.0)


def _closed_couplings(modes: tuple[Mode, ...],
                      scenario: WallScenario | PlasmaScenario) -> CouplingSet:
    if isinstance(scenario, WallScenario):
        return wall_closed_form(modes, scenario)
    return plasma_closed_form(modes, scenario)


def _resolve(cfg: RunConfig) -> _Run:
    dr, nm = cfg.drive, cfg.numerics
    ev_mode = cfg.evolve.mode

    if cfg.scenario.type == "synthetic":
        if ev_mode != 0:
            raise ConfigError("evolve.mode: a synthetic drive has a single mode")
        omega0 = cfg.scenario.omega0
        mean_dw = cfg.scenario.mean_delta_omega
        if dr.Omega is not None:
            Omega = dr.Omega
        else:
            Omega = 2.0 * (omega0 + mean_dw + dr.Delta)
        closed = synthetic_drive(omega0, mean_dw, Omega)
        fc = fourier_component(closed, Omega, quad_rtol=nm.tol_quad)
        drive = DriveSpec(omega0=omega0, mean_delta_omega=mean_dw,
                          g_omega=fc.g_omega, Omega=Omega, n_pulse=dr.n_pulse)
        return _Run(cfg=cfg, scenario=None, modes=None, closed=closed,
                    drive=drive, omega0=omega0, mean_delta_omega=mean_dw,
                    g_omega=fc.g_omega)

    # material scenario: the t = 0 cavity (and hence the mode set) does not
    # depend on the drive frequency, so modes are solved once
    Omega = dr.Omega if dr.Omega is not None else None
    scenario = _build_scenario(cfg, Omega if Omega is not None else 1.0)
    modes = solve_modes(scenario, cfg.modes.n_modes, quad_rtol=nm.tol_quad)
    if ev_mode >= len(modes):
        raise ConfigError(f"evolve.mode: only {len(modes)} modes solved "
                          f"(modes.nModes), got index {ev_mode}")
    omega0 = modes[ev_mode].omega0

    if Omega is None:
        # drive.Delta given: the resonance condition involves the drive-induced
        # mean frequency shift, which itself depends on Omega through the
        # profile; iterate Omega <- 2 (omega0 + <delta omega> + Delta)
        Omega = 2.0 * (omega0 + dr.Delta)
        for _ in range(32):
            scenario = _build_scenario(cfg, Omega)
            closed = _closed_couplings(modes, scenario)
            fc = fourier_component(closed, Omega, mode=ev_mode,
                                   quad_rtol=nm.tol_quad)
            target = 2.0 * (omega0 + fc.mean_delta_omega + dr.Delta)
            if abs(target - Omega) <= 1e-12 * abs(Omega):
                Omega = target
                break
            Omega = target
        else:
            raise ExperimentError(
                "drive.Delta: resonance iteration for the drive frequency did "
                "not converge in 32 steps")

    scenario = _build_scenario(cfg, Omega)
    closed = _closed_couplings(modes, scenario)
    fc = fourier_component(closed, Omega, mode=ev_mode, quad_rtol=nm.tol_quad)
    drive = DriveSpec(omega0=omega0, mean_delta_omega=fc.mean_delta_omega,
                      g_omega=fc.g_omega, Omega=Omega, n_pulse=dr.n_pulse)
    return _Run(cfg=cfg, scenario=scenario, modes=modes, closed=closed,
                drive=drive, omega0=omega0,
                mean_delta_omega=fc.mean_delta_omega, g_omega=fc.g_omega)


def _route_couplings(run: _Run, t_need: float) -> CouplingSet:
    """Coupling coefficients along the route picked in [couplings]."""
    cfg = run.cfg
    if run.scenario is None or cfg.couplings.route == "closed":
        return run.closed
    if isinstance(run.scenario, PlasmaScenario):
        # separable in space and time: exact for all t
        return couplings_by_quadrature(run.modes, run.scenario,
                                       quad_rtol=cfg.numerics.tol_quad)
    T = run.drive.period
    n_periods = max(1, int(np.ceil(t_need / T - 1e-9)))
    n_pts = n_periods * cfg.numerics.grid_per_period + 1
    times = np.linspace(0.0, n_periods * T, n_pts)
    return couplings_by_quadrature(run.modes, run.scenario, times=times,
                                   quad_rtol=cfg.numerics.tol_quad)


def _sample_times(run: _Run) -> np.ndarray:
    n = run.cfg.drive.n_pulse * run.cfg.numerics.samples_per_period
    return np.linspace(0.0, run.drive.t_final, n + 1)


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (outputs, summary)

def _require_material(cfg: RunConfig, what: str) -> None:
    if cfg.scenario.type == "synthetic":
        raise ConfigError(f"the {what} subcommand needs a wall or plasma scenario")


def _cmd_modes(cfg: RunConfig, outdir: Path, fmt, jobs: int):
    _require_material(cfg, "modes")
    run = _resolve(cfg)
    # mode_index is the 0-based position used by evolve.mode / couplings.pair
    rows = [(i, m.k, m.omega0, m.k_perp, m.xi, m.r_k, m.norm_residual)
            for i, m in enumerate(run.modes)]
    _write_csv(outdir / "modes.csv", HEADERS["modes"], rows, fmt)
    xs = np.linspace(0.0, run.scenario.L, cfg.modes.n_samples)
    prof_rows = []
    for i, m in enumerate(run.modes):
        fs = eval_mode(m, run.scenario, xs)
        prof_rows.extend((i, x, f) for x, f in zip(xs, fs))
    _write_csv(outdir / "modes_profile.csv", HEADERS["modes_profile"], prof_rows, fmt)
    ortho = orthonormality_check(run.modes, run.scenario,
                                 quad_rtol=cfg.numerics.tol_quad)
    summary = {
        "nModes": len(run.modes),
        "omega0": [m.omega0 for m in run.modes],
        "orthoResidual": float(np.max(np.abs(ortho))),
    }
    return ["modes.csv", "modes_profile.csv"], summary


def _cmd_couplings(cfg: RunConfig, outdir: Path, fmt, jobs: int):
    run = _resolve(cfg)
    a, b = cfg.couplings.pair
    n_modes = run.closed.n_modes
    if max(a, b) >= n_modes:
        raise ConfigError(f"couplings.pair: only {n_modes} modes available, "
                          f"got pair [{a}, {b}]")
    if a != b and cfg.couplings.route == "closed" and run.scenario is not None:
        raise ConfigError("couplings.route: the closed forms are diagonal-only; "
                          "set route = 'quadrature' for intermode pairs")
    c = _route_couplings(run, cfg.couplings.n_periods * run.drive.period)
    n_pts = cfg.couplings.n_periods * cfg.numerics.grid_per_period + 1
    ts = np.linspace(0.0, cfg.couplings.n_periods * run.drive.period, n_pts)
    rows = []
    for t in ts:
        g = c.g_at(a, b, t)
        rows.append((t, c.mu_at(a, b, t), g.real, g.imag, c.provenance))
    _write_csv(outdir / "couplings.csv", HEADERS["couplings"], rows, fmt)
    summary = {
        "provenance": c.provenance,
        "pair": [a, b],
        "Omega": run.Omega,
        "meanDeltaOmega": run.mean_delta_omega,
        "gOmega": run.g_omega,
    }
    return ["couplings.csv"], summary


def _cmd_evolve(cfg: RunConfig, outdir: Path, fmt, jobs: int):
    run = _resolve(cfg)
    c = _route_couplings(run, run.drive.t_final)
    traj = integrate_master(c, run.drive.t_final, mode=cfg.evolve.mode,
                            chunk=run.drive.period, rtol=cfg.numerics.tol_ode,
                            invariant_tol=cfg.numerics.invariant_tol)
    ts = _sample_times(run)
    rows = []
    max_residual = 0.0
    for s in traj.sample(ts):
        max_residual = max(max_residual, s.invariant_residual)
        rows.append((s.t, s.A.real, s.A.imag, s.B.real, s.B.imag,
                     s.n_gamma, s.r, s.K, s.invariant_residual))
    _write_csv(outdir / "evolve.csv", HEADERS["evolve"], rows, fmt)
    final = traj.final
    outputs = ["evolve.csv"]
    summary = {
        "mode": cfg.evolve.mode,
        "Omega": run.Omega,
        "NGammaFinal": final.n_gamma,
        "rFinal": final.r,
        "KFinal": final.K,
        "maxResidual": max_residual,
        "provenance": c.provenance,
    }
    if cfg.evolve.multimode:
        if c.n_modes > 1 and cfg.couplings.route == "closed" \
                and run.scenario is not None:
            raise ConfigError("couplings.route: the closed forms are "
                              "diagonal-only; set route = 'quadrature' for a "
                              "multimode evolution")
        mm = integrate_multimode(c, run.drive.t_final, n_samples=len(ts),
                                 rtol=cfg.numerics.tol_ode,
                                 invariant_tol=cfg.numerics.invariant_tol)
        n_gammas = mm.photon_numbers()
        mm_rows = []
        for i, t in enumerate(mm.times):
            res = mm.symplectic_residual(i)
            for mode_idx in range(c.n_modes):
                mm_rows.append((t, mode_idx, n_gammas[i, mode_idx], res))
        _write_csv(outdir / "evolve_multimode.csv", HEADERS["evolve_multimode"],
                   mm_rows, fmt)
        outputs.append("evolve_multimode.csv")
        summary["NGammaFinalPerMode"] = [float(x) for x in n_gammas[-1]]
        summary["maxSymplecticResidual"] = float(
            max(mm.symplectic_residual(i) for i in range(len(mm.times))))
    return outputs, summary


def _cmd_rwa(cfg: RunConfig, outdir: Path, fmt, jobs: int):
    run = _resolve(cfg)
    sol = rwa_solve(run.drive)
    ts = _sample_times(run)
    rows = [(t, sol.n_gamma(t), sol.chi, sol.branch) for t in ts]
    _write_csv(outdir / "rwa.csv", HEADERS["rwa"], rows, fmt)
    summary = {
        "chi": sol.chi,
        "chi2": sol.chi2,
        "branch": sol.branch,
        "Omega": run.Omega,
        "Delta": run.drive.Delta,
        "gOmega": run.g_omega,
        "NGammaFinal": float(sol.n_gamma(run.drive.t_final)),
    }
    return ["rwa.csv"], summary


_OBSERVABLE_COLUMN = {"NGammaFinal": "n_gamma_final", "chi": "chi",
                      "peakOmega": "peak_Omega"}


def _cmd_sweep(cfg: RunConfig, outdir: Path, fmt, jobs: int):
    sw = cfg.sweep
    for key in ("variable", "lo", "hi", "nPoints"):
        attr = {"variable": "variable", "lo": "lo", "hi": "hi",
                "nPoints": "n_points"}[key]
        if getattr(sw, attr) is None:
            raise ConfigError(f"missing required key sweep.{key}")
    run = _resolve(cfg)
    spec = SweepSpec(
        variable=sw.variable, lo=sw.lo, hi=sw.hi, n_points=sw.n_points,
        observable=sw.observable,
        scenario=run.scenario if isinstance(run.scenario, PlasmaScenario) else None,
        omega0=run.omega0, mean_delta_omega=run.mean_delta_omega,
        Delta=cfg.drive.Delta if cfg.drive.Delta is not None else 0.0,
        n_pulse=sw.n_pulse if sw.n_pulse is not None else cfg.drive.n_pulse,
        rtol=cfg.numerics.tol_ode,
    )
    points = detuning_scan(spec, jobs=jobs)
    rows = [(p.variable, p.value, p.Omega, p.Delta, p.chi, p.peak_Omega,
             p.n_gamma_final, p.omega0, p.mean_delta_omega) for p in points]
    _write_csv(outdir / "sweep.csv", HEADERS["sweep"], rows, fmt)
    col = _OBSERVABLE_COLUMN[spec.observable]
    values = [getattr(p, col) for p in points]
    i_peak = int(np.argmax(values))
    peak = points[i_peak]
    summary = {
        "variable": spec.variable,
        "observable": spec.observable,
        "nPoints": len(points),
        "peak": {
            "value": peak.value,
            "Omega": peak.Omega,
            "NGammaFinal": peak.n_gamma_final,
            "chi": peak.chi,
            "peakOmega": peak.peak_Omega,
        },
    }
    return ["sweep.csv"], summary


def _cmd_compare(cfg: RunConfig, outdir: Path, fmt, jobs: int):
    run = _resolve(cfg)
    c = _route_couplings(run, run.drive.t_final)
    comp = compare_formulations(c, run.drive,
                                samples_per_period=cfg.numerics.grid_per_period,
                                rtol=cfg.numerics.tol_ode)
    rows = list(zip(comp.times, comp.n_std, comp.n_inst))
    _write_csv(outdir / "compare.csv", HEADERS["compare"], rows, fmt)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.abs(comp.avg_inst - comp.avg_std) / np.abs(comp.avg_std)
    rel = np.where(np.isfinite(rel), rel, 0.0)
    avg_rows = list(zip(comp.mid_times, comp.avg_std, comp.avg_inst, rel))
    _write_csv(outdir / "compare_avg.csv", HEADERS["compare_avg"], avg_rows, fmt)
    summary = {
        "chi": comp.chi,
        "window": list(comp.window),
        "maxRelDev": comp.max_rel_dev,
        "NGammaFinalStd": float(comp.n_std[-1]),
        "NGammaFinalInst": float(comp.n_inst[-1]),
    }
    return ["compare.csv", "compare_avg.csv"], summary


def _cmd_estimate(cfg: RunConfig, outdir: Path, fmt, jobs: int):
    if cfg.scenario.type != "plasma":
        raise ConfigError("the estimate subcommand needs a plasma scenario")
    run = _resolve(cfg)
    est = estimate(run.scenario, target_n=cfg.estimate.target_n)
    rows = [(est.chi_over_omega0, est.enhancement, est.n_pulse_required,
             est.q_min)]
    _write_csv(outdir / "estimate.csv", HEADERS["estimate"], rows, fmt)
    summary = {
        "chiOverOmega0": est.chi_over_omega0,
        "enhancement": est.enhancement,
        "nPulseRequired": est.n_pulse_required,
        "qMin": est.q_min,
        "omega0": est.omega0,
        "chi": est.chi,
        "meanDeltaOmega": est.mean_delta_omega,
        "OmegaRes": est.Omega_res,
        "targetN": est.target_n,
    }
    return ["estimate.csv"], summary


def _cmd_pulse_train(cfg: RunConfig, outdir: Path, fmt, jobs: int):
    run = _resolve(cfg)
    scenario = run.scenario if isinstance(run.scenario, PlasmaScenario) else None
    res = pulse_train(run.drive, scenario, rtol=cfg.numerics.tol_ode)
    rows = [(p.pulse, p.t, p.n_gamma, p.n_gamma_rwa, p.r) for p in res.points]
    _write_csv(outdir / "pulse_train.csv", HEADERS["pulse_train"], rows, fmt)
    last = res.points[-1]
    summary = {
        "chi": res.chi,
        "chiTotal": res.chi_total,
        "finalR": res.final_r,
        "NGammaFinal": last.n_gamma,
        "NGammaFinalRwa": last.n_gamma_rwa,
        "nPulse": int(last.pulse),
    }
    return ["pulse_train.csv"], summary


_HANDLERS = {
    "modes": _cmd_modes,
    "couplings": _cmd_couplings,
    "evolve": _cmd_evolve,
    "rwa": _cmd_rwa,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
    "estimate": _cmd_estimate,
    "pulse-train": _cmd_pulse_train,
}


# ---------------------------------------------------------------------------
# argument parsing and dispatch

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcesim",
        description="Photon creation from vacuum in a driven cavity: mode "
                    "solving, coupling coefficients, state evolution, scans "
                    "and feasibility estimates.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=f"run the {name} workflow")
        p.add_argument("--config", required=True, help="TOML config (or a JSON "
                       "manifest from an earlier run)")
        p.add_argument("--out", default=None, help="output directory "
                       "(overrides config and DCESIM_OUT)")
        p.add_argument("--jobs", type=int, default=None,
                       help="parallel workers for sweeps (overrides DCESIM_JOBS)")
        p.add_argument("--tol-ode", type=float, default=None, dest="tol_ode",
                       help="override numerics.tolOde")
        p.add_argument("--tol-quad", type=float, default=None, dest="tol_quad",
                       help="override numerics.tolQuad")
    return parser


def _effective_jobs(arg_jobs: int | None) -> int:
    if arg_jobs is not None:
        jobs = arg_jobs
    else:
        env = os.environ.get("DCESIM_JOBS")
        if env is None:
            jobs = 1
        else:
            try:
                jobs = int(env)
            except ValueError:
                raise ConfigError(f"DCESIM_JOBS: expected an integer, got {env!r}")
    if jobs < 1:
        raise ConfigError(f"--jobs: must be at least 1, got {jobs}")
    return jobs


def _run(args: argparse.Namespace) -> int:
    cfg = parse_config(args.config)
    if args.tol_ode is not None or args.tol_quad is not None:
        nm = cfg.numerics
        if args.tol_ode is not None and args.tol_ode <= 0:
            raise ConfigError("--tol-ode: must be positive")
        if args.tol_quad is not None and args.tol_quad <= 0:
            raise ConfigError("--tol-quad: must be positive")
        nm = dataclasses.replace(
            nm,
            tol_ode=args.tol_ode if args.tol_ode is not None else nm.tol_ode,
            tol_quad=args.tol_quad if args.tol_quad is not None else nm.tol_quad)
        cfg = dataclasses.replace(cfg, numerics=nm)
    out = args.out or os.environ.get("DCESIM_OUT") or cfg.output.directory
    cfg = dataclasses.replace(cfg, output=dataclasses.replace(cfg.output,
                                                              directory=out))
    jobs = _effective_jobs(args.jobs)

    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    fmt = _formatter(cfg.output.precision)

    outputs, summary = _HANDLERS[args.subcommand](cfg, outdir, fmt, jobs)
    _write_manifest(outdir, args.subcommand, cfg, outputs + ["manifest.json"],
                    summary)
    for name in outputs + ["manifest.json"]:
        print(f"wrote {outdir / name}")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ScenarioError as exc:
        print(f"error: scenario: {exc}", file=sys.stderr)
        return 2
    except (CouplingError, EvolutionError, ExperimentError,
            ModeSolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
