"""Numerical experiments built on the mode/coupling/evolution stack.

Four reproducible studies:

* detuning_scan     -- one observable swept against one parameter (drive
                       frequency or detuning, drive strength, pulse count,
                       slab position/thickness, peak plasma mass) on a fixed
                       grid, bitwise deterministic for any worker count;
* pulse_train       -- growth of the photon number over a train of identical
                       drive periods, rotating-wave prediction next to the
                       integrated master equation;
* estimate          -- feasibility numbers for a laser-driven slab experiment
                       (peak pair-creation rate, pulses to a target yield,
                       minimum cavity quality factor);
* compare_formulations -- period-averaged photon numbers from the standard
                       and instantaneous-mode coupling formulations.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .couplings import (CouplingSet, fourier_component, instantaneous_from_standard,
                        plasma_closed_form, synthetic_drive)
from .evolution import DriveSpec, integrate_master, period_average, rwa_solve
from .modes import solve_modes
from .scenario import PlasmaScenario

__all__ = [
    "ExperimentError", "SweepSpec", "ScanPoint", "PulsePoint", "PulseTrainResult",
    "ExperimentEstimate", "FormulationComparison",
    "SCAN_VARIABLES", "SCAN_OBSERVABLES",
    "detuning_scan", "pulse_train", "estimate", "compare_formulations",
]

SCAN_VARIABLES = ("Omega", "Delta", "meanDeltaOmega", "nPulse",
                  "slabPosition", "slabThickness", "mp2Max")
_SYNTHETIC_VARIABLES = ("Omega", "Delta", "meanDeltaOmega", "nPulse")
_SCENARIO_VARIABLES = ("slabPosition", "slabThickness", "mp2Max")
SCAN_OBSERVABLES = ("NGammaFinal", "chi", "peakOmega")


class ExperimentError(RuntimeError):
    """Experiment is ill-posed for the given inputs (e.g. zero drive)."""


def _drive_period(scenario: PlasmaScenario) -> float:
    periods = {p.period for p in (scenario.mp2_profile, scenario.eps1_profile)
               if p.period is not None}
    if not periods:
        raise ExperimentError("need a periodic drive profile")
    if len(periods) > 1:
        raise ExperimentError("need a single drive period, got "
                              + ", ".join(f"{p:g}" for p in sorted(periods)))
    return periods.pop()


def _scenario_drive(scenario: PlasmaScenario) -> tuple[CouplingSet, float, float, complex]:
    """Fundamental-mode closed-form couplings and their drive characteristics.

    Returns (couplings, Omega_drive, mean_delta_omega, g_omega)."""
    T = _drive_period(scenario)
    mode = solve_modes(scenario, 1)[0]
    couplings = plasma_closed_form([mode], scenario)
    fc = fourier_component(couplings, 2.0 * np.pi / T)
    return couplings, 2.0 * np.pi / T, fc.mean_delta_omega, fc.g_omega


# ---------------------------------------------------------------------------
# parameter scan

@dataclass(frozen=True)
class SweepSpec:
    """Grid for a one-parameter scan of the photon-creation dynamics.

    variable picks what the grid varies:

    * drive parameters "Omega", "Delta", "meanDeltaOmega", "nPulse" drive a
      single mode synthetically with dw(t) = mean_delta_omega (1 - cos Om t);
      the mode baseline comes from (omega0, mean_delta_omega) directly or,
      when a scenario is given, from its closed-form couplings;
    * geometry/material parameters "slabPosition", "slabThickness", "mp2Max"
      rebuild the plasma scenario per point (scenario required, with a
      periodic drive profile) and use its physical closed-form couplings.

    observable picks the expensive column: "NGammaFinal" integrates the
    master equation over n_pulse periods at every point; "chi" and
    "peakOmega" (the shifted resonance 2 (omega0 + <dw>)) are always
    reported and skip the integration when chosen alone.

    Detunings are measured from the shifted resonance,
    Om = 2 (omega0 + <dw> + Delta); a "Delta" grid spanning [-2, 2] * <dw>
    covers both the true resonance (Delta = 0) and the naive one
    (Delta = -<dw>, i.e. Om = 2 omega0) exactly.
    """

    variable: str
    lo: float
    hi: float
    n_points: int
    observable: str = "NGammaFinal"
    scenario: PlasmaScenario | None = None
    omega0: float | None = None
    mean_delta_omega: float | None = None
    Delta: float = 0.0
    n_pulse: int = 100
    rtol: float = 1e-10

    def __post_init__(self) -> None:
        if self.variable not in SCAN_VARIABLES:
            raise ValueError(f"unknown scan variable {self.variable!r}; "
                             f"choose from {SCAN_VARIABLES}")
        if self.observable not in SCAN_OBSERVABLES:
            raise ValueError(f"unknown observable {self.observable!r}; "
                             f"choose from {SCAN_OBSERVABLES}")
        if not self.lo < self.hi:
            raise ValueError("need lo < hi")
        if self.n_points < 2:
            raise ValueError("need n_points >= 2")
        if self.n_pulse < 1:
            raise ValueError("n_pulse must be >= 1")
        if self.variable in _SCENARIO_VARIABLES:
            if self.scenario is None:
                raise ValueError(f"variable {self.variable!r} needs a plasma scenario")
        elif self.scenario is None and (self.omega0 is None
                                        or self.mean_delta_omega is None):
            raise ValueError(f"variable {self.variable!r} needs omega0 and "
                             "mean_delta_omega (or a scenario to derive them)")

    @property
    def values(self) -> np.ndarray:
        vals = np.linspace(self.lo, self.hi, self.n_points)
        if self.variable == "nPulse":
            vals = np.unique(np.round(vals)).astype(float)
            if np.any(vals < 1):
                raise ValueError("nPulse grid must stay >= 1")
        return vals


class ScanPoint(NamedTuple):
    variable: str
    value: float
    Omega: float
    Delta: float
    chi: float
    peak_Omega: float
    n_gamma_final: float     # NaN unless observable == "NGammaFinal"
    omega0: float
    mean_delta_omega: float


def _replaced_scenario(spec: SweepSpec, value: float) -> PlasmaScenario:
    sc = spec.scenario
    if spec.variable == "slabPosition":
        return dataclasses.replace(sc, slab_left=float(value))
    if spec.variable == "slabThickness":
        return dataclasses.replace(sc, slab_thickness=float(value))
    # mp2Max: rescale the peak of the plasma-mass profile
    prof = sc.mp2_profile
    if not hasattr(prof, "pmax"):
        raise ExperimentError(
            "mp2Max scan needs a direct mp2 profile with a pmax field "
            f"(got {type(prof).__name__})")
    return dataclasses.replace(sc, mp2_profile=dataclasses.replace(prof, pmax=float(value)))


def _scan_point(args: tuple[SweepSpec, float]) -> ScanPoint:
    """One scan point; module-level so worker processes can pickle it."""
    spec, value = args
    want_n = spec.observable == "NGammaFinal"

    if spec.variable in _SCENARIO_VARIABLES:
        sc = _replaced_scenario(spec, value)
        couplings, Omega, mean_dw, g_omega = _scenario_drive(sc)
        omega0 = couplings.omega0s[0]
        drive = DriveSpec(omega0=omega0, mean_delta_omega=mean_dw,
                          g_omega=g_omega, Omega=Omega, n_pulse=spec.n_pulse)
    else:
        if spec.scenario is not None:
            _, _, mean_dw0, _ = _scenario_drive(spec.scenario)
            omega0 = solve_modes(spec.scenario, 1)[0].omega0
        else:
            omega0, mean_dw0 = spec.omega0, spec.mean_delta_omega
        mean_dw, delta, n_pulse = mean_dw0, spec.Delta, spec.n_pulse
        if spec.variable == "meanDeltaOmega":
            mean_dw = value
        elif spec.variable == "nPulse":
            n_pulse = int(round(value))
        if spec.variable == "Omega":
            drive = DriveSpec(omega0=omega0, mean_delta_omega=mean_dw,
                              Omega=float(value), n_pulse=n_pulse)
        else:
            if spec.variable == "Delta":
                delta = float(value)
            drive = DriveSpec(omega0=omega0, mean_delta_omega=mean_dw,
                              Delta=delta, n_pulse=n_pulse)
        couplings = synthetic_drive(omega0, mean_dw, drive.Omega)
        drive = drive.with_g_omega(fourier_component(couplings, drive.Omega).g_omega)

    rwa = rwa_solve(drive)
    if want_n:
        traj = integrate_master(couplings, drive.t_final, chunk=drive.period,
                                rtol=spec.rtol)
        n_final = traj.final.n_gamma
    else:
        n_final = float("nan")
    return ScanPoint(variable=spec.variable, value=float(value), Omega=drive.Omega,
                     Delta=drive.Delta, chi=rwa.chi,
                     peak_Omega=2.0 * (drive.omega0 + drive.mean_delta_omega),
                     n_gamma_final=n_final, omega0=drive.omega0,
                     mean_delta_omega=drive.mean_delta_omega)


def detuning_scan(spec: SweepSpec, *, jobs: int = 1) -> list[ScanPoint]:
    """Evaluate the scan observable at every grid point.

    Points are independent, evaluated in grid order, and assembled in grid
    order, so the output is bitwise identical for any jobs value.
    """
    tasks = [(spec, float(v)) for v in spec.values]
    if jobs <= 1:
        return [_scan_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_scan_point, tasks))


# ---------------------------------------------------------------------------
# pulse train

class PulsePoint(NamedTuple):
    pulse: int
    t: float
    n_gamma: float          # integrated master equation; NaN when unavailable
    n_gamma_rwa: float
    r: float                # from the integrated value when available


@dataclass(frozen=True)
class PulseTrainResult:
    """Per-pulse photon numbers plus the accumulated squeeze exposure.

    chi_total = chi * n_pulse * T is the rotating-wave squeeze parameter
    accumulated over the whole train (N ~ sinh^2 chi_total at resonance).
    """

    points: list[PulsePoint]
    drive: DriveSpec
    chi: float
    chi_total: float
    g_omega: complex

    @property
    def final_r(self) -> float:
        return self.points[-1].r


def pulse_train(drive: DriveSpec, scenario: PlasmaScenario | None = None, *,
                rtol: float = 1e-10, numeric: bool = True) -> PulseTrainResult:
    """Photon number after each pulse of a periodic train.

    With a scenario, the physical closed-form couplings provide both the
    rotating-wave column (through their Fourier component at the drive
    frequency, which must match the profile's own period) and the integrated
    master-equation column.  Without one, the synthetic drive
    dw(t) = mean_delta_omega (1 - cos Om t) is used; if the drive carries no
    modulation at all, only the rotating-wave column (from drive.g_omega) is
    produced.  numeric=False skips the integration either way.
    """
    couplings = None
    if scenario is not None:
        T_prof = _drive_period(scenario)
        if abs(T_prof - drive.period) > 1e-9 * drive.period:
            raise ExperimentError(
                f"drive period {drive.period:g} does not match the scenario "
                f"profile period {T_prof:g}")
        mode = solve_modes(scenario, 1)[0]
        couplings = plasma_closed_form([mode], scenario)
        g_omega = fourier_component(couplings, drive.Omega).g_omega
    elif drive.mean_delta_omega > 0.0:
        couplings = synthetic_drive(drive.omega0, drive.mean_delta_omega, drive.Omega)
        g_omega = drive.g_omega if drive.g_omega != 0 else \
            fourier_component(couplings, drive.Omega).g_omega
    else:
        if drive.g_omega == 0:
            raise ExperimentError("drive carries neither a modulation nor g_omega")
        g_omega = drive.g_omega

    rwa = rwa_solve(drive.with_g_omega(g_omega))
    traj = None
    if couplings is not None and numeric:
        traj = integrate_master(couplings, drive.t_final, chunk=drive.period,
                                rtol=rtol)
    points: list[PulsePoint] = []
    for p in range(1, drive.n_pulse + 1):
        t = p * drive.period
        n_rwa = float(rwa.n_gamma(t))
        if traj is not None:
            n_num = traj.state_at(t).n_gamma
            r = float(np.arcsinh(np.sqrt(n_num)))
        else:
            n_num = float("nan")
            r = float(np.arcsinh(np.sqrt(n_rwa)))
        points.append(PulsePoint(pulse=p, t=t, n_gamma=n_num, n_gamma_rwa=n_rwa, r=r))
    return PulseTrainResult(points=points, drive=rwa.drive, chi=rwa.chi,
                            chi_total=rwa.chi * drive.n_pulse * drive.period,
                            g_omega=complex(g_omega))


# ---------------------------------------------------------------------------
# feasibility estimate

@dataclass(frozen=True)
class ExperimentEstimate:
    """Feasibility numbers for a periodically driven slab in a cavity.

    chi_over_omega0:  peak pair-creation rate chi = max_t |2 g(t)| over
                      omega0 (the rate available at the top of each pulse);
    enhancement:      delta_m^max / delta, how much the effective wall
                      displacement exceeds the physical slab thickness,
                      max_t mp2(t)/(eps0 omega0^2) * sin^2(k l)
                      (placement factor (k delta)^2/3 at l = 0);
    n_pulse_required: resonant drive periods until the target yield,
                      smallest n with sinh^2(chi n T) >= N_target;
    q_min:            omega0 / chi, the quality factor above which photons
                      accumulate faster than the cavity loses them
                      (q_min * chi / omega0 = 1 by construction).
    """

    chi_over_omega0: float
    enhancement: float
    n_pulse_required: int
    q_min: float
    omega0: float
    chi: float
    mean_delta_omega: float
    Omega_res: float
    target_n: float

    def __post_init__(self) -> None:
        assert abs(self.q_min * self.chi / self.omega0 - 1.0) < 1e-12


def estimate(scenario: PlasmaScenario, *, target_n: float = 10.0,
             n_grid: int = 4096) -> ExperimentEstimate:
    """Feasibility estimate from the thin-slab closed-form couplings.

    The rate is identified with the peak of the pair coupling over one drive
    period, chi = max_t |2 g(t)|, and the resonant period T = 2 pi / Om_res
    with Om_res = 2 (omega0 + <dw>).  A drive that never couples (chi = 0)
    has no finite estimate and raises ExperimentError.
    """
    if target_n <= 0:
        raise ValueError("target_n must be positive")
    T_drive = _drive_period(scenario)
    mode = solve_modes(scenario, 1)[0]
    couplings = plasma_closed_form([mode], scenario)
    ts = np.linspace(0.0, T_drive, n_grid, endpoint=False)
    g_mag = np.array([abs(couplings.g_at(0, 0, t)) for t in ts])
    chi = 2.0 * float(g_mag.max())
    if chi <= 0.0:
        raise ExperimentError("drive never couples to the mode: chi = 0, "
                              "estimate undefined")
    omega0 = mode.omega0
    if scenario.slab_left == 0.0:
        placement = (mode.k * scenario.slab_thickness) ** 2 / 3.0
    else:
        placement = float(np.sin(mode.k * scenario.slab_left) ** 2)
    enhancement = scenario.mp2_profile.peak / (scenario.eps0 * omega0**2) * placement
    mean_dw = fourier_component(couplings, 2.0 * np.pi / T_drive).mean_delta_omega
    omega_res = 2.0 * (omega0 + mean_dw)
    T_res = 2.0 * np.pi / omega_res
    n_req = int(np.ceil(np.arcsinh(np.sqrt(target_n)) / (chi * T_res)))
    return ExperimentEstimate(
        chi_over_omega0=chi / omega0, enhancement=float(enhancement),
        n_pulse_required=n_req, q_min=omega0 / chi, omega0=omega0, chi=chi,
        mean_delta_omega=mean_dw, Omega_res=omega_res, target_n=float(target_n),
    )


# ---------------------------------------------------------------------------
# standard versus instantaneous formulation

@dataclass(frozen=True)
class FormulationComparison:
    """Period-averaged photon numbers from the two coupling formulations.

    max_rel_dev is the largest relative deviation between the averaged curves
    inside the growth window 0.5 <= chi t <= 3 (intersected with the span
    where the centered average is defined).
    """

    times: np.ndarray          # raw sample times
    n_std: np.ndarray
    n_inst: np.ndarray
    mid_times: np.ndarray      # centered-average times
    avg_std: np.ndarray
    avg_inst: np.ndarray
    chi: float
    window: tuple[float, float]
    max_rel_dev: float


def compare_formulations(couplings: CouplingSet, drive: DriveSpec, *,
                         samples_per_period: int = 64,
                         rtol: float = 1e-10) -> FormulationComparison:
    """Integrate both formulations of the same drive and compare yields.

    The instantaneous-mode couplings are transcribed from the standard set on
    a grid of samples_per_period points per period, both master equations are
    integrated over drive.t_final, and the photon numbers are averaged over a
    centered drive period before comparing (the raw curves differ by in-cycle
    oscillation, the averages must not).
    """
    fc = fourier_component(couplings, drive.Omega)
    rwa = rwa_solve(drive.with_g_omega(fc.g_omega))
    if rwa.chi2 <= 0.0:
        raise ExperimentError(
            f"drive has no growth rate: chi^2 = {rwa.chi2:g} <= 0 "
            "(resonant amplification required)")
    t_final = drive.t_final
    lo = max(0.5 / rwa.chi, drive.period / 2.0)
    hi = min(3.0 / rwa.chi, t_final - drive.period / 2.0)
    if hi <= lo:
        raise ExperimentError(
            f"drive too short to compare: need chi t to reach 3 "
            f"(chi t_final = {rwa.chi * t_final:.3f})")

    grid = np.linspace(0.0, t_final, drive.n_pulse * samples_per_period + 1)
    inst = instantaneous_from_standard(couplings, grid, period=drive.period)

    ts = grid
    traj_std = integrate_master(couplings, t_final, chunk=drive.period, rtol=rtol)
    traj_inst = integrate_master(inst, t_final, chunk=drive.period, rtol=rtol)
    n_std = np.array([s.n_gamma for s in traj_std.sample(ts)])
    n_inst = np.array([s.n_gamma for s in traj_inst.sample(ts)])
    mid, avg_std = period_average(ts, n_std, drive.period)
    _, avg_inst = period_average(ts, n_inst, drive.period)
    sel = (mid >= lo) & (mid <= hi)
    dev = np.abs(avg_inst[sel] - avg_std[sel]) / avg_std[sel]
    return FormulationComparison(
        times=ts, n_std=n_std, n_inst=n_inst, mid_times=mid,
        avg_std=avg_std, avg_inst=avg_inst, chi=rwa.chi,
        window=(float(lo), float(hi)), max_rel_dev=float(dev.max()),
    )
