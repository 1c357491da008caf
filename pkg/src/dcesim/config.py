"""Run configuration: TOML parsing, validation, defaults.

A run is described by one TOML file with camelCase keys grouped in sections
(scenario / modes / drive / numerics / output plus per-subcommand sections).
Unknown keys are hard errors naming the full field path — a typo must never
silently fall back to a default.  A JSON run manifest produced by an earlier
run can be re-fed as the config (its embedded resolved config is extracted),
which reproduces the run.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - depends on interpreter version
    import tomli as tomllib

__all__ = ["ConfigError", "RunConfig", "parse_config", "resolved_dict"]

SCENARIO_TYPES = ("wall", "plasma", "synthetic")
DRIVE_TARGETS = ("delta", "mp2", "eps1")
PROFILE_FAMILIES = ("sinusoidal", "pulseTrain", "table")
COUPLING_ROUTES = ("closed", "quadrature")
_SWEEP_VARIABLES = ("Omega", "Delta", "meanDeltaOmega", "nPulse",
                    "slabPosition", "slabThickness", "mp2Max")
_SWEEP_OBSERVABLES = ("NGammaFinal", "chi", "peakOmega")


class ConfigError(ValueError):
    """Invalid configuration; the message carries the offending field path."""


# ---------------------------------------------------------------------------
# section dataclasses (validated, defaults filled)

@dataclass(frozen=True)
class ScenarioConfig:
    type: str
    length: float | None = None
    mass2: float | None = None          # wall
    delta_max: float | None = None      # wall
    slab_left: float | None = None      # plasma
    slab_thickness: float | None = None  # plasma
    eps0: float = 1.0
    eps1: float = 1.0
    omega0: float | None = None         # synthetic
    mean_delta_omega: float | None = None  # synthetic


@dataclass(frozen=True)
class ModesConfig:
    n_modes: int = 1
    k_perp: float = 0.0
    n_samples: int = 257


@dataclass(frozen=True)
class DriveConfig:
    target: str | None = None           # delta | mp2 | eps1 (material scenarios)
    profile: str = "sinusoidal"
    pmax: float | None = None
    baseline: float = 0.0
    width: float | None = None          # pulseTrain
    times: tuple[float, ...] | None = None   # table
    values: tuple[float, ...] | None = None  # table
    Omega: float | None = None
    Delta: float | None = None
    n_pulse: int = 1


@dataclass(frozen=True)
class NumericsConfig:
    tol_quad: float = 1e-8
    tol_ode: float = 1e-10
    invariant_tol: float = 1e-7
    grid_per_period: int = 64
    samples_per_period: int = 16


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "."
    precision: str | int = "full"


@dataclass(frozen=True)
class SweepConfig:
    variable: str | None = None
    lo: float | None = None
    hi: float | None = None
    n_points: int | None = None
    observable: str = "NGammaFinal"
    n_pulse: int | None = None          # defaults to drive.n_pulse


@dataclass(frozen=True)
class EstimateConfig:
    target_n: float = 10.0


@dataclass(frozen=True)
class CouplingsConfig:
    route: str = "closed"
    pair: tuple[int, int] = (0, 0)
    n_periods: int = 1


@dataclass(frozen=True)
class EvolveConfig:
    mode: int = 0
    multimode: bool = False


@dataclass(frozen=True)
class RunConfig:
    scenario: ScenarioConfig
    modes: ModesConfig = field(default_factory=ModesConfig)
    drive: DriveConfig = field(default_factory=DriveConfig)
    numerics: NumericsConfig = field(default_factory=NumericsConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    estimate: EstimateConfig = field(default_factory=EstimateConfig)
    couplings: CouplingsConfig = field(default_factory=CouplingsConfig)
    evolve: EvolveConfig = field(default_factory=EvolveConfig)


# ---------------------------------------------------------------------------
# low-level checked readers

def _check_unknown(section: str, raw: dict, known: set[str]) -> None:
    for key in raw:
        if key not in known:
            path = f"{section}.{key}" if section else key
            raise ConfigError(f"unknown key {path!r}")


def _get(raw: dict, section: str, key: str, kind: type, default: Any,
         required: bool = False) -> Any:
    if key not in raw:
        if required:
            raise ConfigError(f"missing required key {section}.{key}")
        return default
    val = raw[key]
    if kind is float:
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise ConfigError(f"{section}.{key}: expected a number, got {val!r}")
        return float(val)
    if kind is int:
        if isinstance(val, bool) or not isinstance(val, int):
            raise ConfigError(f"{section}.{key}: expected an integer, got {val!r}")
        return int(val)
    if kind is bool:
        if not isinstance(val, bool):
            raise ConfigError(f"{section}.{key}: expected true/false, got {val!r}")
        return val
    if kind is str:
        if not isinstance(val, str):
            raise ConfigError(f"{section}.{key}: expected a string, got {val!r}")
        return val
    raise AssertionError(f"unhandled kind {kind}")


def _positive(section: str, key: str, value: float | int | None) -> None:
    if value is not None and value <= 0:
        raise ConfigError(f"{section}.{key}: must be positive, got {value}")


def _float_list(raw: dict, section: str, key: str) -> tuple[float, ...] | None:
    if key not in raw:
        return None
    val = raw[key]
    if not isinstance(val, list) or not val or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in val):
        raise ConfigError(f"{section}.{key}: expected a non-empty list of numbers")
    return tuple(float(v) for v in val)


# ---------------------------------------------------------------------------
# section parsers

def _parse_scenario(raw: dict) -> ScenarioConfig:
    sec = "scenario"
    typ = _get(raw, sec, "type", str, None, required=True)
    if typ not in SCENARIO_TYPES:
        raise ConfigError(f"scenario.type: expected one of {SCENARIO_TYPES}, got {typ!r}")
    common = {"type"}
    if typ == "wall":
        _check_unknown(sec, raw, common | {"length", "mass2", "deltaMax", "eps0", "eps1"})
        cfg = ScenarioConfig(
            type=typ,
            length=_get(raw, sec, "length", float, None, required=True),
            mass2=_get(raw, sec, "mass2", float, None, required=True),
            delta_max=_get(raw, sec, "deltaMax", float, None),
            eps0=_get(raw, sec, "eps0", float, 1.0),
            eps1=_get(raw, sec, "eps1", float, 1.0),
        )
        _positive(sec, "length", cfg.length)
        _positive(sec, "mass2", cfg.mass2)
        _positive(sec, "deltaMax", cfg.delta_max)
        if cfg.delta_max is not None and cfg.delta_max >= cfg.length:
            raise ConfigError("scenario.deltaMax: wall sweep must stay inside "
                              f"the cavity (deltaMax < length = {cfg.length})")
    elif typ == "plasma":
        _check_unknown(sec, raw, common | {"length", "slabLeft", "slabThickness",
                                           "eps0", "eps1"})
        cfg = ScenarioConfig(
            type=typ,
            length=_get(raw, sec, "length", float, None, required=True),
            slab_left=_get(raw, sec, "slabLeft", float, None, required=True),
            slab_thickness=_get(raw, sec, "slabThickness", float, None, required=True),
            eps0=_get(raw, sec, "eps0", float, 1.0),
            eps1=_get(raw, sec, "eps1", float, 1.0),
        )
        _positive(sec, "length", cfg.length)
        _positive(sec, "slabThickness", cfg.slab_thickness)
        if cfg.slab_left < 0:
            raise ConfigError("scenario.slabLeft: must be nonnegative")
        if cfg.slab_left + cfg.slab_thickness > cfg.length:
            raise ConfigError(
                "scenario.slabThickness: slab must fit inside the cavity "
                f"(slabLeft + slabThickness <= length = {cfg.length})")
    else:  # synthetic
        _check_unknown(sec, raw, common | {"omega0", "meanDeltaOmega"})
        cfg = ScenarioConfig(
            type=typ,
            omega0=_get(raw, sec, "omega0", float, None, required=True),
            mean_delta_omega=_get(raw, sec, "meanDeltaOmega", float, None,
                                  required=True),
        )
        _positive(sec, "omega0", cfg.omega0)
        _positive(sec, "meanDeltaOmega", cfg.mean_delta_omega)
    _positive(sec, "eps0", cfg.eps0)
    _positive(sec, "eps1", cfg.eps1)
    return cfg


def _parse_modes(raw: dict) -> ModesConfig:
    sec = "modes"
    _check_unknown(sec, raw, {"nModes", "kPerp", "nSamples"})
    cfg = ModesConfig(
        n_modes=_get(raw, sec, "nModes", int, 1),
        k_perp=_get(raw, sec, "kPerp", float, 0.0),
        n_samples=_get(raw, sec, "nSamples", int, 257),
    )
    _positive(sec, "nModes", cfg.n_modes)
    _positive(sec, "nSamples", cfg.n_samples)
    if cfg.k_perp < 0:
        raise ConfigError("modes.kPerp: must be nonnegative")
    return cfg


def _parse_drive(raw: dict, scenario: ScenarioConfig) -> DriveConfig:
    sec = "drive"
    if scenario.type == "synthetic":
        _check_unknown(sec, raw, {"Omega", "Delta", "nPulse"})
        cfg = DriveConfig(
            Omega=_get(raw, sec, "Omega", float, None),
            Delta=_get(raw, sec, "Delta", float, None),
            n_pulse=_get(raw, sec, "nPulse", int, 1),
        )
    else:
        _check_unknown(sec, raw, {"target", "profile", "pmax", "baseline", "width",
                                  "times", "values", "Omega", "Delta", "nPulse"})
        default_target = "delta" if scenario.type == "wall" else "mp2"
        cfg = DriveConfig(
            target=_get(raw, sec, "target", str, default_target),
            profile=_get(raw, sec, "profile", str, "sinusoidal"),
            pmax=_get(raw, sec, "pmax", float, None),
            baseline=_get(raw, sec, "baseline", float, 0.0),
            width=_get(raw, sec, "width", float, None),
            times=_float_list(raw, sec, "times"),
            values=_float_list(raw, sec, "values"),
            Omega=_get(raw, sec, "Omega", float, None),
            Delta=_get(raw, sec, "Delta", float, None),
            n_pulse=_get(raw, sec, "nPulse", int, 1),
        )
        if cfg.target not in DRIVE_TARGETS:
            raise ConfigError(f"drive.target: expected one of {DRIVE_TARGETS}, "
                              f"got {cfg.target!r}")
        if scenario.type == "wall" and cfg.target != "delta":
            raise ConfigError("drive.target: a wall scenario is driven through "
                              "'delta' only")
        if scenario.type == "plasma" and cfg.target == "delta":
            raise ConfigError("drive.target: a plasma scenario is driven through "
                              "'mp2' or 'eps1'")
        if cfg.profile not in PROFILE_FAMILIES:
            raise ConfigError(f"drive.profile: expected one of {PROFILE_FAMILIES}, "
                              f"got {cfg.profile!r}")
        if cfg.profile == "table":
            if cfg.times is None or cfg.values is None:
                raise ConfigError("drive.times/drive.values: required for the "
                                  "table profile")
            if len(cfg.times) != len(cfg.values):
                raise ConfigError("drive.values: must match drive.times in length")
        else:
            if cfg.pmax is None:
                raise ConfigError("missing required key drive.pmax")
            if cfg.profile == "pulseTrain" and cfg.width is None:
                raise ConfigError("drive.width: required for the pulseTrain profile")
            _positive(sec, "width", cfg.width)
        if cfg.target == "delta" and cfg.pmax is not None \
                and scenario.length is not None and cfg.pmax >= scenario.length:
            raise ConfigError("drive.pmax: wall displacement must stay inside "
                              f"the cavity (pmax < length = {scenario.length})")
    if (cfg.Omega is None) == (cfg.Delta is None):
        raise ConfigError("drive: give exactly one of drive.Omega and drive.Delta")
    _positive(sec, "Omega", cfg.Omega)
    _positive(sec, "nPulse", cfg.n_pulse)
    return cfg


def _parse_numerics(raw: dict) -> NumericsConfig:
    sec = "numerics"
    _check_unknown(sec, raw, {"tolQuad", "tolOde", "invariantTol", "gridPerPeriod",
                              "samplesPerPeriod"})
    cfg = NumericsConfig(
        tol_quad=_get(raw, sec, "tolQuad", float, 1e-8),
        tol_ode=_get(raw, sec, "tolOde", float, 1e-10),
        invariant_tol=_get(raw, sec, "invariantTol", float, 1e-7),
        grid_per_period=_get(raw, sec, "gridPerPeriod", int, 64),
        samples_per_period=_get(raw, sec, "samplesPerPeriod", int, 16),
    )
    for key, val in (("tolQuad", cfg.tol_quad), ("tolOde", cfg.tol_ode),
                     ("invariantTol", cfg.invariant_tol),
                     ("gridPerPeriod", cfg.grid_per_period),
                     ("samplesPerPeriod", cfg.samples_per_period)):
        _positive(sec, key, val)
    return cfg


def _parse_output(raw: dict) -> OutputConfig:
    sec = "output"
    _check_unknown(sec, raw, {"directory", "precision"})
    precision: str | int = "full"
    if "precision" in raw:
        val = raw["precision"]
        if val == "full":
            precision = "full"
        elif isinstance(val, int) and not isinstance(val, bool) and 1 <= val <= 17:
            precision = val
        else:
            raise ConfigError("output.precision: expected 'full' or an integer "
                              f"in 1..17, got {val!r}")
    return OutputConfig(
        directory=_get(raw, sec, "directory", str, "."),
        precision=precision,
    )


def _parse_sweep(raw: dict) -> SweepConfig:
    sec = "sweep"
    _check_unknown(sec, raw, {"variable", "lo", "hi", "nPoints", "observable",
                              "nPulse"})
    cfg = SweepConfig(
        variable=_get(raw, sec, "variable", str, None),
        lo=_get(raw, sec, "lo", float, None),
        hi=_get(raw, sec, "hi", float, None),
        n_points=_get(raw, sec, "nPoints", int, None),
        observable=_get(raw, sec, "observable", str, "NGammaFinal"),
        n_pulse=_get(raw, sec, "nPulse", int, None),
    )
    if cfg.variable is not None and cfg.variable not in _SWEEP_VARIABLES:
        raise ConfigError(f"sweep.variable: expected one of {_SWEEP_VARIABLES}, "
                          f"got {cfg.variable!r}")
    if cfg.observable not in _SWEEP_OBSERVABLES:
        raise ConfigError(f"sweep.observable: expected one of {_SWEEP_OBSERVABLES}, "
                          f"got {cfg.observable!r}")
    _positive(sec, "nPoints", cfg.n_points)
    _positive(sec, "nPulse", cfg.n_pulse)
    return cfg


def _parse_estimate(raw: dict) -> EstimateConfig:
    sec = "estimate"
    _check_unknown(sec, raw, {"targetN"})
    cfg = EstimateConfig(target_n=_get(raw, sec, "targetN", float, 10.0))
    _positive(sec, "targetN", cfg.target_n)
    return cfg


def _parse_couplings(raw: dict) -> CouplingsConfig:
    sec = "couplings"
    _check_unknown(sec, raw, {"route", "pair", "nPeriods"})
    route = _get(raw, sec, "route", str, "closed")
    if route not in COUPLING_ROUTES:
        raise ConfigError(f"couplings.route: expected one of {COUPLING_ROUTES}, "
                          f"got {route!r}")
    pair = (0, 0)
    if "pair" in raw:
        val = raw["pair"]
        if (not isinstance(val, list) or len(val) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0
                           for v in val)):
            raise ConfigError("couplings.pair: expected a pair of mode indices "
                              "like [0, 0]")
        pair = (val[0], val[1])
    cfg = CouplingsConfig(route=route, pair=pair,
                          n_periods=_get(raw, sec, "nPeriods", int, 1))
    _positive(sec, "nPeriods", cfg.n_periods)
    return cfg


def _parse_evolve(raw: dict) -> EvolveConfig:
    sec = "evolve"
    _check_unknown(sec, raw, {"mode", "multimode"})
    cfg = EvolveConfig(
        mode=_get(raw, sec, "mode", int, 0),
        multimode=_get(raw, sec, "multimode", bool, False),
    )
    if cfg.mode < 0:
        raise ConfigError("evolve.mode: must be nonnegative")
    return cfg


# ---------------------------------------------------------------------------
# entry points

def _load_raw(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError(f"{path}: JSON config must be an object")
        # a run manifest embeds the resolved config under "config"
        if "config" in doc and isinstance(doc["config"], dict):
            return doc["config"]
        return doc
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: invalid TOML: {exc}") from exc


def parse_config(path: str | Path) -> RunConfig:
    """Parse and validate a TOML config (or JSON manifest) into a RunConfig."""
    raw = _load_raw(path)
    known_sections = {"scenario", "modes", "drive", "numerics", "output",
                      "sweep", "estimate", "couplings", "evolve"}
    _check_unknown("", raw, known_sections)
    for name in known_sections:
        if name in raw and not isinstance(raw[name], dict):
            raise ConfigError(f"{name}: expected a section (TOML table)")
    if "scenario" not in raw:
        raise ConfigError("missing required section [scenario]")
    scenario = _parse_scenario(raw["scenario"])
    drive = _parse_drive(raw.get("drive", {}), scenario)
    return RunConfig(
        scenario=scenario,
        modes=_parse_modes(raw.get("modes", {})),
        drive=drive,
        numerics=_parse_numerics(raw.get("numerics", {})),
        output=_parse_output(raw.get("output", {})),
        sweep=_parse_sweep(raw.get("sweep", {})),
        estimate=_parse_estimate(raw.get("estimate", {})),
        couplings=_parse_couplings(raw.get("couplings", {})),
        evolve=_parse_evolve(raw.get("evolve", {})),
    )


def resolved_dict(cfg: RunConfig) -> dict:
    """The fully resolved config (defaults filled) as a plain camelCase dict.

    Feeding this dict back through parse_config reproduces cfg exactly; it is
    what run manifests embed.
    """
    out: dict[str, dict] = {}
    sc = cfg.scenario
    if sc.type == "wall":
        out["scenario"] = {"type": sc.type, "length": sc.length, "mass2": sc.mass2,
                           "eps0": sc.eps0, "eps1": sc.eps1}
        if sc.delta_max is not None:
            out["scenario"]["deltaMax"] = sc.delta_max
    elif sc.type == "plasma":
        out["scenario"] = {"type": sc.type, "length": sc.length,
                           "slabLeft": sc.slab_left,
                           "slabThickness": sc.slab_thickness,
                           "eps0": sc.eps0, "eps1": sc.eps1}
    else:
        out["scenario"] = {"type": sc.type, "omega0": sc.omega0,
                           "meanDeltaOmega": sc.mean_delta_omega}
    out["modes"] = {"nModes": cfg.modes.n_modes, "kPerp": cfg.modes.k_perp,
                    "nSamples": cfg.modes.n_samples}
    dr = cfg.drive
    drive: dict[str, Any] = {}
    if sc.type != "synthetic":
        drive.update({"target": dr.target, "profile": dr.profile,
                      "baseline": dr.baseline})
        if dr.profile == "table":
            drive["times"] = list(dr.times)
            drive["values"] = list(dr.values)
        else:
            drive["pmax"] = dr.pmax
            if dr.width is not None:
                drive["width"] = dr.width
    if dr.Omega is not None:
        drive["Omega"] = dr.Omega
    else:
        drive["Delta"] = dr.Delta
    drive["nPulse"] = dr.n_pulse
    out["drive"] = drive
    nm = cfg.numerics
    out["numerics"] = {"tolQuad": nm.tol_quad, "tolOde": nm.tol_ode,
                       "invariantTol": nm.invariant_tol,
                       "gridPerPeriod": nm.grid_per_period,
                       "samplesPerPeriod": nm.samples_per_period}
    out["output"] = {"directory": cfg.output.directory,
                     "precision": cfg.output.precision}
    sw = cfg.sweep
    if sw.variable is not None:
        sweep: dict[str, Any] = {"variable": sw.variable, "lo": sw.lo, "hi": sw.hi,
                                 "nPoints": sw.n_points, "observable": sw.observable}
        if sw.n_pulse is not None:
            sweep["nPulse"] = sw.n_pulse
        out["sweep"] = sweep
    out["estimate"] = {"targetN": cfg.estimate.target_n}
    out["couplings"] = {"route": cfg.couplings.route,
                        "pair": list(cfg.couplings.pair),
                        "nPeriods": cfg.couplings.n_periods}
    out["evolve"] = {"mode": cfg.evolve.mode, "multimode": cfg.evolve.multimode}
    return out
