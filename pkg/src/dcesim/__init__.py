"""dcesim: photon creation from vacuum in a driven cavity.

A one-dimensional cavity whose material is modulated in time — either by a
massive wall oscillating at one end or by a thin slab whose carriers are
periodically excited — pumps photon pairs out of the vacuum.  This package
solves the cavity modes, evaluates the time-dependent mode couplings those
modulations induce, integrates the resulting pair-creation dynamics exactly
and in the rotating-wave approximation, and automates the derived
experiments: resonance scans, formulation comparisons, pulse-train yields,
and feasibility estimates.

Layering (each module builds on the previous ones):

    profiles     time-dependence families for drives
    scenario     validated cavity + drive descriptions
    modes        instantaneous eigenmodes of the undriven cavity
    couplings    time-dependent frequency shifts and pair couplings
    evolution    Bogoliubov dynamics, exact and rotating-wave
    experiments  scans, pulse trains, comparisons, feasibility numbers
    config/cli   TOML-configured command-line workflows writing CSV
"""

from .config import ConfigError, RunConfig, parse_config
from .couplings import (PROVENANCES, CouplingError, CouplingSet,
                        FourierComponents, QuadratureError,
                        couplings_by_quadrature, fourier_component, g_eps, g_m,
                        instantaneous_from_standard, plasma_closed_form,
                        synthetic_drive, wall_closed_form)
from .evolution import (BogoliubovState, DriveSpec, EvolutionError,
                        MultimodeTrajectory, RwaSolution, SqueezeDecomposition,
                        Trajectory, integrate_master, integrate_multimode,
                        period_average, photon_number, rwa_solve, squeeze_of)
from .experiments import (SCAN_OBSERVABLES, SCAN_VARIABLES, ExperimentError,
                          ExperimentEstimate, FormulationComparison, PulsePoint,
                          PulseTrainResult, ScanPoint, SweepSpec,
                          compare_formulations, detuning_scan, estimate,
                          pulse_train)
from .modes import (Mode, ModeSolverError, eval_mode, orthonormality_check,
                    solve_modes)
from .profiles import (ConstantProfile, Profile, PulseTrainProfile,
                       SinusoidalProfile, TableProfile)
from .scenario import (MaterialProfile, PlasmaScenario, ScenarioError,
                       WallScenario, material_of)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # profiles
    "ConstantProfile", "SinusoidalProfile", "PulseTrainProfile", "TableProfile",
    "Profile",
    # scenario
    "ScenarioError", "WallScenario", "PlasmaScenario", "MaterialProfile",
    "material_of",
    # modes
    "Mode", "ModeSolverError", "solve_modes", "eval_mode",
    "orthonormality_check",
    # couplings
    "CouplingError", "QuadratureError", "CouplingSet", "FourierComponents",
    "PROVENANCES", "couplings_by_quadrature", "wall_closed_form",
    "plasma_closed_form", "synthetic_drive", "instantaneous_from_standard",
    "fourier_component", "g_eps", "g_m",
    # evolution
    "EvolutionError", "BogoliubovState", "SqueezeDecomposition", "squeeze_of",
    "photon_number", "DriveSpec", "RwaSolution", "rwa_solve", "Trajectory",
    "integrate_master", "MultimodeTrajectory", "integrate_multimode",
    "period_average",
    # experiments
    "ExperimentError", "SweepSpec", "ScanPoint", "detuning_scan", "PulsePoint",
    "PulseTrainResult", "pulse_train", "ExperimentEstimate", "estimate",
    "FormulationComparison", "compare_formulations", "SCAN_VARIABLES",
    "SCAN_OBSERVABLES",
    # config
    "ConfigError", "RunConfig", "parse_config",
]
