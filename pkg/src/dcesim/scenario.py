"""Cavity scenarios and the material profile they induce.

Two physical setups are modeled, both 1D cavities with an optional conserved
transverse wavenumber k_perp:

* WallScenario: a massive-medium wall at x < delta(t) (and a static one at
  x > L) sweeps into an empty cavity. The wall medium has permittivity eps1
  and squared mass m2; the cavity region has eps0 and zero mass.

* PlasmaScenario: a thin semiconductor slab [l, l + delta] inside a cavity
  with ideal mirrors at x = 0, L. A drive (e.g. laser-created carriers) gives
  the slab a time-dependent plasma mass mp2(t) (zero before the drive) and
  optionally a time-dependent permittivity eps1(t).

All quantities are in natural units (hbar = c = 1); an optional length_scale
(meters per unit length) is carried only for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .profiles import ConstantProfile, Profile

ELEMENTARY_CHARGE_NATURAL = 0.30282212088  # sqrt(4 pi alpha), Lorentz-Heaviside


class ScenarioError(ValueError):
    """Raised when a scenario violates its declared invariants."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ScenarioError(msg)


@dataclass(frozen=True)
class WallScenario:
    """Oscillating massive wall sweeping the region 0 <= x <= delta(t)."""

    L: float
    m2: float
    delta_profile: Profile
    eps0: float = 1.0
    eps1: float = 1.0
    k_perp: float = 0.0
    delta_max: float | None = None
    length_scale: float | None = None

    def __post_init__(self) -> None:
        _require(self.L > 0, f"cavity length must be positive, got {self.L}")
        _require(self.m2 > 0, f"wall squared mass must be positive, got {self.m2}")
        _require(self.eps0 > 0, f"eps0 must be positive, got {self.eps0}")
        _require(self.eps1 > 0, f"eps1 must be positive, got {self.eps1}")
        _require(self.k_perp >= 0, f"k_perp must be nonnegative, got {self.k_perp}")
        for name in ("eps0", "eps1", "m2"):
            _require(not isinstance(getattr(self, name), complex),
                     f"complex {name} is unsupported (lossy media are out of scope)")
        if self.delta_max is None:
            object.__setattr__(self, "delta_max", float(self.delta_profile.peak))
        _require(abs(self.delta_profile(0.0)) <= 1e-12 * self.L,
                 "wall displacement must start at delta(0) = 0")
        _require(self.delta_profile.floor >= 0.0,
                 "wall displacement must stay nonnegative")
        _require(self.delta_profile.peak <= self.delta_max + 1e-12 * self.L,
                 "delta profile exceeds delta_max")
        _require(self.delta_max < self.L,
                 f"maximum displacement {self.delta_max} must stay below L = {self.L}")

    @property
    def interfaces(self) -> tuple[float, ...]:
        """x-locations where the t = 0 material is discontinuous."""
        return (0.0, self.L)


@dataclass(frozen=True)
class PlasmaScenario:
    """Thin driven slab [slab_left, slab_left + slab_thickness] in an ideal cavity.

    The plasma mass profile may be given directly (mp2_profile) or derived from
    a carrier-density profile via mp2 = n_e * charge^2 / eff_mass. No model of
    drive propagation or absorption is applied to the conversion.
    """

    L: float
    slab_left: float
    slab_thickness: float
    mp2_profile: Profile | None = None
    eps1_profile: Profile | float = 1.0
    eps0: float = 1.0
    k_perp: float = 0.0
    n_e_profile: Profile | None = None
    charge: float = ELEMENTARY_CHARGE_NATURAL
    eff_mass: float | None = None
    length_scale: float | None = None

    def __post_init__(self) -> None:
        _require(self.L > 0, f"cavity length must be positive, got {self.L}")
        _require(self.eps0 > 0, f"eps0 must be positive, got {self.eps0}")
        _require(self.slab_left >= 0, f"slab_left must be nonnegative, got {self.slab_left}")
        _require(self.slab_thickness > 0,
                 f"slab thickness must be positive, got {self.slab_thickness}")
        _require(self.slab_left + self.slab_thickness <= self.L,
                 "slab must fit inside the cavity (slab_left + thickness <= L)")
        _require(self.slab_thickness / self.L < 0.1,
                 "thin-slab model requires slab_thickness / L < 0.1")
        _require(self.k_perp >= 0, f"k_perp must be nonnegative, got {self.k_perp}")

        if isinstance(self.eps1_profile, (int, float)):
            object.__setattr__(self, "eps1_profile", ConstantProfile(float(self.eps1_profile)))
        if isinstance(self.eps1_profile, complex) or isinstance(self.eps1_profile(0.0), complex):
            raise ScenarioError("complex eps1(t) is unsupported (lossy mirrors are out of scope)")
        _require(self.eps1_profile.floor > 0.0, "eps1(t) must stay positive for all t")

        if (self.mp2_profile is None) == (self.n_e_profile is None):
            raise ScenarioError("give exactly one of mp2_profile or n_e_profile")
        if self.n_e_profile is not None:
            _require(self.eff_mass is not None and self.eff_mass > 0,
                     "carrier-density drive needs a positive eff_mass")
            _require(self.n_e_profile.floor >= 0.0, "carrier density must stay nonnegative")
            scale = self.charge**2 / self.eff_mass
            prof = self.n_e_profile
            object.__setattr__(self, "mp2_profile", _ScaledProfile(prof, scale))
        _require(abs(self.mp2_profile(0.0)) <= 1e-12, "plasma mass must start at mp2(0) = 0")
        _require(self.mp2_profile.floor >= -1e-12, "mp2(t) must stay nonnegative")

    @property
    def eps1_0(self) -> float:
        """Slab permittivity before the drive."""
        return float(self.eps1_profile(0.0))

    @property
    def interfaces(self) -> tuple[float, ...]:
        return (0.0, self.slab_left, self.slab_left + self.slab_thickness, self.L)


@dataclass(frozen=True)
class _ScaledProfile:
    """profile(t) * scale; used for the carrier-density -> mp2 conversion."""

    base: Profile
    scale: float

    def __call__(self, t):
        return self.base(t) * self.scale

    @property
    def peak(self) -> float:
        return self.base.peak * self.scale

    @property
    def floor(self) -> float:
        return self.base.floor * self.scale

    @property
    def period(self):
        return self.base.period


Scenario = Union[WallScenario, PlasmaScenario]


@dataclass(frozen=True)
class SeparableFactors:
    """Time factors for materials whose change is uniform over a fixed region.

    For such materials G^eps_ab(t) = 0.5 w_a w_b c_eps(t) * Int_region f_a f_b
    and G^m_ab(t) = 0.5 c_m(t) * Int_region f_a f_b, so the spatial overlap can
    be integrated once per mode pair.
    """

    region: tuple[float, float]
    c_eps: Callable[[float], float]
    c_m: Callable[[float], float]


@dataclass(frozen=True)
class MaterialProfile:
    """Material fields epsilon(x, t), m^2(x, t) and their change since t = 0.

    delta_region(t) lists the x-intervals where the material differs from its
    initial state; inv_eps_delta is the direct difference of reciprocal
    permittivities 1/eps(x, t) - 1/eps(x, 0) (never formed by subtracting
    large reciprocals of a small difference).
    """

    eps_at: Callable[[np.ndarray, float], np.ndarray]
    m2_at: Callable[[np.ndarray, float], np.ndarray]
    delta_region: Callable[[float], tuple[tuple[float, float], ...]]
    inv_eps_delta: Callable[[np.ndarray, float], np.ndarray]
    m2_delta: Callable[[np.ndarray, float], np.ndarray]
    interfaces: tuple[float, ...]
    separable: SeparableFactors | None = None


def material_of(scenario: Scenario) -> MaterialProfile:
    """Build the MaterialProfile induced by a scenario.

    The returned evaluators validate the scenario invariants at call time:
    wall displacement outside [0, delta_max] and non-positive permittivity
    raise ScenarioError.
    """
    if isinstance(scenario, WallScenario):
        return _wall_material(scenario)
    if isinstance(scenario, PlasmaScenario):
        return _plasma_material(scenario)
    raise TypeError(f"unsupported scenario type {type(scenario).__name__}")


def _wall_material(sc: WallScenario) -> MaterialProfile:
    def delta_at(t: float) -> float:
        d = float(sc.delta_profile(t))
        if not -1e-12 * sc.L <= d <= sc.delta_max + 1e-12 * sc.L:
            raise ScenarioError(
                f"wall displacement delta({t}) = {d} outside [0, {sc.delta_max}]"
            )
        return min(max(d, 0.0), sc.delta_max)

    def eps_at(x, t: float):
        x = np.asarray(x, dtype=float)
        inside_wall = (x < delta_at(t)) | (x > sc.L)
        return np.where(inside_wall, sc.eps1, sc.eps0)

    def m2_at(x, t: float):
        x = np.asarray(x, dtype=float)
        inside_wall = (x < delta_at(t)) | (x > sc.L)
        return np.where(inside_wall, sc.m2, 0.0)

    def delta_region(t: float) -> tuple[tuple[float, float], ...]:
        d = delta_at(t)
        return ((0.0, d),) if d > 0.0 else ()

    def inv_eps_delta(x, t: float):
        return 1.0 / eps_at(x, t) - 1.0 / eps_at(x, 0.0)

    def m2_delta(x, t: float):
        return m2_at(x, t) - m2_at(x, 0.0)

    return MaterialProfile(
        eps_at=eps_at,
        m2_at=m2_at,
        delta_region=delta_region,
        inv_eps_delta=inv_eps_delta,
        m2_delta=m2_delta,
        interfaces=sc.interfaces,
    )


def _plasma_material(sc: PlasmaScenario) -> MaterialProfile:
    lo, hi = sc.slab_left, sc.slab_left + sc.slab_thickness
    eps1_0 = sc.eps1_0

    def eps1_at(t: float) -> float:
        e1 = float(sc.eps1_profile(t))
        if e1 <= 0.0:
            raise ScenarioError(f"eps1({t}) = {e1} must be positive")
        return e1

    def eps_at(x, t: float):
        x = np.asarray(x, dtype=float)
        return np.where((x >= lo) & (x <= hi), eps1_at(t), sc.eps0)

    def m2_at(x, t: float):
        x = np.asarray(x, dtype=float)
        return np.where((x >= lo) & (x <= hi), float(sc.mp2_profile(t)), 0.0)

    def delta_region(t: float) -> tuple[tuple[float, float], ...]:
        return ((lo, hi),)

    def inv_eps_delta(x, t: float):
        x = np.asarray(x, dtype=float)
        dinv = 1.0 / eps1_at(t) - 1.0 / eps1_0
        return np.where((x >= lo) & (x <= hi), dinv, 0.0)

    def m2_delta(x, t: float):
        x = np.asarray(x, dtype=float)
        return np.where((x >= lo) & (x <= hi), float(sc.mp2_profile(t)), 0.0)

    separable = SeparableFactors(
        region=(lo, hi),
        c_eps=lambda t: eps1_0**2 * (1.0 / eps1_at(t) - 1.0 / eps1_0),
        c_m=lambda t: float(sc.mp2_profile(t)),
    )
    return MaterialProfile(
        eps_at=eps_at,
        m2_at=m2_at,
        delta_region=delta_region,
        inv_eps_delta=inv_eps_delta,
        m2_delta=m2_delta,
        interfaces=sc.interfaces,
        separable=separable,
    )
