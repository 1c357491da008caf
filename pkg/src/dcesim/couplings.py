"""Time-dependent coupling coefficients of the photon-pair Hamiltonian.

With the field frozen in the initial-mode basis, a changing material adds to
the Hamiltonian the quadratic form

    H(t) = sum_a w_a(t) a_a^+ a_a + sum_{a != b} mu_ab(t) a_a^+ a_b
         + i sum_{ab} [ g_ab(t) a_a^+ a_b^+ - g_ab^*(t) a_a a_b ]

whose coefficients reduce to two overlap integrals over the changed region
dV(t):

    G^eps_ab(t) = (1/2) w_a w_b Int_dV eps^2(x,0) [1/eps(x,t) - 1/eps(x,0)] f_a f_b dx
    G^m_ab(t)   = (1/2) Int_dV [m^2(x,t) - m^2(x,0)] f_a f_b dx

    mu_ab = 2 (G^eps_ab + G^m_ab)          (diagonal: delta-w_a = mu_aa)
    g_ab  = -i (-G^eps_ab + G^m_ab)

Closed forms for the two scenarios and the instantaneous-mode transcription
gbar = [i / 2 wbar] dg/dt are provided alongside the direct quadrature route;
the two routes are kept independent so they can cross-check each other.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import PchipInterpolator

from .modes import Mode, eval_mode
from .scenario import MaterialProfile, PlasmaScenario, Scenario, WallScenario, material_of

PROVENANCES = ("quadrature", "wallClosedForm", "plasmaClosedForm",
               "instantaneousMode", "syntheticDrive")


class CouplingError(RuntimeError):
    """Coupling evaluation outside its validity domain or failed construction."""


class QuadratureError(CouplingError):
    """Adaptive quadrature failed to converge within its panel budget."""


@dataclass(frozen=True)
class CouplingSet:
    """Hamiltonian coefficients as functions of time for a fixed mode set.

    omega_at(a, t) already contains the base frequency: w_a(t) = w0_a + mu_aa(t).
    mu_at is real symmetric, g_at complex symmetric; every coefficient vanishes
    at t = 0.  Evaluation past t_max raises CouplingError (grid-backed sets do
    not extrapolate).
    """

    omega0s: tuple[float, ...]
    provenance: str
    t_max: float
    _mu_fn: Callable[[int, int, float], float]
    _g_fn: Callable[[int, int, float], complex]

    def __post_init__(self) -> None:
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def n_modes(self) -> int:
        return len(self.omega0s)

    def _check(self, a: int, t: float) -> None:
        if not 0 <= a < self.n_modes:
            raise IndexError(f"mode index {a} outside 0..{self.n_modes - 1}")
        if t > self.t_max * (1.0 + 1e-12):
            raise CouplingError(
                f"t = {t} beyond the coupling domain t_max = {self.t_max} ({self.provenance})"
            )

    def omega_at(self, a: int, t: float) -> float:
        self._check(a, t)
        return self.omega0s[a] + self._mu_fn(a, a, t)

    def delta_omega_at(self, a: int, t: float) -> float:
        self._check(a, t)
        return self._mu_fn(a, a, t)

    def mu_at(self, a: int, b: int, t: float) -> float:
        self._check(a, t)
        self._check(b, t)
        return self._mu_fn(*sorted((a, b)), t)

    def g_at(self, a: int, b: int, t: float) -> complex:
        self._check(a, t)
        self._check(b, t)
        return self._g_fn(*sorted((a, b)), t)


# ---------------------------------------------------------------------------
# direct quadrature route

def _quad_checked(fn: Callable[[float], float], x0: float, x1: float, rtol: float) -> float:
    out = quad(fn, x0, x1, epsrel=rtol, limit=200, full_output=1)
    if len(out) > 3:  # (val, err, info, message [, explain])
        raise QuadratureError(f"quadrature on [{x0}, {x1}] did not converge: {out[3]}")
    return out[0]


def _split_panels(lo: float, hi: float, interfaces: Sequence[float]) -> list[tuple[float, float]]:
    """Cut [lo, hi] at every interior material interface."""
    cuts = sorted({lo, hi, *(p for p in interfaces if lo < p < hi)})
    return [(a, b) for a, b in zip(cuts[:-1], cuts[1:]) if b > a]


def g_eps(ma: Mode, mb: Mode, scenario: Scenario, t: float, *,
          material: MaterialProfile | None = None, quad_rtol: float = 1e-8) -> float:
    """G^eps_ab(t) by adaptive quadrature over the changed region.

    The reciprocal-permittivity change enters as the direct bracketed
    difference 1/eps(x,t) - 1/eps(x,0) evaluated by the material profile, so
    no cancellation of large terms occurs.
    """
    mat = material if material is not None else material_of(scenario)

    def integrand(x: float) -> float:
        fa = float(eval_mode(ma, scenario, x))
        fb = float(eval_mode(mb, scenario, x))
        return float(mat.eps_at(x, 0.0) ** 2 * mat.inv_eps_delta(x, t)) * fa * fb

    total = 0.0
    for lo, hi in mat.delta_region(t):
        for a, b in _split_panels(lo, hi, mat.interfaces):
            total += _quad_checked(integrand, a, b, quad_rtol)
    return 0.5 * ma.omega0 * mb.omega0 * total


def g_m(ma: Mode, mb: Mode, scenario: Scenario, t: float, *,
        material: MaterialProfile | None = None, quad_rtol: float = 1e-8) -> float:
    """G^m_ab(t) by adaptive quadrature over the changed region."""
    mat = material if material is not None else material_of(scenario)

    def integrand(x: float) -> float:
        fa = float(eval_mode(ma, scenario, x))
        fb = float(eval_mode(mb, scenario, x))
        return float(mat.m2_delta(x, t)) * fa * fb

    total = 0.0
    for lo, hi in mat.delta_region(t):
        for a, b in _split_panels(lo, hi, mat.interfaces):
            total += _quad_checked(integrand, a, b, quad_rtol)
    return 0.5 * total


def _combine(geps: Callable[[int, int, float], float],
             gm: Callable[[int, int, float], float]) -> tuple[Callable, Callable]:
    def mu_fn(a: int, b: int, t: float) -> float:
        return 2.0 * (geps(a, b, t) + gm(a, b, t))

    def g_fn(a: int, b: int, t: float) -> complex:
        return -1j * (-geps(a, b, t) + gm(a, b, t))

    return mu_fn, g_fn


def couplings_by_quadrature(modes: Sequence[Mode], scenario: Scenario,
                            times: Sequence[float] | None = None, *,
                            quad_rtol: float = 1e-8) -> CouplingSet:
    """CouplingSet from the overlap integrals, lazily cached per mode pair.

    Materials whose change is spatially uniform over a fixed region (the
    plasma slab) factor into one overlap integral per pair times exact scalar
    time factors; everything else is evaluated on the supplied time grid and
    interpolated between grid points by monotone cubics.
    """
    modes = tuple(modes)
    mat = material_of(scenario)

    if mat.separable is not None:
        lo, hi = mat.separable.region
        cache: dict[tuple[int, int], float] = {}

        def overlap(a: int, b: int) -> float:
            key = (a, b)
            if key not in cache:
                def integrand(x: float) -> float:
                    return float(eval_mode(modes[a], scenario, x)) * float(eval_mode(modes[b], scenario, x))
                cache[key] = sum(
                    _quad_checked(integrand, p, q, quad_rtol)
                    for p, q in _split_panels(lo, hi, mat.interfaces)
                )
            return cache[key]

        def geps_fn(a: int, b: int, t: float) -> float:
            return 0.5 * modes[a].omega0 * modes[b].omega0 * mat.separable.c_eps(t) * overlap(a, b)

        def gm_fn(a: int, b: int, t: float) -> float:
            return 0.5 * mat.separable.c_m(t) * overlap(a, b)

        mu_fn, g_fn = _combine(geps_fn, gm_fn)
        return CouplingSet(
            omega0s=tuple(m.omega0 for m in modes), provenance="quadrature",
            t_max=np.inf, _mu_fn=mu_fn, _g_fn=g_fn,
        )

    if times is None:
        raise CouplingError("non-separable material needs an explicit time grid")
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) < 4 or np.any(np.diff(times) <= 0):
        raise CouplingError("time grid must be increasing with >= 4 points")
    if times[0] != 0.0:
        raise CouplingError("time grid must start at t = 0 (drive onset)")

    interps: dict[tuple[int, int], tuple[PchipInterpolator, PchipInterpolator]] = {}

    def pair_interp(a: int, b: int) -> tuple[PchipInterpolator, PchipInterpolator]:
        key = (a, b)
        if key not in interps:
            ge = np.array([g_eps(modes[a], modes[b], scenario, t, material=mat, quad_rtol=quad_rtol)
                           for t in times])
            gm_ = np.array([g_m(modes[a], modes[b], scenario, t, material=mat, quad_rtol=quad_rtol)
                            for t in times])
            interps[key] = (PchipInterpolator(times, ge), PchipInterpolator(times, gm_))
        return interps[key]

    def geps_fn(a: int, b: int, t: float) -> float:
        return float(pair_interp(a, b)[0](t))

    def gm_fn(a: int, b: int, t: float) -> float:
        return float(pair_interp(a, b)[1](t))

    mu_fn, g_fn = _combine(geps_fn, gm_fn)
    return CouplingSet(
        omega0s=tuple(m.omega0 for m in modes), provenance="quadrature",
        t_max=float(times[-1]), _mu_fn=mu_fn, _g_fn=g_fn,
    )


# ---------------------------------------------------------------------------
# closed forms

def _diagonal_only(a: int, b: int, provenance: str) -> None:
    if a != b:
        raise CouplingError(
            f"{provenance} provides diagonal coefficients only; use the "
            "quadrature route for intermode couplings")


def wall_closed_form(modes: Sequence[Mode], scenario: WallScenario) -> CouplingSet:
    """Diagonal wall couplings from the elementary antiderivative.

    delta-w_k(t) = 2i g_kk(t) = m^2 A^2 [ d/2 - (sin 2k(d+xi) - sin 2k xi)/(4k) ],
    d = delta(t).  Limits: delta-w -> w0 (d/L) r_k for m d << 1 and
    -> w0 (d/L) r_k (m d)^2 / 3 for m d >> 1 (diverging with the wall mass, so
    the sudden-wall idealization m -> infinity is only usable as an asymptotic
    statement).  The dielectric contribution is omitted: it is suppressed by
    eps1 w^2 / m^2 relative to the mass term.  Off-diagonal access raises
    CouplingError: these closed forms exist for the diagonal only.
    """
    if not isinstance(scenario, WallScenario):
        raise TypeError("wall_closed_form needs a WallScenario")
    modes = tuple(modes)

    def delta_omega(a: int, t: float) -> float:
        m = modes[a]
        d = float(scenario.delta_profile(t))
        amp2 = m.amps["A"].real ** 2
        integral = d / 2.0 - (np.sin(2.0 * m.k * (d + m.xi)) - np.sin(2.0 * m.k * m.xi)) / (4.0 * m.k)
        return scenario.m2 * amp2 * integral

    def mu_fn(a: int, b: int, t: float) -> float:
        _diagonal_only(a, b, "wallClosedForm")
        return delta_omega(a, t)

    def g_fn(a: int, b: int, t: float) -> complex:
        _diagonal_only(a, b, "wallClosedForm")
        return -0.5j * delta_omega(a, t)

    return CouplingSet(
        omega0s=tuple(m.omega0 for m in modes), provenance="wallClosedForm",
        t_max=np.inf, _mu_fn=mu_fn, _g_fn=g_fn,
    )


def plasma_closed_form(modes: Sequence[Mode], scenario: PlasmaScenario) -> CouplingSet:
    """Diagonal thin-slab couplings.

    With the placement factor s_k = sin^2(k l) (or (k d)^2 / 3 when the slab
    sits at the mirror, l = 0):

        d_eps(t) = -[eps1(0)/eps0] [1 - eps1(0)/eps1(t)] s_k d
        d_m(t)   =  [mp2(t) / (eps0 w0^2)] s_k d
        delta-w_k(t) = w0 (d_eps + d_m) / L
        g_kk(t)      = -(i/2) w0 (-d_eps + d_m) / L

    Warns when the slab stops being thin for the drive, |k'(t)| d > 0.3.
    Off-diagonal access raises CouplingError: these closed forms exist for
    the diagonal only.
    """
    if not isinstance(scenario, PlasmaScenario):
        raise TypeError("plasma_closed_form needs a PlasmaScenario")
    modes = tuple(modes)
    eps0, eps1_0 = scenario.eps0, scenario.eps1_0
    ell, d, L = scenario.slab_left, scenario.slab_thickness, scenario.L

    kp2_candidates = []
    for e1 in (scenario.eps1_profile.floor, scenario.eps1_profile.peak):
        for mp2 in (0.0, scenario.mp2_profile.peak):
            for m in modes:
                kp2_candidates.append(e1 * m.omega0**2 - scenario.k_perp**2 - mp2)
    kp_d = max(np.sqrt(abs(v)) * d for v in kp2_candidates)
    if kp_d > 0.3:
        warnings.warn(
            f"thin-slab closed form stretched: max |k'(t)| d = {kp_d:.3f} > 0.3",
            stacklevel=2,
        )

    def placement(m: Mode) -> float:
        if ell == 0.0:
            return (m.k * d) ** 2 / 3.0
        return float(np.sin(m.k * ell) ** 2)

    def deltas(a: int, t: float) -> tuple[float, float]:
        m = modes[a]
        s = placement(m)
        e1_t = float(scenario.eps1_profile(t))
        d_eps = -(eps1_0 / eps0) * (1.0 - eps1_0 / e1_t) * s * d
        d_m = float(scenario.mp2_profile(t)) / (eps0 * m.omega0**2) * s * d
        return d_eps, d_m

    def mu_fn(a: int, b: int, t: float) -> float:
        _diagonal_only(a, b, "plasmaClosedForm")
        d_eps, d_m = deltas(a, t)
        return modes[a].omega0 * (d_eps + d_m) / L

    def g_fn(a: int, b: int, t: float) -> complex:
        _diagonal_only(a, b, "plasmaClosedForm")
        d_eps, d_m = deltas(a, t)
        return -0.5j * modes[a].omega0 * (-d_eps + d_m) / L

    return CouplingSet(
        omega0s=tuple(m.omega0 for m in modes), provenance="plasmaClosedForm",
        t_max=np.inf, _mu_fn=mu_fn, _g_fn=g_fn,
    )


def synthetic_drive(omega0: float, mean_delta_omega: float, Omega: float) -> CouplingSet:
    """Single-mode test drive delta-w(t) = <dw> (1 - cos Om t), g = -i delta-w / 2.

    This is the conductivity-dominated limit of the physical couplings
    (G^eps = 0), so g is pure negative-imaginary while delta-w grows positive.
    """
    if omega0 <= 0 or Omega <= 0:
        raise ValueError("omega0 and Omega must be positive")

    def mu_fn(a: int, b: int, t: float) -> float:
        return mean_delta_omega * (1.0 - np.cos(Omega * t))

    def g_fn(a: int, b: int, t: float) -> complex:
        return -0.5j * mu_fn(a, b, t)

    return CouplingSet(
        omega0s=(float(omega0),), provenance="syntheticDrive",
        t_max=np.inf, _mu_fn=mu_fn, _g_fn=g_fn,
    )


# ---------------------------------------------------------------------------
# instantaneous-mode transcription and Fourier components

def _fd_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """4th-order centered differences; 2nd-order at and next to the ends."""
    n = len(values)
    if n < 5:
        raise CouplingError("need >= 5 grid points for the interior stencil")
    dv = np.empty_like(values)
    dv[2:-2] = (values[:-4] - 8.0 * values[1:-3] + 8.0 * values[3:-1] - values[4:]) / (12.0 * h)
    dv[1] = (values[2] - values[0]) / (2.0 * h)
    dv[-2] = (values[-1] - values[-3]) / (2.0 * h)
    dv[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h)
    dv[-1] = (3.0 * values[-1] - 4.0 * values[-2] + values[-3]) / (2.0 * h)
    return dv


def instantaneous_from_standard(c: CouplingSet, times: Sequence[float], *,
                                period: float | None = None) -> CouplingSet:
    """Transcribe standard couplings to instantaneous-mode ones on a grid.

    The instantaneous frequency modulation is unchanged (dwbar = dw) while the
    pair coupling becomes gbar_ab(t) = i dg_ab/dt / (w_a(t) + w_b(t)), which on
    the diagonal is the rule gbar = [i / 2 wbar] dg/dt.  dg/dt is taken by
    4th-order centered finite differences (one-sided 2nd order at the grid
    ends) and interpolated by monotone cubics between grid points.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) < 5:
        raise CouplingError("need a 1D grid with >= 5 points")
    h = times[1] - times[0]
    if not np.allclose(np.diff(times), h, rtol=1e-9, atol=0.0):
        raise CouplingError("instantaneous transcription needs a uniform grid")
    if period is not None and h > period / 32.0:
        raise CouplingError(
            f"grid too coarse: {period / h:.1f} points per drive period (need >= 32)"
        )
    if times[-1] > c.t_max:
        raise CouplingError("grid extends beyond the source coupling domain")

    interps: dict[tuple[int, int], tuple[PchipInterpolator, PchipInterpolator]] = {}

    def pair_interp(a: int, b: int) -> tuple[PchipInterpolator, PchipInterpolator]:
        key = (a, b)
        if key not in interps:
            gvals = np.array([c.g_at(a, b, t) for t in times])
            wsum = np.array([c.omega_at(a, t) + c.omega_at(b, t) for t in times])
            gbar = 1j * _fd_derivative(gvals, h) / wsum
            interps[key] = (PchipInterpolator(times, gbar.real),
                            PchipInterpolator(times, gbar.imag))
        return interps[key]

    def mu_fn(a: int, b: int, t: float) -> float:
        return c.mu_at(a, b, t)

    def g_fn(a: int, b: int, t: float) -> complex:
        re, im = pair_interp(a, b)
        return complex(re(t), im(t))

    return CouplingSet(
        omega0s=c.omega0s, provenance="instantaneousMode",
        t_max=float(times[-1]), _mu_fn=mu_fn, _g_fn=g_fn,
    )


class FourierComponents(NamedTuple):
    g_omega: complex
    mean_delta_omega: float


def fourier_component(c: CouplingSet, Omega: float, *, mode: int = 0,
                      quad_rtol: float = 1e-10) -> FourierComponents:
    """Drive-frequency Fourier component of g and the mean of delta-w.

        <g>_Om = (1/T) Int_0^T g(t) e^{+i Om t} dt,   T = 2 pi / Om
        <dw>   = (1/T) Int_0^T delta-w(t) dt

    The phase convention fixes t = 0 at drive onset (couplings vanish there);
    only |<g>_Om| enters photon numbers.  Raises CouplingError when the
    coupling set does not cover one full period.
    """
    if Omega <= 0:
        raise ValueError("Omega must be positive")
    T = 2.0 * np.pi / Omega
    if T > c.t_max * (1.0 + 1e-12):
        raise CouplingError(
            f"one drive period T = {T:.6g} exceeds the coupling domain t_max = {c.t_max:.6g}"
        )
    g_re = _quad_checked(lambda t: (c.g_at(mode, mode, t) * np.exp(1j * Omega * t)).real, 0.0, T, quad_rtol)
    g_im = _quad_checked(lambda t: (c.g_at(mode, mode, t) * np.exp(1j * Omega * t)).imag, 0.0, T, quad_rtol)
    mean_dw = _quad_checked(lambda t: c.delta_omega_at(mode, t), 0.0, T, quad_rtol)
    return FourierComponents(complex(g_re, g_im) / T, mean_dw / T)
