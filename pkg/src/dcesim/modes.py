"""Initial-mode quantization: solve the t = 0 instantaneous eigenproblem.

The field is expanded in the eigenmodes of the cavity as prepared, i.e. the
solutions of

    [-d^2/dx^2 + k_perp^2 + m^2(x, 0)] f(x) = eps(x, 0) w^2 f(x)

with the normalization Int eps(x, 0) f^2 dx = 1/(2 w).  Both scenarios reduce
to piecewise trigonometric/exponential solutions matched by continuity of f
and f' at the material interfaces (the gradient term of the Lagrangian has a
uniform coefficient, so f' carries no jump):

wall (barriers at x < 0 and x > L, cavity in between)

        C e^{|k'| x}   |  A sin k(x + xi)  |  B e^{-|k'| (x - L)}
    ----------------- 0 ----------------- L ------------------>  x

    with |k'|^2 = m^2 + k_perp^2 - eps1 w^2 > 0 (evanescent barrier),
    tan(k xi) = k / |k'|, and the quantization k (L + 2 xi) = n pi.

plasma (ideal mirrors at x = 0, L; slab on [l, l + d])

        D sin k x  |  B e^{i k' x} + C e^{-i k' x}  |  A sin k(x - L)
    0 ------------ l ---------------------------- l+d ------------ L

    with k'^2 = eps1(0) w^2 - k_perp^2 (the slab has no plasma mass yet at
    t = 0) and the quantization from a transfer-matrix sweep f(L; k) = 0.

Roots of the matching determinant are located by scanning a uniform k-grid of
step pi/(8 L) for sign changes and refining each bracket to 1e-12 relative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .scenario import PlasmaScenario, Scenario, WallScenario

_ROOT_RTOL = 1e-12
_SCAN_STEPS_PER_PI = 8  # grid step pi / (8 L)


class ModeSolverError(RuntimeError):
    """Bracket exhaustion, near-degenerate roots, or an unnormalizable mode."""


@dataclass(frozen=True)
class Mode:
    """One initial cavity mode.

    Amplitudes live in `amps` keyed by region letter; `slab_state` stores
    (f(l), f'(l)) for the plasma slab so evaluation stays well-conditioned
    when the slab wavenumber passes through zero.  r_k = k^2 / (eps0 w0^2)
    is the longitudinal fraction of the mode energy, in (0, 1].
    """

    index: int
    k: float
    k_prime: complex
    k_perp: float
    omega0: float
    xi: float
    r_k: float
    amps: dict[str, complex]
    norm_residual: float
    slab_state: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.r_k <= 1.0 + 1e-12:
            raise ModeSolverError(f"r_k = {self.r_k} outside (0, 1]")


# ---------------------------------------------------------------------------
# dispersion helpers

def _wall_kappa2(sc: WallScenario, k: float) -> float:
    """|k'|^2 in the barrier; positive means evanescent (bound mode)."""
    w2 = (k * k + sc.k_perp**2) / sc.eps0
    return sc.m2 + sc.k_perp**2 - sc.eps1 * w2


def _wall_k_cut(sc: WallScenario) -> float:
    """k above which the barrier no longer binds the mode."""
    val = (sc.eps0 / sc.eps1) * (sc.m2 + sc.k_perp**2) - sc.k_perp**2
    return np.sqrt(val) if val > 0 else 0.0


def _plasma_q2(sc: PlasmaScenario, k: float) -> float:
    """Slab wavenumber^2 at t = 0 (no plasma mass yet)."""
    w2 = (k * k + sc.k_perp**2) / sc.eps0
    return sc.eps1_0 * w2 - sc.k_perp**2


def _cos_sinc(q2: float, d: float) -> tuple[float, float]:
    """(cos(q d), sin(q d)/q) continued through q^2 <= 0.

    These solve f'' = -q2 f with initial data (1, 0) and (0, 1); the pair is
    analytic in q2, so a short series bridges the q -> 0 degeneracy.
    """
    z2 = q2 * d * d
    if abs(z2) < 1e-10:
        c = 1.0 - z2 / 2.0 + z2 * z2 / 24.0
        s = d * (1.0 - z2 / 6.0 + z2 * z2 / 120.0)
        return c, s
    if q2 > 0.0:
        q = np.sqrt(q2)
        return np.cos(q * d), np.sin(q * d) / q
    kappa = np.sqrt(-q2)
    return np.cosh(kappa * d), np.sinh(kappa * d) / kappa


def _propagate(f: float, df: float, q2: float, d: float) -> tuple[float, float]:
    """Advance (f, f') a distance d through a region with f'' = -q2 f."""
    c, s = _cos_sinc(q2, d)
    return f * c + df * s, -q2 * f * s + df * c


# ---------------------------------------------------------------------------
# matching determinants

def _wall_det(sc: WallScenario, k: float) -> float:
    kappa = np.sqrt(_wall_kappa2(sc, k))
    return np.sin(k * sc.L + 2.0 * np.arctan2(k, kappa))


def _plasma_det(sc: PlasmaScenario, k: float) -> float:
    lo, d = sc.slab_left, sc.slab_thickness
    f, df = np.sin(k * lo), k * np.cos(k * lo)
    f, df = _propagate(f, df, _plasma_q2(sc, k), d)
    f, _ = _propagate(f, df, k * k, sc.L - lo - d)
    return f


def _scan_roots(det: Callable[[float], float], k_lo: float, k_hi: float,
                dk: float, n_wanted: int) -> list[float]:
    """Bracket sign changes of det on a uniform grid and refine with brentq."""
    roots: list[float] = []
    k_prev = k_lo
    v_prev = det(k_prev)
    k = k_lo + dk
    while k <= k_hi + 0.5 * dk and len(roots) < n_wanted:
        v = det(min(k, k_hi))
        if v == 0.0:
            roots.append(min(k, k_hi))
        elif v_prev * v < 0.0:
            r = brentq(det, k_prev, min(k, k_hi), xtol=1e-300, rtol=max(_ROOT_RTOL, 8.9e-16))
            roots.append(r)
        if len(roots) >= 2 and roots[-1] - roots[-2] < 0.5 * dk:
            raise ModeSolverError(
                f"near-degenerate roots at k = {roots[-2]:.12g}, {roots[-1]:.12g} "
                f"(spacing below half the scan step {dk:.3g})"
            )
        k_prev, v_prev = min(k, k_hi), v
        k += dk
    return roots


# ---------------------------------------------------------------------------
# mode construction

def solve_modes(scenario: Scenario, n_modes: int, *, quad_rtol: float = 1e-10) -> tuple[Mode, ...]:
    """Solve for the n_modes lowest-frequency initial modes, normalized.

    Raises ModeSolverError when the scan exhausts its bracket (e.g. a wall
    barrier that stops binding modes below the requested count) or when two
    roots come closer than half the scan step.
    """
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    if isinstance(scenario, WallScenario):
        return _solve_wall(scenario, n_modes, quad_rtol)
    if isinstance(scenario, PlasmaScenario):
        return _solve_plasma(scenario, n_modes, quad_rtol)
    raise TypeError(f"unsupported scenario type {type(scenario).__name__}")


def _omega0(sc: Scenario, k: float) -> float:
    return np.sqrt((k * k + sc.k_perp**2) / sc.eps0)


def _solve_wall(sc: WallScenario, n_modes: int, quad_rtol: float) -> tuple[Mode, ...]:
    dk = np.pi / (_SCAN_STEPS_PER_PI * sc.L)
    k_cut = _wall_k_cut(sc)
    if k_cut <= 0.0:
        raise ModeSolverError("barrier binds no modes (eps1 w^2 exceeds m^2 + k_perp^2 at all k)")
    roots = _scan_roots(lambda k: _wall_det(sc, k), dk / 64.0, k_cut * (1.0 - 1e-12), dk, n_modes)
    if len(roots) < n_modes:
        raise ModeSolverError(
            f"found {len(roots)} wall modes below the barrier cutoff k < {k_cut:.6g} "
            f"(scanned [0, {k_cut:.6g}] in steps of {dk:.3g}); requested {n_modes}"
        )
    modes = []
    for n, k in enumerate(roots, start=1):
        kappa = np.sqrt(_wall_kappa2(sc, k))
        phi = np.arctan2(k, kappa)
        xi = phi / k
        w0 = _omega0(sc, k)
        # cavity integral of sin^2(k x + phi), closed form
        i_cav = sc.L / 2.0 - (np.sin(2.0 * (k * sc.L + phi)) - np.sin(2.0 * phi)) / (4.0 * k)
        c_raw = np.sin(phi)
        b_raw = np.sin(k * sc.L + phi)
        i_tot = sc.eps0 * i_cav + sc.eps1 * (c_raw**2 + b_raw**2) / (2.0 * kappa)
        scale = 1.0 / np.sqrt(2.0 * w0 * i_tot)
        amps = {"A": scale, "B": scale * b_raw, "C": scale * c_raw}
        mode = Mode(
            index=n, k=k, k_prime=1j * kappa, k_perp=sc.k_perp, omega0=w0, xi=xi,
            r_k=k * k / (sc.eps0 * w0 * w0), amps=amps, norm_residual=0.0,
        )
        object.__setattr__(mode, "norm_residual", _norm_residual(mode, sc, quad_rtol))
        modes.append(mode)
    return tuple(modes)


def _solve_plasma(sc: PlasmaScenario, n_modes: int, quad_rtol: float) -> tuple[Mode, ...]:
    dk = np.pi / (_SCAN_STEPS_PER_PI * sc.L)
    # contrast shifts roots off n pi / L; scan generously past the uniform estimate
    k_hi = (n_modes + 2) * np.pi * max(1.0, np.sqrt(sc.eps0 / sc.eps1_0)) / sc.L * 2.0
    roots = _scan_roots(lambda k: _plasma_det(sc, k), dk / 64.0, k_hi, dk, n_modes)
    if len(roots) < n_modes:
        raise ModeSolverError(
            f"found {len(roots)} plasma modes scanning k in [0, {k_hi:.6g}] "
            f"in steps of {dk:.3g}; requested {n_modes}"
        )
    lo, d = sc.slab_left, sc.slab_thickness
    modes = []
    for n, k in enumerate(roots, start=1):
        q2 = _plasma_q2(sc, k)
        w0 = _omega0(sc, k)
        f1, df1 = np.sin(k * lo), k * np.cos(k * lo)
        f2, df2 = _propagate(f1, df1, q2, d)
        fL, dfL = _propagate(f2, df2, k * k, sc.L - lo - d)
        a_raw = dfL / k  # region-3 form A sin k(x - L); fL = 0 at a root
        norm = _plasma_norm_integral(sc, k, q2, (f1, df1), quad_rtol)
        scale = 1.0 / np.sqrt(2.0 * w0 * norm)
        kp = np.sqrt(complex(q2))
        if abs(kp) * max(lo + d, 1.0) > 1e-8:
            phase = np.exp(1j * kp * lo)
            b_amp = 0.5 * (f1 + df1 / (1j * kp)) / phase
            c_amp = 0.5 * (f1 - df1 / (1j * kp)) * phase
        else:
            b_amp = c_amp = complex(float("nan"), 0.0)
        amps = {
            "D": scale,
            "A": scale * a_raw,
            "B": scale * b_amp,
            "C": scale * c_amp,
        }
        mode = Mode(
            index=n, k=k, k_prime=kp, k_perp=sc.k_perp, omega0=w0,
            xi=n * np.pi / k - sc.L + d,
            r_k=k * k / (sc.eps0 * w0 * w0), amps=amps, norm_residual=0.0,
            slab_state=(scale * f1, scale * df1),
        )
        object.__setattr__(mode, "norm_residual", _norm_residual(mode, sc, quad_rtol))
        modes.append(mode)
    return tuple(modes)


def _plasma_norm_integral(sc: PlasmaScenario, k: float, q2: float,
                          state_l: tuple[float, float], quad_rtol: float) -> float:
    """Int_0^L eps(x, 0) f_raw^2 dx with the slab interfaces as panel edges."""
    lo, d = sc.slab_left, sc.slab_thickness
    f1, df1 = state_l

    def f_slab(x: float) -> float:
        c, s = _cos_sinc(q2, x - lo)
        return f1 * c + df1 * s

    f2, df2 = _propagate(f1, df1, q2, d)

    def f_right(x: float) -> float:
        c, s = _cos_sinc(k * k, x - lo - d)
        return f2 * c + df2 * s

    total = 0.0
    if lo > 0.0:
        total += sc.eps0 * quad(lambda x: np.sin(k * x) ** 2, 0.0, lo, epsrel=quad_rtol)[0]
    total += sc.eps1_0 * quad(lambda x: f_slab(x) ** 2, lo, lo + d, epsrel=quad_rtol)[0]
    if lo + d < sc.L:
        total += sc.eps0 * quad(lambda x: f_right(x) ** 2, lo + d, sc.L, epsrel=quad_rtol)[0]
    return total


# ---------------------------------------------------------------------------
# evaluation and checks

def eval_mode(mode: Mode, scenario: Scenario, x) -> np.ndarray:
    """Evaluate the initial mode function f0(x), vectorized over x."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if isinstance(scenario, WallScenario):
        out = _eval_wall(mode, scenario, x)
    elif isinstance(scenario, PlasmaScenario):
        out = _eval_plasma(mode, scenario, x)
    else:
        raise TypeError(f"unsupported scenario type {type(scenario).__name__}")
    return out[0] if scalar else out


def _eval_wall(m: Mode, sc: WallScenario, x: np.ndarray) -> np.ndarray:
    kappa = m.k_prime.imag
    a, b, c = (m.amps[key].real for key in ("A", "B", "C"))
    out = np.empty_like(x)
    left = x < 0.0
    right = x > sc.L
    mid = ~(left | right)
    out[left] = c * np.exp(kappa * x[left])
    out[mid] = a * np.sin(m.k * (x[mid] + m.xi))
    out[right] = b * np.exp(-kappa * (x[right] - sc.L))
    return out


def _eval_plasma(m: Mode, sc: PlasmaScenario, x: np.ndarray) -> np.ndarray:
    lo, d = sc.slab_left, sc.slab_thickness
    q2 = (m.k_prime**2).real
    f1, df1 = m.slab_state
    out = np.empty_like(x)
    in1 = x < lo
    in2 = (x >= lo) & (x <= lo + d)
    in3 = x > lo + d
    out[in1] = m.amps["D"].real * np.sin(m.k * x[in1])
    for i in np.nonzero(in2)[0]:
        c, s = _cos_sinc(q2, x[i] - lo)
        out[i] = f1 * c + df1 * s
    out[in3] = m.amps["A"].real * np.sin(m.k * (x[in3] - sc.L))
    return out


def _norm_residual(mode: Mode, scenario: Scenario, quad_rtol: float) -> float:
    """|2 w0 Int eps f0^2 - 1| via independent quadrature (analytic tails)."""
    return float(abs(2.0 * mode.omega0 * _pair_integral(mode, mode, scenario, quad_rtol) - 1.0))


def _pair_integral(ma: Mode, mb: Mode, scenario: Scenario, quad_rtol: float) -> float:
    """Int eps(x, 0) f0_a f0_b dx over the whole domain."""
    if isinstance(scenario, WallScenario):
        ka, kb = ma.k_prime.imag, mb.k_prime.imag
        tails = scenario.eps1 * (
            ma.amps["C"].real * mb.amps["C"].real / (ka + kb)
            + ma.amps["B"].real * mb.amps["B"].real / (ka + kb)
        )
        body = quad(
            lambda x: scenario.eps0 * float(eval_mode(ma, scenario, x)) * float(eval_mode(mb, scenario, x)),
            0.0, scenario.L, epsrel=quad_rtol, limit=200,
        )[0]
        return body + tails
    total = 0.0
    pts = scenario.interfaces
    for x0, x1 in zip(pts[:-1], pts[1:]):
        if x1 <= x0:
            continue
        eps = scenario.eps1_0 if (x0 >= scenario.slab_left - 1e-15 and
                                  x1 <= scenario.slab_left + scenario.slab_thickness + 1e-15) else scenario.eps0
        total += eps * quad(
            lambda x: float(eval_mode(ma, scenario, x)) * float(eval_mode(mb, scenario, x)),
            x0, x1, epsrel=quad_rtol, limit=200,
        )[0]
    return total


def orthonormality_check(modes: tuple[Mode, ...], scenario: Scenario, *,
                         quad_rtol: float = 1e-10) -> np.ndarray:
    """Residual matrix R_ab = |2 w0_a Int eps f0_a f0_b dx - delta_ab|."""
    n = len(modes)
    res = np.zeros((n, n))
    for a in range(n):
        for b in range(a, n):
            val = _pair_integral(modes[a], modes[b], scenario, quad_rtol)
            res[a, b] = abs(2.0 * modes[a].omega0 * val - (1.0 if a == b else 0.0))
            res[b, a] = abs(2.0 * modes[b].omega0 * val - (1.0 if a == b else 0.0))
    return res
