"""Time evolution of the photon-pair dynamics.

A single driven mode evolves by the Bogoliubov coefficients (A, B) of its
annihilation operator, a(t) = A(t) a(0) + B(t)^* a(0)^+, which obey

    dA/dt = -i w(t) A + 2 g(t) B
    dB/dt = +i w(t) B + 2 g(t)^* A ,      A(0) = 1, B(0) = 0,

conserving |A|^2 - |B|^2 = 1.  The photon number created from vacuum is
N = |B|^2 and the state is a squeezed vacuum with r = asinh |B|.

Several coupled modes evolve by matrices (A, B) with

    dA/dt = -i M(t) A + 2 G(t) B
    dB/dt = +i M(t) B + 2 G(t)^* A ,      A(0) = I, B(0) = 0,

M_ab = w0_a d_ab + mu_ab(t), G_ab = g_ab(t), conserving A A^+ - B B^+ = I;
N_a = (B B^+)_aa.

Under the rotating-wave approximation for a periodic drive at Om detuned by
D = Om/2 - w0 - <dw>, the photon number is governed by chi^2 = |2<g>_Om|^2 - D^2:

    N(t) = |2<g>_Om|^2 t^2 * sinh^2(chi t)/(chi t)^2       (chi^2 > 0)
    N(t) = |2<g>_Om|^2 t^2 * sin^2(|chi| t)/(|chi| t)^2    (chi^2 < 0)

with a continuous crossover through chi^2 = 0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .couplings import CouplingSet

__all__ = [
    "EvolutionError", "BogoliubovState", "SqueezeDecomposition", "DriveSpec",
    "RwaSolution", "Trajectory", "MultimodeTrajectory",
    "integrate_master", "integrate_multimode", "rwa_solve",
    "squeeze_of", "photon_number", "period_average",
]


class EvolutionError(RuntimeError):
    """Integration aborted: conservation law violated beyond tolerance."""


class BogoliubovState(NamedTuple):
    """Single-mode state at one instant.

    A multiplies the initial annihilation operator, B the initial creation
    operator; theta is the continuously tracked phase of A (no 2 pi jumps) and
    phase_integral is Int_0^t w(s) ds, so the accumulated interaction phase is
    K = theta + phase_integral / 2.
    """

    t: float
    A: complex
    B: complex
    theta: float
    phase_integral: float

    @property
    def n_gamma(self) -> float:
        return abs(self.B) ** 2

    @property
    def r(self) -> float:
        return float(np.arcsinh(abs(self.B)))

    @property
    def K(self) -> float:
        return self.theta + 0.5 * self.phase_integral

    @property
    def invariant_residual(self) -> float:
        return abs(self.A) ** 2 - abs(self.B) ** 2 - 1.0


@dataclass(frozen=True)
class SqueezeDecomposition:
    """Squeezed-vacuum parameters of a Bogoliubov pair.

    A = e^{i phi_a} cosh r,  B = e^{i phi_b} sinh r, and the complex squeeze
    parameter is lam = r e^{i (phi_a - phi_b)}.  Exact round trip by
    construction; phi_b is set to 0 when B = 0.
    """

    r: float
    phi_a: float
    phi_b: float
    lam: complex

    def to_coefficients(self) -> tuple[complex, complex]:
        return (np.exp(1j * self.phi_a) * np.cosh(self.r),
                np.exp(1j * self.phi_b) * np.sinh(self.r))


def squeeze_of(A: complex, B: complex) -> SqueezeDecomposition:
    r = float(np.arcsinh(abs(B)))
    phi_a = float(np.angle(A))
    phi_b = float(np.angle(B)) if B != 0 else 0.0
    return SqueezeDecomposition(r=r, phi_a=phi_a, phi_b=phi_b,
                                lam=r * np.exp(1j * (phi_a - phi_b)))


def photon_number(B: complex) -> float:
    """Photons created from vacuum in one mode: N = |B|^2."""
    return abs(B) ** 2


# ---------------------------------------------------------------------------
# drives and the rotating-wave approximation

@dataclass(frozen=True)
class DriveSpec:
    """Periodic drive at frequency Omega near twice a mode frequency.

    Exactly one of Omega and Delta must be given; they are linked by the
    shifted two-photon resonance condition

        Omega = 2 (omega0 + mean_delta_omega + Delta),

    i.e. zero detuning sits at twice the time-averaged mode frequency, not at
    2 omega0.  g_omega is the drive-frequency Fourier component of the pair
    coupling (set it from fourier_component when a coupling set is in play).
    n_pulse counts drive periods; t_final = n_pulse * 2 pi / Omega.
    """

    omega0: float
    mean_delta_omega: float = 0.0
    g_omega: complex = 0.0j
    Omega: float | None = None
    Delta: float | None = None
    n_pulse: int = 1

    def __post_init__(self) -> None:
        if (self.Omega is None) == (self.Delta is None):
            raise ValueError("give exactly one of Omega and Delta")
        if self.Omega is None:
            object.__setattr__(
                self, "Omega", 2.0 * (self.omega0 + self.mean_delta_omega + self.Delta))
        else:
            object.__setattr__(
                self, "Delta", 0.5 * self.Omega - self.omega0 - self.mean_delta_omega)
        if self.Omega <= 0:
            raise ValueError(f"drive frequency Omega = {self.Omega} must be positive")
        if self.n_pulse < 1:
            raise ValueError("n_pulse must be >= 1")

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.Omega

    # alias: the drive period is written T in the squeezing formulas
    T = period

    @property
    def t_final(self) -> float:
        return self.n_pulse * self.period

    def with_g_omega(self, g_omega: complex) -> "DriveSpec":
        return DriveSpec(omega0=self.omega0, mean_delta_omega=self.mean_delta_omega,
                         g_omega=complex(g_omega), Omega=self.Omega,
                         n_pulse=self.n_pulse)


def _growth_factor(u: np.ndarray) -> np.ndarray:
    """S(u) with u = chi^2 t^2: sinh^2(sqrt u)/u, continued to u <= 0.

    S(u) = 1 + u/3 + 2 u^2/45 + u^3/315 + ... near u = 0 (used for |u| < 1e-6,
    keeping the amplifying and oscillating branches continuous to ~1e-16);
    for u < 0 this is sin^2(sqrt -u)/(-u).
    """
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    small = np.abs(u) < 1e-6
    us = u[small]
    out[small] = 1.0 + us / 3.0 + 2.0 * us**2 / 45.0 + us**3 / 315.0
    pos = ~small & (u > 0)
    neg = ~small & (u < 0)
    out[pos] = np.sinh(np.sqrt(u[pos])) ** 2 / u[pos]
    out[neg] = np.sin(np.sqrt(-u[neg])) ** 2 / (-u[neg])
    return out


@dataclass(frozen=True)
class RwaSolution:
    """Rotating-wave prediction for one driven mode.

    chi2 = |2 g_omega|^2 - Delta^2 keeps its sign: positive means exponential
    amplification (branch "amplifying"), negative bounded oscillation
    ("oscillating"), and |chi2| below the series crossover is reported as
    "critical".  chi = sqrt(|chi2|).
    """

    drive: DriveSpec
    g_omega: complex
    chi2: float
    chi: float
    branch: str

    @property
    def g_mag(self) -> float:
        return 2.0 * abs(self.g_omega)

    def n_gamma(self, t: float | np.ndarray) -> float | np.ndarray:
        t = np.asarray(t, dtype=float)
        n = self.g_mag**2 * t**2 * _growth_factor(self.chi2 * t**2)
        return float(n) if n.ndim == 0 else n

    def r(self, t: float | np.ndarray) -> float | np.ndarray:
        return np.arcsinh(np.sqrt(self.n_gamma(t)))


def rwa_solve(drive: DriveSpec) -> RwaSolution:
    """Build the RWA solution from the drive's Fourier coupling component."""
    g_omega = drive.g_omega
    chi2 = abs(2.0 * g_omega) ** 2 - drive.Delta**2
    chi = float(np.sqrt(abs(chi2)))
    if chi2 > 1e-30:
        branch = "amplifying"
    elif chi2 < -1e-30:
        branch = "oscillating"
    else:
        branch = "critical"
    return RwaSolution(drive=drive, g_omega=complex(g_omega),
                       chi2=float(chi2), chi=chi, branch=branch)


# ---------------------------------------------------------------------------
# single-mode master equation

class Trajectory:
    """Dense single-mode solution on [0, t_final].

    Evaluation chains the per-chunk dense outputs of the integrator; the
    tracked phase theta is re-anchored to arg A at chunk boundaries so K stays
    free of branch jumps.
    """

    def __init__(self, chunks: list[tuple[float, float, object]],
                 couplings: CouplingSet, mode: int):
        self._chunks = chunks
        self.couplings = couplings
        self.mode = mode
        self.t_final = chunks[-1][1]

    def state_at(self, t: float) -> BogoliubovState:
        if t < -1e-12 or t > self.t_final * (1.0 + 1e-12):
            raise ValueError(f"t = {t} outside [0, {self.t_final}]")
        t = min(max(t, 0.0), self.t_final)
        for lo, hi, sol in self._chunks:
            if t <= hi or (lo, hi, sol) is self._chunks[-1]:
                y = sol(t)
                return BogoliubovState(t=float(t), A=complex(y[0]), B=complex(y[1]),
                                       theta=float(y[2].real), phase_integral=float(y[3].real))
        raise AssertionError("unreachable")

    def sample(self, ts: Sequence[float]) -> list[BogoliubovState]:
        return [self.state_at(float(t)) for t in ts]

    @property
    def final(self) -> BogoliubovState:
        return self.state_at(self.t_final)


def _snap_phase(theta: float, a: complex) -> float:
    """Replace theta by arg(a) on the same 2 pi branch."""
    target = np.angle(a)
    return float(target + 2.0 * np.pi * np.round((theta - target) / (2.0 * np.pi)))


def integrate_master(couplings: CouplingSet, t_final: float, *, mode: int = 0,
                     chunk: float | None = None, rtol: float = 1e-10,
                     atol: float = 1e-12, invariant_tol: float = 1e-7) -> Trajectory:
    """Integrate the single-mode Bogoliubov equations with phase tracking.

    The augmented real quantities theta (continuous arg A) and
    Int w dt ride along with (A, B):

        dtheta/dt = -w + Im(2 g B / A)

    Integration proceeds in chunks (default: one drive period when the
    coupling set exposes none, t_final / 8) using an 8th-order Runge-Kutta
    method with dense output.  The invariant |A|^2 - |B|^2 - 1 is checked at
    every chunk boundary: drift beyond invariant_tol warns, beyond
    10 x invariant_tol aborts with EvolutionError.
    """
    if t_final <= 0:
        raise ValueError("t_final must be positive")
    if t_final > couplings.t_max * (1.0 + 1e-12):
        raise ValueError(
            f"t_final = {t_final} beyond coupling domain t_max = {couplings.t_max}")
    if chunk is None:
        chunk = t_final / 8.0
    n_chunks = max(1, int(np.ceil(t_final / chunk - 1e-9)))
    edges = np.linspace(0.0, t_final, n_chunks + 1)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        A, B = y[0], y[1]
        w = couplings.omega_at(mode, t)
        g = couplings.g_at(mode, mode, t)
        dA = -1j * w * A + 2.0 * g * B
        dB = 1j * w * B + 2.0 * np.conj(g) * A
        dtheta = -w + (2.0 * g * B / A).imag
        return np.array([dA, dB, dtheta + 0.0j, w + 0.0j])

    y0 = np.array([1.0 + 0.0j, 0.0j, 0.0j, 0.0j])
    chunks: list[tuple[float, float, object]] = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        sol = solve_ivp(rhs, (lo, hi), y0, method="DOP853", dense_output=True,
                        rtol=rtol, atol=atol)
        if not sol.success:
            raise EvolutionError(f"integration failed on [{lo}, {hi}]: {sol.message}")
        chunks.append((float(lo), float(hi), sol.sol))
        y0 = sol.y[:, -1].copy()
        residual = abs(y0[0]) ** 2 - abs(y0[1]) ** 2 - 1.0
        if abs(residual) > 10.0 * invariant_tol:
            raise EvolutionError(
                f"invariant |A|^2 - |B|^2 - 1 = {residual:.3e} at t = {hi:.6g} "
                f"exceeds 10 x {invariant_tol:g}; tighten rtol/atol")
        if abs(residual) > invariant_tol:
            warnings.warn(
                f"invariant drift {residual:.3e} at t = {hi:.6g} above {invariant_tol:g}",
                stacklevel=2)
        y0[2] = _snap_phase(y0[2].real, y0[0]) + 0.0j
    return Trajectory(chunks, couplings, mode)


# ---------------------------------------------------------------------------
# multimode master equation

class MultimodeTrajectory:
    """Sampled multimode solution: Bogoliubov matrices at requested times."""

    def __init__(self, times: np.ndarray, A: np.ndarray, B: np.ndarray,
                 couplings: CouplingSet):
        self.times = times          # (n_t,)
        self.A = A                  # (n_t, n, n)
        self.B = B                  # (n_t, n, n)
        self.couplings = couplings

    @property
    def n_modes(self) -> int:
        return self.A.shape[-1]

    def photon_numbers(self, i: int | None = None) -> np.ndarray:
        """N_a(t) = (B B^+)_aa, shape (n_t, n); one row for time index i."""
        idx = slice(None) if i is None else [i]
        n = np.einsum("tab,tab->ta", self.B[idx], np.conj(self.B[idx])).real
        return n[0] if i is not None else n

    def symplectic_residual(self, i: int) -> float:
        """Canonical-commutator residual max |(A A^+ - (B B^+)^T - I)_ab| at
        time index i.

        B follows the same sign convention as the single-mode equations (the
        pair component evolves with +i omega), which is the elementwise
        conjugate of the direct Heisenberg expansion of the annihilation
        operator; preservation of [a, a^+] = 1 therefore pins the transposed
        product.  The diagonal — per-mode |A|^2 row sums minus photon numbers
        — is the same either way."""
        a, b = self.A[i], self.B[i]
        dev = a @ a.conj().T - np.conj(b) @ b.T - np.eye(self.n_modes)
        return float(np.max(np.abs(dev)))


def _coupling_matrices(couplings: CouplingSet, t: float) -> tuple[np.ndarray, np.ndarray]:
    n = couplings.n_modes
    M = np.empty((n, n))
    G = np.empty((n, n), dtype=complex)
    for a in range(n):
        for b in range(a, n):
            mu = couplings.mu_at(a, b, t)
            g = couplings.g_at(a, b, t)
            M[a, b] = M[b, a] = mu
            G[a, b] = G[b, a] = g
        M[a, a] += couplings.omega0s[a]
    return M, G


def integrate_multimode(couplings: CouplingSet, t_final: float, *,
                        n_samples: int = 65, rtol: float = 1e-10,
                        atol: float = 1e-12, invariant_tol: float = 1e-7,
                        project: bool = False) -> MultimodeTrajectory:
    """Integrate the coupled-mode Bogoliubov matrices.

    Samples the matrices at n_samples equally spaced times.  The symplectic
    residual max |A A^+ - (B B^+)^T - I| (see symplectic_residual for the
    convention) is checked at every sample: drift beyond invariant_tol warns,
    beyond 10 x invariant_tol aborts.  With project=True the residual is
    absorbed at each sample by the Hermitian correction
    W = (A A^+ - C C^+)^{-1/2} applied to A and C = conj(B), which restores
    the invariant exactly.
    """
    if t_final <= 0:
        raise ValueError("t_final must be positive")
    if t_final > couplings.t_max * (1.0 + 1e-12):
        raise ValueError(
            f"t_final = {t_final} beyond coupling domain t_max = {couplings.t_max}")
    n = couplings.n_modes
    times = np.linspace(0.0, t_final, n_samples)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        A = y[: n * n].reshape(n, n)
        B = y[n * n:].reshape(n, n)
        M, G = _coupling_matrices(couplings, t)
        dA = -1j * (M @ A) + 2.0 * (G @ B)
        dB = 1j * (M @ B) + 2.0 * (np.conj(G) @ A)
        return np.concatenate([dA.ravel(), dB.ravel()])

    eye = np.eye(n, dtype=complex)
    y = np.concatenate([eye.ravel(), np.zeros(n * n, dtype=complex)])
    A_out = np.empty((n_samples, n, n), dtype=complex)
    B_out = np.empty((n_samples, n, n), dtype=complex)
    A_out[0], B_out[0] = eye, 0.0

    for i in range(1, n_samples):
        sol = solve_ivp(rhs, (times[i - 1], times[i]), y, method="DOP853",
                        rtol=rtol, atol=atol)
        if not sol.success:
            raise EvolutionError(
                f"integration failed on [{times[i-1]}, {times[i]}]: {sol.message}")
        y = sol.y[:, -1]
        A = y[: n * n].reshape(n, n).copy()
        B = y[n * n:].reshape(n, n).copy()
        C = np.conj(B)   # direct Heisenberg-expansion pair matrix
        dev = A @ A.conj().T - C @ C.conj().T - np.eye(n)
        residual = float(np.max(np.abs(dev)))
        if residual > 10.0 * invariant_tol:
            raise EvolutionError(
                f"symplectic residual {residual:.3e} at t = {times[i]:.6g} "
                f"exceeds 10 x {invariant_tol:g}; tighten rtol/atol")
        if residual > invariant_tol:
            warnings.warn(
                f"symplectic drift {residual:.3e} at t = {times[i]:.6g}", stacklevel=2)
        if project:
            vals, vecs = np.linalg.eigh(A @ A.conj().T - C @ C.conj().T)
            W = (vecs * (1.0 / np.sqrt(vals))) @ vecs.conj().T
            A, C = W @ A, W @ C
            B = np.conj(C)
            y = np.concatenate([A.ravel(), B.ravel()])
        A_out[i], B_out[i] = A, B
    return MultimodeTrajectory(times, A_out, B_out, couplings)


# ---------------------------------------------------------------------------
# utilities

def period_average(ts: np.ndarray, values: np.ndarray, period: float) -> tuple[np.ndarray, np.ndarray]:
    """Centered one-period moving average of a sampled signal.

    Returns (ts_mid, averaged) where ts_mid drops half a period at each end;
    the average uses the trapezoid cumulative integral so non-uniform sample
    spacing is handled.  Needs the samples to span at least one period.
    """
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(values, dtype=float)
    if ts.ndim != 1 or ts.shape != values.shape:
        raise ValueError("ts and values must be matching 1D arrays")
    if ts[-1] - ts[0] < period:
        raise ValueError("samples must span at least one period")
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (values[1:] + values[:-1]) * np.diff(ts))])
    keep = (ts >= ts[0] + period / 2.0) & (ts <= ts[-1] - period / 2.0)
    mid = ts[keep]
    hi = np.interp(mid + period / 2.0, ts, cum)
    lo = np.interp(mid - period / 2.0, ts, cum)
    return mid, (hi - lo) / period
