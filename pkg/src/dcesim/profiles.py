"""Named parametric time-profile families for drives and material parameters.

Profiles are immutable callables t -> value, vectorized over numpy arrays.
Each family exposes `peak`, `floor` and (where defined) `period` so scenarios
can validate invariants (e.g. a drive must vanish at t = 0) without sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class ConstantProfile:
    """p(t) = value."""

    value: float

    def __call__(self, t: ArrayLike) -> ArrayLike:
        if np.isscalar(t):
            return float(self.value)
        return np.full_like(np.asarray(t, dtype=float), self.value)

    @property
    def peak(self) -> float:
        return float(self.value)

    @property
    def floor(self) -> float:
        return float(self.value)

    @property
    def period(self) -> float | None:
        return None


@dataclass(frozen=True)
class SinusoidalProfile:
    """p(t) = baseline + (pmax - baseline) * (1 - cos(omega t)) / 2.

    Starts at the baseline with zero slope, peaks at pmax half a period in.
    """

    pmax: float
    omega: float
    baseline: float = 0.0

    def __post_init__(self) -> None:
        if self.omega <= 0:
            raise ValueError(f"sinusoidal profile needs omega > 0, got {self.omega}")

    def __call__(self, t: ArrayLike) -> ArrayLike:
        out = self.baseline + (self.pmax - self.baseline) * 0.5 * (1.0 - np.cos(self.omega * np.asarray(t)))
        return float(out) if np.isscalar(t) else out

    @property
    def peak(self) -> float:
        return float(max(self.pmax, self.baseline))

    @property
    def floor(self) -> float:
        return float(min(self.pmax, self.baseline))

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.omega


@dataclass(frozen=True)
class PulseTrainProfile:
    """Raised-cosine pulses of the given width, repeating every `period_`.

    Within each period the first `width` seconds carry one full raised-cosine
    pulse; the remainder sits at the baseline. width == period_ reduces to the
    sinusoidal family.
    """

    pmax: float
    period_: float
    width: float
    baseline: float = 0.0

    def __post_init__(self) -> None:
        if self.period_ <= 0:
            raise ValueError(f"pulse train needs period > 0, got {self.period_}")
        if not 0.0 < self.width <= self.period_:
            raise ValueError(
                f"pulse width must lie in (0, period], got width={self.width} period={self.period_}"
            )

    def __call__(self, t: ArrayLike) -> ArrayLike:
        tau = np.mod(np.asarray(t, dtype=float), self.period_)
        on = tau < self.width
        pulse = 0.5 * (1.0 - np.cos(2.0 * np.pi * tau / self.width))
        out = self.baseline + (self.pmax - self.baseline) * np.where(on, pulse, 0.0)
        return float(out) if np.isscalar(t) else out

    @property
    def peak(self) -> float:
        return float(max(self.pmax, self.baseline))

    @property
    def floor(self) -> float:
        return float(min(self.pmax, self.baseline))

    @property
    def period(self) -> float:
        return float(self.period_)


@dataclass(frozen=True)
class TableProfile:
    """Piecewise-linear interpolation through (times, values), clamped outside."""

    times: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.times) != len(self.values) or len(self.times) < 2:
            raise ValueError("table profile needs >= 2 matching (time, value) pairs")
        t = np.asarray(self.times, dtype=float)
        if np.any(np.diff(t) <= 0):
            raise ValueError("table profile times must be strictly increasing")
        object.__setattr__(self, "times", tuple(float(x) for x in self.times))
        object.__setattr__(self, "values", tuple(float(x) for x in self.values))

    def __call__(self, t: ArrayLike) -> ArrayLike:
        out = np.interp(np.asarray(t, dtype=float), self.times, self.values)
        return float(out) if np.isscalar(t) else out

    @property
    def peak(self) -> float:
        return float(max(self.values))

    @property
    def floor(self) -> float:
        return float(min(self.values))

    @property
    def period(self) -> float | None:
        return None


Profile = Union[ConstantProfile, SinusoidalProfile, PulseTrainProfile, TableProfile]

# Registry of the profile families by short name.
FAMILIES: dict[str, type] = {
    "constant": ConstantProfile,
    "sinusoidal": SinusoidalProfile,
    "pulse_train": PulseTrainProfile,
    "table": TableProfile,
}
