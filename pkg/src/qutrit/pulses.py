"""
Gaussian drive envelopes and the STIRAP mixing-angle geometry.

All angular frequencies are in rad/ns and all times in ns (ħ = 1).
"""
# src/qutrit/pulses.py
import math
from dataclasses import dataclass, replace

import numpy as np

from src.qutrit.errors import PhysicalityError

# |amp01 - amp12| below this uses the closed-form Θ̇
EQUAL_AMPLITUDE_TOL = 1e-12
# step of the five-point derivative used otherwise, in ns
DERIVATIVE_STEP = 1e-3


@dataclass(frozen=True)
class PulseParams:
    """
    Drive parameters of one run. Defaults are the published transmon values:
    45 MHz peak Rabi frequencies, σ = 35 ns, t_s = -0.8σ, φ₀₁ = φ₁₂ = 0,
    φ₀₂ = π/2 and Δ = (ω₀₁ - ω₁₂)/2 = 2π·225 MHz.
    """
    amp01: float = 2 * math.pi * 0.045
    amp12: float = 2 * math.pi * 0.045
    sigma: float = 35.0
    t_sep: float = -0.8 * 35.0
    phi01: float = 0.0
    phi12: float = 0.0
    phi02: float = math.pi / 2
    delta01: float = 0.0
    delta12: float = 0.0
    big_delta: float = 2 * math.pi * 0.225

    def __post_init__(self):
        if not self.sigma > 0:
            raise PhysicalityError(f"sigma must be positive, got {self.sigma}")
        if self.amp01 < 0 or self.amp12 < 0:
            raise PhysicalityError(
                f"Drive amplitudes must be non-negative, got {self.amp01}, {self.amp12}"
            )

    @property
    def phi20(self) -> float:
        return -self.phi02

    @property
    def phi2ph(self) -> float:
        """Phase of the two-photon drive, -(φ₂₀ + π)/2."""
        return -(self.phi20 + math.pi) / 2

    @property
    def equal_amplitudes(self) -> bool:
        return abs(self.amp01 - self.amp12) <= EQUAL_AMPLITUDE_TOL

    def with_changes(self, **changes) -> "PulseParams":
        return replace(self, **changes)


def envelope01(t, p: PulseParams):
    """Ω₀₁(t) = Ω̄₀₁·exp(-t²/2σ²)."""
    t = np.asarray(t, dtype=float)
    return p.amp01 * np.exp(-t ** 2 / (2 * p.sigma ** 2))


def envelope12(t, p: PulseParams):
    """Ω₁₂(t) = Ω̄₁₂·exp(-(t - t_s)²/2σ²)."""
    t = np.asarray(t, dtype=float)
    return p.amp12 * np.exp(-(t - p.t_sep) ** 2 / (2 * p.sigma ** 2))


def _log_ratio(t, p: PulseParams):
    """u(t) = ln[e^{-t²/2σ²} / e^{-(t-t_s)²/2σ²}] = -t_s(2t - t_s)/2σ²."""
    t = np.asarray(t, dtype=float)
    return -p.t_sep * (2 * t - p.t_sep) / (2 * p.sigma ** 2)


def mixing_angle(t, p: PulseParams):
    """
    Θ(t) = arctan(Ω₀₁(t)/Ω₁₂(t)).

    The ratio of the two Gaussians is evaluated in log form so that the angle
    stays exact where both envelopes underflow.
    """
    if p.amp01 == 0 and p.amp12 == 0:
        raise PhysicalityError("Mixing angle is undefined when both drives vanish")
    with np.errstate(over="ignore"):
        return np.arctan2(p.amp01, p.amp12 * np.exp(-_log_ratio(t, p)))


def _five_point_derivative(f, t, h: float = DERIVATIVE_STEP):
    t = np.asarray(t, dtype=float)
    return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h)


def theta_dot(t, p: PulseParams):
    """
    Θ̇(t). For equal amplitudes the closed form -t_s / (2σ² cosh u) is used,
    otherwise a five-point numerical derivative of the mixing angle.
    """
    if not p.equal_amplitudes:
        return _five_point_derivative(lambda s: mixing_angle(s, p), t)
    with np.errstate(over="ignore"):
        return -p.t_sep / (2 * p.sigma ** 2 * np.cosh(_log_ratio(t, p)))


def omega02(t, p: PulseParams):
    """Counterdiabatic Rabi frequency Ω₀₂(t) = 2Θ̇(t)."""
    return 2 * theta_dot(t, p)


def dark_state(t: float, p: PulseParams) -> np.ndarray:
    """Instantaneous dark state cosΘ|0⟩ - sinΘ|2⟩."""
    theta = float(mixing_angle(t, p))
    return np.array([math.cos(theta), 0.0, -math.sin(theta)], dtype=complex)


def counterdiabatic_angle(t_start: float, t: float, p: PulseParams) -> float:
    """∫ Θ̇ dt from ``t_start`` to ``t``."""
    return float(mixing_angle(t, p) - mixing_angle(t_start, p))
