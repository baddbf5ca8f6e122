"""
Conversions from lab units to the rad/ns and 1/ns units the simulation uses.
"""
import math

TWO_PI = 2 * math.pi


def mhz_to_rad_per_ns(value_mhz: float) -> float:
    """Angular frequency: f [MHz] → 2π·f·10⁻³ rad/ns."""
    return TWO_PI * value_mhz * 1e-3


def ghz_to_rad_per_ns(value_ghz: float) -> float:
    """Angular frequency: f [GHz] → 2π·f rad/ns."""
    return TWO_PI * value_ghz


def rate_mhz_to_per_ns(value_mhz: float) -> float:
    """Decay rate: Γ [MHz = 1/µs] → Γ·10⁻³ 1/ns, no factor 2π."""
    return value_mhz * 1e-3


def rad_per_ns_to_mhz(value: float) -> float:
    return value / TWO_PI * 1e3
