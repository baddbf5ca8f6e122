"""
The rotating-frame Hamiltonians of STIRAP, its counterdiabatic correction, the
two-photon drive that realises that correction, and saSTIRAP.

Every function returns a 3×3 Hermitian matrix in rad/ns (ħ = 1).
"""
# src/qutrit/hamiltonians.py
import math
from enum import Enum
from typing import Callable

import numpy as np
import scipy.linalg

from src.qutrit.algebra import DIM, gell_mann
from src.qutrit.errors import PhysicalityError
from src.qutrit.pulses import PulseParams, envelope01, envelope12, omega02

L1, L2, L3, L4, L5, L6, L7, L8 = (gell_mann(i) for i in range(1, 9))
IDENTITY_3 = np.eye(DIM, dtype=complex)
_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)


class HamiltonianKind(str, Enum):
    STIRAP = "stirap"
    SA_STIRAP = "sastirap"
    TWO_PHOTON = "twophoton"
    IDENTITY = "identity"


def h_stirap(t: float, p: PulseParams) -> np.ndarray:
    """The effective STIRAP Hamiltonian H₀(t)."""
    o01 = float(envelope01(t, p))
    o12 = float(envelope12(t, p))
    drive = 0.5 * o01 * (math.cos(p.phi01) * L1 + math.sin(p.phi01) * L2)
    drive = drive + 0.5 * o12 * (math.cos(p.phi12) * L6 + math.sin(p.phi12) * L7)
    detuning = (
        p.delta01 * L3
        + (p.delta01 + 2 * p.delta12) / _SQRT3 * L8
        - (2 * p.delta01 + p.delta12) / 3 * IDENTITY_3
    )
    return drive - 0.5 * detuning


def h_cd(t: float, p: PulseParams) -> np.ndarray:
    """Counterdiabatic term -(1/2)Ω₀₂(t)[cosφ₀₂Λ₄ + sinφ₀₂Λ₅]."""
    o02 = float(omega02(t, p))
    return -0.5 * o02 * (math.cos(p.phi02) * L4 + math.sin(p.phi02) * L5)


def two_photon_amplitude(t: float, p: PulseParams) -> float:
    """|Ω₂ₚₕ(t)| = sqrt(√2·Δ·Ω₀₂(t))."""
    radicand = _SQRT2 * p.big_delta * float(omega02(t, p))
    if radicand < 0:
        # round-off from the numerical Θ̇ is tolerated
        if radicand < -1e-12:
            raise PhysicalityError(
                f"Two-photon amplitude radicand is negative ({radicand:.3e}) at t={t}: "
                "requires big_delta * omega02 >= 0"
            )
        radicand = 0.0
    return math.sqrt(radicand)


def h_two_photon(t: float, p: PulseParams) -> np.ndarray:
    """Two-photon drive of the 0-1 and 1-2 transitions detuned by ∓Δ."""
    if not p.big_delta > 0:
        raise PhysicalityError(f"big_delta must be positive, got {p.big_delta}")
    amplitude = two_photon_amplitude(t, p)
    lower = p.phi2ph - p.big_delta * t
    upper = p.phi2ph + p.big_delta * t
    return (
        0.5 * amplitude * (math.cos(lower) * L1 - math.sin(lower) * L2)
        + amplitude / _SQRT2 * (math.cos(upper) * L6 - math.sin(upper) * L7)
    )


def h_sastirap(t: float, p: PulseParams) -> np.ndarray:
    """saSTIRAP realised with the two-photon drive: H₀ + H₂ₚₕ."""
    return h_stirap(t, p) + h_two_photon(t, p)


def h_counterdiabatic_ideal(t: float, p: PulseParams) -> np.ndarray:
    """H₀ + H_cd, the idealised superadiabatic Hamiltonian."""
    return h_stirap(t, p) + h_cd(t, p)


def h_zero(t: float, p: PulseParams) -> np.ndarray:
    return np.zeros((DIM, DIM), dtype=complex)


_HAMILTONIANS = {
    HamiltonianKind.STIRAP: h_stirap,
    HamiltonianKind.SA_STIRAP: h_sastirap,
    HamiltonianKind.TWO_PHOTON: h_two_photon,
    HamiltonianKind.IDENTITY: h_zero,
}


def hamiltonian_function(kind: HamiltonianKind, p: PulseParams) -> Callable[[float], np.ndarray]:
    """Bind the parameters of ``kind`` and return H as a function of time only."""
    builder = _HAMILTONIANS[HamiltonianKind(kind)]
    return lambda t: builder(t, p)


def hamiltonian(kind: HamiltonianKind, t: float, p: PulseParams) -> np.ndarray:
    return _HAMILTONIANS[HamiltonianKind(kind)](t, p)


def counterdiabatic_unitary(angle: float) -> np.ndarray:
    """exp[iΛ₅·angle], the evolution generated by H_cd alone at φ₀₂ = π/2."""
    return scipy.linalg.expm(1j * angle * L5)
