"""
Lindblad propagation of 3×3 operators under a time-dependent Hamiltonian.

The integrator is linear in its input, so non-Hermitian matrix units are propagated
directly. Stacks of shape (..., 3, 3) are propagated in one pass.
"""
# src/qutrit/dynamics.py
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from src.logging import logger
from src.qutrit.algebra import DIM, basis_ket, matrix_unit
from src.qutrit.errors import IntegrationError, PhysicalityError
from src.qutrit.hamiltonians import (
    HamiltonianKind,
    h_counterdiabatic_ideal,
    hamiltonian_function,
)
from src.qutrit.pulses import PulseParams

HamiltonianFn = Callable[[float], np.ndarray]

_FINITE_CHECK_EVERY = 100


@dataclass(frozen=True)
class DecoherenceRates:
    """Relaxation (Γ) and pure-dephasing (Γᵠ) rates, all in 1/ns."""
    gamma_rel_10: float = 0.0
    gamma_rel_21: float = 0.0
    gamma_phi_10: float = 0.0
    gamma_phi_21: float = 0.0
    gamma_phi_20: float = 0.0

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if value < 0:
                raise PhysicalityError(f"Decoherence rate {name} must be non-negative, got {value}")

    @property
    def gamma_10(self) -> float:
        return self.gamma_rel_10 / 2 + self.gamma_phi_10

    @property
    def gamma_20(self) -> float:
        return self.gamma_rel_21 / 2 + self.gamma_phi_20

    @property
    def gamma_21(self) -> float:
        return (self.gamma_rel_10 + self.gamma_rel_21) / 2 + self.gamma_phi_21

    def coherence_decay(self) -> np.ndarray:
        """Symmetric matrix of γ_jk with a zero diagonal."""
        g10, g20, g21 = self.gamma_10, self.gamma_20, self.gamma_21
        return np.array([[0.0, g10, g20], [g10, 0.0, g21], [g20, g21, 0.0]])

    @property
    def is_zero(self) -> bool:
        return not any(self.__dict__.values())


NO_DECOHERENCE = DecoherenceRates()


@dataclass(frozen=True)
class TimeGrid:
    """Fixed-step grid; defaults are the published window and step count."""
    t_start: float = -182.0
    t_end: float = 140.0
    n_steps: int = 1800

    def __post_init__(self):
        if not self.t_end > self.t_start:
            raise ValueError(f"t_end ({self.t_end}) must exceed t_start ({self.t_start})")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ValueError(f"n_steps must be a positive integer, got {self.n_steps}")

    @property
    def dt(self) -> float:
        return (self.t_end - self.t_start) / self.n_steps

    def times(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.n_steps + 1)

    def refined(self, factor: int = 2) -> "TimeGrid":
        return TimeGrid(self.t_start, self.t_end, self.n_steps * factor)


def lindblad_rhs(m: np.ndarray, h: np.ndarray, r: DecoherenceRates) -> np.ndarray:
    """
    Right-hand side of the qutrit master equation applied to ``m``:

        -i[H, M] + Γ₂₁M₂₂(|1⟩⟨1| - |2⟩⟨2|) + Γ₁₀M₁₁(|0⟩⟨0| - |1⟩⟨1|) - Σ_{j≠k} γ_jk M_jk |j⟩⟨k|
    """
    m = np.asarray(m, dtype=complex)
    out = -1j * (h @ m - m @ h)
    if r.is_zero:
        return out
    m11 = m[..., 1, 1]
    m22 = m[..., 2, 2]
    out[..., 1, 1] += r.gamma_rel_21 * m22 - r.gamma_rel_10 * m11
    out[..., 2, 2] -= r.gamma_rel_21 * m22
    out[..., 0, 0] += r.gamma_rel_10 * m11
    out -= r.coherence_decay() * m
    return out


def _check_finite(state: np.ndarray, t: float):
    if not np.all(np.isfinite(state)):
        logger.error(f"Non-finite state encountered at t={t:.4f} ns")
        raise IntegrationError(f"Non-finite values at t={t:.4f} ns; reduce the step size")


def integrate(
    m0: np.ndarray,
    h_of_t: HamiltonianFn,
    r: DecoherenceRates,
    g: TimeGrid,
    record: bool = False,
):
    """
    Classic RK4 on the master equation with H sampled at t_n, t_n + dt/2 and t_n + dt.

    Args:
        m0 (np.ndarray): Initial operator or stack of operators (..., 3, 3).
        h_of_t (Callable): Hamiltonian as a function of time.
        r (DecoherenceRates): Rates of the dissipator.
        g (TimeGrid): Integration grid.
        record (bool): Also return the state at every grid point.
    Returns:
        The final state, or ``(final, trajectory)`` when ``record`` is set.
    Raises:
        IntegrationError: If the state becomes non-finite.
    """
    state = np.array(m0, dtype=complex)
    if state.shape[-2:] != (DIM, DIM):
        raise ValueError(f"Expected operators of shape (..., 3, 3), got {state.shape}")
    dt = g.dt
    trajectory = [state.copy()] if record else None
    h_next = h_of_t(g.t_start)
    for n in range(g.n_steps):
        t = g.t_start + n * dt
        h_now = h_next
        h_mid = h_of_t(t + dt / 2)
        h_next = h_of_t(t + dt)
        k1 = lindblad_rhs(state, h_now, r)
        k2 = lindblad_rhs(state + 0.5 * dt * k1, h_mid, r)
        k3 = lindblad_rhs(state + 0.5 * dt * k2, h_mid, r)
        k4 = lindblad_rhs(state + dt * k3, h_next, r)
        state = state + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        if (n + 1) % _FINITE_CHECK_EVERY == 0:
            _check_finite(state, t + dt)
        if record:
            trajectory.append(state.copy())
    _check_finite(state, g.t_end)
    if record:
        return state, np.stack(trajectory)
    return state


def propagate(
    m0: np.ndarray,
    kind: HamiltonianKind,
    p: PulseParams,
    r: DecoherenceRates,
    g: TimeGrid,
) -> np.ndarray:
    """Propagate ``m0`` (or a stack of operators) under the Hamiltonian of ``kind``."""
    kind = HamiltonianKind(kind)
    logger.debug(
        f"Propagating {kind.value} over [{g.t_start}, {g.t_end}] ns in {g.n_steps} steps "
        f"(dt={g.dt:.4f} ns)"
    )
    return integrate(m0, hamiltonian_function(kind, p), r, g)


def propagate_unitary_ideal(m0: np.ndarray, p: PulseParams, g: TimeGrid) -> np.ndarray:
    """Decoherence-free evolution under H₀ + H_cd."""
    return integrate(m0, lambda t: h_counterdiabatic_ideal(t, p), NO_DECOHERENCE, g)


def propagate_trajectory(
    m0: np.ndarray,
    kind: HamiltonianKind,
    p: PulseParams,
    r: DecoherenceRates,
    g: TimeGrid,
) -> Tuple[np.ndarray, np.ndarray]:
    """Grid times and the propagated operator at every grid point."""
    _, trajectory = integrate(m0, hamiltonian_function(HamiltonianKind(kind), p), r, g, record=True)
    return g.times(), trajectory


def population_trace(
    m0: np.ndarray,
    kind: HamiltonianKind,
    p: PulseParams,
    r: DecoherenceRates,
    g: TimeGrid,
) -> Tuple[np.ndarray, np.ndarray]:
    """Grid times and the populations ⟨k|ρ(t)|k⟩ at every grid point."""
    times, trajectory = propagate_trajectory(m0, kind, p, r, g)
    return times, np.real(np.diagonal(trajectory, axis1=-2, axis2=-1))


def _pure(ket: np.ndarray) -> np.ndarray:
    return np.outer(ket, np.conj(ket))


def propagate_via_physical_states(
    p_index: int,
    q_index: int,
    kind: HamiltonianKind,
    p: PulseParams,
    r: DecoherenceRates,
    g: TimeGrid,
) -> np.ndarray:
    """
    ε(|p⟩⟨q|) recomposed from four density-matrix propagations, using

        |p⟩⟨q| = |+⟩⟨+| + i|+i⟩⟨+i| - (1+i)/2 (|p⟩⟨p| + |q⟩⟨q|),

    with |+⟩ = (|p⟩ + |q⟩)/√2 and |+i⟩ = (|p⟩ + i|q⟩)/√2.
    """
    if p_index == q_index:
        return propagate(matrix_unit(p_index, p_index), kind, p, r, g)
    ket_p, ket_q = basis_ket(p_index), basis_ket(q_index)
    inputs = np.stack([
        _pure((ket_p + ket_q) / math.sqrt(2)),
        _pure((ket_p + 1j * ket_q) / math.sqrt(2)),
        _pure(ket_p),
        _pure(ket_q),
    ])
    plus, plus_i, pp, qq = propagate(inputs, kind, p, r, g)
    return plus + 1j * plus_i - (1 + 1j) / 2 * (pp + qq)
