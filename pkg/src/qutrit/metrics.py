"""
Scalar comparisons between process matrices and between states.

Process matrices in the (I, Λ₁..Λ₈) basis do not have unit trace, so fidelity and
distance are evaluated on trace-normalised copies χ / Tr χ.
"""
# src/qutrit/metrics.py
import numpy as np

from src.qutrit.algebra import clamped_spectrum, dagger, hermitian_eig, sqrt_psd
from src.qutrit.errors import NonHermitianError, PhysicalityError
from src.qutrit.qpt import ProcessMatrix

STATE_IMAG_TOL = 1e-9


def _normalized(chi: ProcessMatrix) -> np.ndarray:
    trace = chi.trace
    if trace <= 0:
        raise PhysicalityError(f"Process matrix trace must be positive, got {trace:.3e}")
    return chi.normalized()


def process_fidelity(chi0: ProcessMatrix, chid: ProcessMatrix, clamp_tol: float = 1e-8) -> float:
    """
    Uhlmann-Jozsa fidelity [Tr √(√χ₀ χ_d √χ₀)]² of the trace-normalised matrices.

    Raises:
        NegativeEigenvalueError: If either input has an eigenvalue below ``-clamp_tol``.
    """
    a = _normalized(chi0)
    b = _normalized(chid)
    clamped_spectrum(b, clamp_tol)
    root_a = sqrt_psd(a, clamp_tol)
    inner = root_a @ b @ root_a
    inner = 0.5 * (inner + dagger(inner))
    eigenvalues, _ = hermitian_eig(inner)
    value = float(np.sum(np.sqrt(np.clip(eigenvalues, 0.0, None))) ** 2)
    return min(value, 1.0)


def process_distance(chi0: ProcessMatrix, chid: ProcessMatrix) -> float:
    """√(Tr[χ₀ − χ_d]²) of the trace-normalised matrices (Hilbert-Schmidt norm)."""
    difference = _normalized(chi0) - _normalized(chid)
    return float(np.sqrt(max(np.real(np.trace(difference @ difference)), 0.0)))


def transfer_fidelity(rho: np.ndarray) -> float:
    """⟨2|ρ|2⟩."""
    value = complex(rho[2, 2])
    if abs(value.imag) > STATE_IMAG_TOL:
        raise NonHermitianError(f"<2|rho|2> has imaginary part {value.imag:.3e}")
    return value.real


def diagonal_weight_share(chi: ProcessMatrix) -> float:
    """Σ|χ_ii| / Σ|χ_mn|."""
    magnitudes = np.abs(chi.chi)
    return float(np.trace(magnitudes) / np.sum(magnitudes))
