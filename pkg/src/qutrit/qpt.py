"""
Quantum process tomography for a qutrit.

The process ε is sampled on the nine matrix units ρ_j = |p⟩⟨q|; the outputs are
expanded as ε(ρ_j) = Σ_k λ_jk ρ_k, and the process matrix follows from the linear
system βχ = λ with β_jk^{mn} defined by Ẽ_m ρ_j Ẽ_n† = Σ_k β_jk^{mn} ρ_k.
Pairs (j, k) and (m, n) are flattened row-major: 0-based index 9j + k.
"""
# src/qutrit/qpt.py
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

import numpy as np

from src.logging import logger
from src.qutrit.algebra import (
    BASIS_SIZE,
    DIM,
    OperatorBasis,
    StateBasis,
    clamped_spectrum,
    dagger,
    hermitian_eig,
    hermiticity_residual,
    operator_basis,
    solve_linear,
    state_basis,
)
from src.qutrit.errors import ChiHermiticityError

ProcessMap = Callable[[np.ndarray], np.ndarray]

CHI_HERMITICITY_TOL = 1e-8


@dataclass(frozen=True)
class BetaMatrix:
    """The 81×81 map from χ coefficients to output-state coefficients."""
    matrix: np.ndarray
    condition_number: float


@dataclass(frozen=True)
class ProcessMatrix:
    """9×9 process matrix with the labels of the operator basis it is expressed in."""
    chi: np.ndarray
    basis_labels: Tuple[str, ...] = field(default_factory=lambda: operator_basis().labels)
    condition_number: Optional[float] = None

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.chi)))

    def normalized(self) -> np.ndarray:
        """χ / Tr χ."""
        return self.chi / self.trace


@dataclass(frozen=True)
class ValidationReport:
    hermiticity_residual: float
    min_eigenvalue: float
    trace_preservation_residual: float
    trace: float
    kraus_rank: int

    def passes(self, hermiticity_tol: float = 1e-8, tp_tol: float = 1e-5, eig_tol: float = 1e-5) -> bool:
        return (
            self.hermiticity_residual <= hermiticity_tol
            and self.trace_preservation_residual <= tp_tol
            and self.min_eigenvalue >= -eig_tol
        )


def build_beta(ops: OperatorBasis, states: StateBasis) -> BetaMatrix:
    """
    β[(j,k),(m,n)] = entry (p_k, q_k) of Ẽ_m ρ_j Ẽ_n†.

    The state-basis decomposition reduces to entry lookup because each ρ_k is a
    matrix unit, i.e. the coefficient is Tr(ρ_k† X).
    """
    # products[m, n, j] = Ẽ_m ρ_j Ẽ_n†
    products = np.einsum("mab,jbc,ndc->mnjad", ops.elements, states.elements, np.conj(ops.elements))
    coefficients = states.expand(products)  # [m, n, j, k]
    matrix = coefficients.transpose(2, 3, 0, 1).reshape(BASIS_SIZE ** 2, BASIS_SIZE ** 2)
    condition_number = float(np.linalg.cond(matrix))
    logger.debug(f"Built beta matrix, condition number {condition_number:.6g}")
    return BetaMatrix(matrix=matrix, condition_number=condition_number)


@lru_cache(maxsize=None)
def default_beta() -> BetaMatrix:
    """β for the default operator and state bases, built once."""
    return build_beta(operator_basis(), state_basis())


def extract_lambda(process: ProcessMap, states: StateBasis) -> np.ndarray:
    """
    λ_jk = entry (p_k, q_k) of ε(ρ_j), flattened to 81 entries.

    ``process`` receives the whole stack of nine inputs and must return the nine
    outputs in the same order; single-matrix maps are accepted too.
    """
    inputs = np.array(states.elements)
    outputs = np.asarray(process(inputs), dtype=complex)
    if outputs.shape != inputs.shape:
        outputs = np.stack([np.asarray(process(rho), dtype=complex) for rho in inputs])
    return states.expand(outputs).reshape(BASIS_SIZE ** 2)


def reconstruct_chi(beta: BetaMatrix, lam: np.ndarray) -> ProcessMatrix:
    """
    Solve βχ⃗ = λ⃗ and reshuffle χ⃗ into the 9×9 process matrix.

    Raises:
        SingularMatrixError: If β is singular.
        ChiHermiticityError: If the solution deviates from Hermitian by more than 1e-8.
    """
    lam = np.asarray(lam, dtype=complex)
    if lam.shape != (BASIS_SIZE ** 2,):
        raise ValueError(f"Lambda vector must have {BASIS_SIZE ** 2} entries, got {lam.shape}")
    solution = solve_linear(beta.matrix, lam)
    chi = solution.x.reshape(BASIS_SIZE, BASIS_SIZE)
    asymmetry = hermiticity_residual(chi)
    if asymmetry > CHI_HERMITICITY_TOL:
        logger.error(f"Reconstructed chi is not Hermitian (residual {asymmetry:.3e})")
        raise ChiHermiticityError(
            f"Reconstructed chi deviates from Hermitian by {asymmetry:.3e}; "
            "the process map is not linear or is corrupted"
        )
    chi = 0.5 * (chi + dagger(chi))
    return ProcessMatrix(chi=chi, condition_number=solution.condition_number)


def reconstruct_process(process: ProcessMap) -> ProcessMatrix:
    """Tomography of ``process`` in the default bases."""
    return reconstruct_chi(default_beta(), extract_lambda(process, state_basis()))


def apply_chi(chi: ProcessMatrix, rho: np.ndarray, ops: OperatorBasis) -> np.ndarray:
    """ε(ρ) = Σ_{m,n} χ_mn Ẽ_m ρ Ẽ_n†, summed literally."""
    return np.einsum("mn,mab,...bc,ndc->...ad", chi.chi, ops.elements, rho, np.conj(ops.elements))


def trace_preservation_residual(chi: ProcessMatrix, ops: OperatorBasis) -> float:
    """‖Σ χ_mn Ẽ_n†Ẽ_m − I‖∞ (max-entry norm)."""
    total = np.einsum("mn,nba,mbc->ac", chi.chi, np.conj(ops.elements), ops.elements)
    return float(np.max(np.abs(total - np.eye(DIM))))


def kraus_rank(chi: ProcessMatrix, relative_cut: float = 1e-8) -> int:
    """Number of eigenvalues of χ above ``relative_cut`` times the largest one."""
    eigenvalues, _ = hermitian_eig(chi.chi)
    largest = float(np.max(np.abs(eigenvalues)))
    if largest == 0.0:
        return 0
    return int(np.sum(eigenvalues > relative_cut * largest))


def validate_chi(chi: ProcessMatrix, ops: OperatorBasis) -> ValidationReport:
    residual = hermiticity_residual(chi.chi)
    eigenvalues, _ = hermitian_eig(chi.chi, tol=np.inf)
    return ValidationReport(
        hermiticity_residual=residual,
        min_eigenvalue=float(eigenvalues[0]),
        trace_preservation_residual=trace_preservation_residual(chi, ops),
        trace=chi.trace,
        kraus_rank=kraus_rank(ProcessMatrix(chi=0.5 * (chi.chi + dagger(chi.chi)))),
    )


def kraus_from_chi(
    chi: ProcessMatrix,
    ops: OperatorBasis,
    clamp_tol: float = 1e-8,
    zero_tol: float = 1e-12,
) -> List[np.ndarray]:
    """
    Kraus operators E_i = √η_i Σ_m v_mi Ẽ_m from the eigenpairs (η_i, v_i) of χ.

    Eigenvalues in [-clamp_tol, zero_tol] contribute no operator.

    Raises:
        NegativeEigenvalueError: If an eigenvalue is below ``-clamp_tol``.
    """
    eigenvalues, eigenvectors = clamped_spectrum(chi.chi, clamp_tol)
    operators = []
    for eta, vector in zip(eigenvalues[::-1], eigenvectors.T[::-1]):
        if eta <= zero_tol:
            continue
        operators.append(np.sqrt(eta) * np.einsum("m,mab->ab", vector, ops.elements))
    return operators


def apply_kraus(operators: List[np.ndarray], rho: np.ndarray) -> np.ndarray:
    """Σ_i E_i ρ E_i†."""
    return sum(e @ rho @ dagger(e) for e in operators)


def chi_from_unitary(u: np.ndarray, ops: OperatorBasis) -> ProcessMatrix:
    """Analytic χ = c c† of ρ ↦ UρU†, with c_m = Tr(Ẽ_m†U)/Tr(Ẽ_m†Ẽ_m)."""
    c = ops.expand(np.asarray(u, dtype=complex))
    return ProcessMatrix(chi=np.outer(c, np.conj(c)))


def unitary_process(u: np.ndarray) -> ProcessMap:
    """ρ ↦ UρU†, applicable to stacks."""
    u = np.asarray(u, dtype=complex)
    return lambda rho: u @ rho @ dagger(u)


def conjugation_process(op: np.ndarray) -> ProcessMap:
    """ρ ↦ AρA†; the same map as :func:`unitary_process` for a non-unitary A."""
    return unitary_process(op)
