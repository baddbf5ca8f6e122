"""
Fixed-size complex matrix numerics and the two qutrit operator bases.

Every other module expresses its matrices in these terms: the operator basis
(I, Λ₁..Λ₈) labels the rows and columns of a process matrix, and the state basis
{|p⟩⟨q|} is the set of tomography inputs.
"""
# src/qutrit/algebra.py
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
import scipy.linalg

from src.logging import logger
from src.qutrit.errors import (
    BasisIndexError,
    ConvergenceError,
    NegativeEigenvalueError,
    NonHermitianError,
    SingularMatrixError,
)

DIM = 3
BASIS_SIZE = DIM * DIM

_SQRT3 = np.sqrt(3.0)

_GELL_MANN = (
    np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex),
    np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex),
    np.array([[1, 0, 0], [0, -1, 0], [0, 0, 0]], dtype=complex),
    np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=complex),
    np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]], dtype=complex),
    np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex),
    np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]], dtype=complex),
    np.array([[1, 0, 0], [0, 1, 0], [0, 0, -2]], dtype=complex) / _SQRT3,
)


def gell_mann(i: int) -> np.ndarray:
    """
    Return the Gell-Mann matrix Λ_i.

    Args:
        i (int): Index in 1..8.
    Returns:
        np.ndarray: A fresh 3×3 complex array.
    Raises:
        BasisIndexError: If ``i`` is outside 1..8.
    """
    if not isinstance(i, (int, np.integer)) or isinstance(i, bool) or not 1 <= i <= 8:
        raise BasisIndexError(f"Gell-Mann index must be in 1..8, got {i!r}")
    return _GELL_MANN[i - 1].copy()


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(m, -1, -2))


def hermiticity_residual(m: np.ndarray) -> float:
    """max|M − M†|."""
    return float(np.max(np.abs(m - dagger(m))))


def basis_ket(k: int) -> np.ndarray:
    ket = np.zeros(DIM, dtype=complex)
    ket[k] = 1.0
    return ket


def matrix_unit(p: int, q: int) -> np.ndarray:
    """|p⟩⟨q|."""
    unit = np.zeros((DIM, DIM), dtype=complex)
    unit[p, q] = 1.0
    return unit


def _frozen(stack: np.ndarray) -> np.ndarray:
    stack.setflags(write=False)
    return stack


@dataclass(frozen=True)
class OperatorBasis:
    """The ordered operator basis Ẽ₁ = I, Ẽ_{i+1} = Λ_i."""
    elements: np.ndarray
    labels: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, index: int) -> np.ndarray:
        return self.elements[index]

    def gram(self) -> np.ndarray:
        """Tr(Ẽ_i Ẽ_j†) for all pairs."""
        return np.einsum("iab,jab->ij", self.elements, np.conj(self.elements))

    def expand(self, m: np.ndarray) -> np.ndarray:
        """Coefficients c with M = Σ c_m Ẽ_m."""
        norms = np.real(np.diag(self.gram()))
        return np.einsum("iab,ab->i", np.conj(self.elements), m) / norms


@dataclass(frozen=True)
class StateBasis:
    """The ordered matrix units |p⟩⟨q|, stored at 0-based index 3p + q."""
    elements: np.ndarray
    labels: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, index: int) -> np.ndarray:
        return self.elements[index]

    @staticmethod
    def index(p: int, q: int) -> int:
        return DIM * p + q

    @staticmethod
    def entry(k: int) -> Tuple[int, int]:
        """The (p, q) pair held at 0-based index k."""
        return divmod(k, DIM)

    def expand(self, m: np.ndarray) -> np.ndarray:
        """Coefficients Tr(ρ_k† M); for matrix units this is the row-major flattening of M."""
        return np.einsum("kab,...ab->...k", np.conj(self.elements), m)


@lru_cache(maxsize=None)
def operator_basis() -> OperatorBasis:
    elements = np.stack([np.eye(DIM, dtype=complex)] + [gell_mann(i) for i in range(1, 9)])
    labels = ("I",) + tuple(f"L{i}" for i in range(1, 9))
    return OperatorBasis(elements=_frozen(elements), labels=labels)


@lru_cache(maxsize=None)
def state_basis() -> StateBasis:
    elements = np.stack([matrix_unit(p, q) for p in range(DIM) for q in range(DIM)])
    labels = tuple(f"|{p}><{q}|" for p in range(DIM) for q in range(DIM))
    return StateBasis(elements=_frozen(elements), labels=labels)


def hermitian_eig(m: np.ndarray, tol: float = 1e-9) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decomposition of a Hermitian matrix.

    Args:
        m (np.ndarray): Square Hermitian matrix.
        tol (float): Admissible max|M − M†| before the input is rejected.
    Returns:
        Tuple[np.ndarray, np.ndarray]: Ascending real eigenvalues and the unitary
        matrix whose columns are the eigenvectors.
    Raises:
        NonHermitianError: If the input is not Hermitian within ``tol``.
        ConvergenceError: If LAPACK fails to converge.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {m.shape}")
    residual = hermiticity_residual(m)
    if residual > tol:
        raise NonHermitianError(f"Matrix is not Hermitian: max|M - M^dag| = {residual:.3e}")
    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(0.5 * (m + dagger(m)))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"Hermitian eigen-solver failed: {exc}") from exc
    return eigenvalues, eigenvectors


def clamped_spectrum(m: np.ndarray, clamp_tol: float = 1e-8) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigenpairs of a Hermitian PSD matrix with small negative eigenvalues set to zero.

    Raises:
        NegativeEigenvalueError: If an eigenvalue is below ``-clamp_tol``.
    """
    eigenvalues, eigenvectors = hermitian_eig(m)
    lowest = float(eigenvalues[0])
    if lowest < -clamp_tol:
        raise NegativeEigenvalueError(
            f"Eigenvalue {lowest:.3e} below clamping threshold -{clamp_tol:.1e}"
        )
    if lowest < 0.0:
        logger.debug(f"Clamping negative eigenvalue {lowest:.3e} to zero")
    return np.clip(eigenvalues, 0.0, None), eigenvectors


def sqrt_psd(m: np.ndarray, clamp_tol: float = 1e-8) -> np.ndarray:
    """Principal square root of a Hermitian positive semi-definite matrix."""
    eigenvalues, eigenvectors = clamped_spectrum(m, clamp_tol)
    return (eigenvectors * np.sqrt(eigenvalues)) @ dagger(eigenvectors)


@dataclass(frozen=True)
class LinearSolution:
    x: np.ndarray
    condition_number: float
    residual: float


def solve_linear(a: np.ndarray, b: np.ndarray) -> LinearSolution:
    """
    Solve A·x = b by LU decomposition with partial pivoting.

    Args:
        a (np.ndarray): Square N×N matrix.
        b (np.ndarray): Right-hand side of length N.
    Returns:
        LinearSolution: The solution, the 2-norm condition number of A and the
        residual ‖A·x − b‖∞.
    Raises:
        SingularMatrixError: If a pivot falls below 1e-12·‖A‖∞.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {a.shape}")
    if b.shape != (a.shape[0],):
        raise ValueError(f"Right-hand side of shape {b.shape} does not match {a.shape}")

    scale = np.linalg.norm(a, ord=np.inf)
    lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    smallest_pivot = float(np.min(np.abs(np.diag(lu))))
    if scale == 0.0 or smallest_pivot < 1e-12 * scale:
        raise SingularMatrixError(
            f"Matrix is numerically singular (smallest pivot {smallest_pivot:.3e}, norm {scale:.3e})"
        )
    x = scipy.linalg.lu_solve((lu, piv), b)
    # one step of iterative refinement
    x = x + scipy.linalg.lu_solve((lu, piv), b - a @ x)
    residual = float(np.max(np.abs(a @ x - b))) if len(b) else 0.0
    if residual > 1e-9 * max(float(np.max(np.abs(b))), np.finfo(float).tiny):
        logger.warning(f"Linear solve residual {residual:.3e} exceeds relative tolerance")
    condition_number = float(np.linalg.cond(a))
    logger.debug(f"Solved {a.shape[0]}x{a.shape[0]} system, condition number {condition_number:.4g}")
    return LinearSolution(x=x, condition_number=condition_number, residual=residual)
