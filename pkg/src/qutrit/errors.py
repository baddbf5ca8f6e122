"""
Exceptions raised by the qutrit simulation and tomography library.
"""
# src/qutrit/errors.py


class QutritError(Exception):
    """Base class for every numerical failure raised by the library."""
    pass


class BasisIndexError(QutritError, ValueError):
    """A Gell-Mann or basis index outside its admissible range."""
    pass


class NonHermitianError(QutritError):
    """A matrix expected to be Hermitian is not, within tolerance."""
    pass


class ConvergenceError(QutritError):
    """The eigen-solver did not converge."""
    pass


class NegativeEigenvalueError(QutritError):
    """An eigenvalue is below the clamping threshold of a PSD operation."""
    pass


class SingularMatrixError(QutritError):
    """A linear system is numerically singular."""
    pass


class IntegrationError(QutritError):
    """The integrator produced non-finite values."""
    pass


class ChiHermiticityError(QutritError):
    """A reconstructed process matrix is too far from Hermitian to be symmetrised."""
    pass


class PhysicalityError(QutritError):
    """A physical quantity is outside its admissible domain."""
    pass
