__version__ = '0.1'

# Import the public API, called when the package is imported
from .algebra import (
    OperatorBasis,
    StateBasis,
    gell_mann,
    hermitian_eig,
    operator_basis,
    solve_linear,
    sqrt_psd,
    state_basis,
)
from .dynamics import (
    DecoherenceRates,
    TimeGrid,
    lindblad_rhs,
    propagate,
    propagate_trajectory,
    propagate_unitary_ideal,
    propagate_via_physical_states,
)
from .hamiltonians import HamiltonianKind, h_cd, h_sastirap, h_stirap, h_two_photon
from .metrics import diagonal_weight_share, process_distance, process_fidelity, transfer_fidelity
from .pulses import PulseParams, envelope01, envelope12, mixing_angle, omega02, theta_dot
from .qpt import (
    BetaMatrix,
    ProcessMatrix,
    ValidationReport,
    apply_chi,
    build_beta,
    extract_lambda,
    kraus_from_chi,
    reconstruct_chi,
    validate_chi,
)
