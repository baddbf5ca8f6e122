import math

import numpy as np
import pytest

from src.qutrit.algebra import gell_mann, matrix_unit
from src.qutrit.errors import ChiHermiticityError
from src.qutrit.hamiltonians import counterdiabatic_unitary
from src.qutrit.qpt import (
    ProcessMatrix,
    apply_chi,
    apply_kraus,
    build_beta,
    chi_from_unitary,
    conjugation_process,
    default_beta,
    extract_lambda,
    kraus_from_chi,
    kraus_rank,
    reconstruct_chi,
    reconstruct_process,
    trace_preservation_residual,
    unitary_process,
    validate_chi,
)
from tests.conftest import random_density_matrix

QUARTER_TURN = counterdiabatic_unitary(math.pi / 2)


def amplitude_damping(gamma: float):
    k0 = np.diag([1.0, math.sqrt(1 - gamma), 1.0]).astype(complex)
    k1 = math.sqrt(gamma) * matrix_unit(0, 1)
    return lambda rho: k0 @ rho @ k0.conj().T + k1 @ rho @ k1.conj().T


def full_depolarizing(rho):
    return np.trace(rho) * np.eye(3) / 3


def test_beta_is_well_conditioned(ops, states):
    beta = build_beta(ops, states)
    assert beta.matrix.shape == (81, 81)
    assert beta.condition_number == pytest.approx(1.5, rel=1e-9)
    assert default_beta() is default_beta()


def test_beta_entry_definition(ops, states):
    beta = default_beta().matrix
    j, k, m, n = 1, 5, 4, 7
    product = ops[m] @ states[j] @ ops[n].conj().T
    p, q = divmod(k, 3)
    assert beta[9 * j + k, 9 * m + n] == pytest.approx(product[p, q])


def test_identity_process():
    chi = reconstruct_process(lambda rho: rho).chi
    expected = np.zeros((9, 9))
    expected[0, 0] = 1.0
    np.testing.assert_allclose(chi, expected, atol=1e-12)


@pytest.mark.parametrize("index", range(1, 9))
def test_conjugation_by_gell_mann_matrix(index):
    chi = reconstruct_process(conjugation_process(gell_mann(index))).chi
    expected = np.zeros((9, 9))
    expected[index, index] = 1.0
    np.testing.assert_allclose(chi, expected, atol=1e-12)


def test_quarter_turn_analytic_chi(ops):
    c = ops.expand(QUARTER_TURN)
    np.testing.assert_allclose(c, [1 / 3, 0, 0, -1 / 2, 0, 1j, 0, 0, math.sqrt(3) / 6], atol=1e-15)
    chi = chi_from_unitary(QUARTER_TURN, ops)
    assert chi.chi[0, 0] == pytest.approx(1 / 9)
    assert chi.chi[3, 3] == pytest.approx(1 / 4)
    assert chi.chi[5, 5] == pytest.approx(1.0)
    assert chi.chi[8, 8] == pytest.approx(1 / 12)
    assert chi.trace == pytest.approx(13 / 9)


def test_reconstruction_matches_analytic_unitary_chi(ops):
    reconstructed = reconstruct_process(unitary_process(QUARTER_TURN))
    np.testing.assert_allclose(reconstructed.chi, chi_from_unitary(QUARTER_TURN, ops).chi, atol=1e-12)
    assert kraus_rank(reconstructed) == 1
    assert trace_preservation_residual(reconstructed, ops) < 1e-12


def test_normalized_chi_has_unit_trace(ops):
    chi = chi_from_unitary(QUARTER_TURN, ops)
    assert np.trace(chi.normalized()).real == pytest.approx(1.0)


def test_apply_chi_reproduces_process(ops, rng):
    process = amplitude_damping(0.3)
    chi = reconstruct_process(process)
    for _ in range(5):
        rho = random_density_matrix(rng)
        np.testing.assert_allclose(apply_chi(chi, rho, ops), process(rho), atol=1e-12)


def test_apply_chi_on_stack(ops, states):
    chi = reconstruct_process(unitary_process(QUARTER_TURN))
    stack = np.array(states.elements)
    np.testing.assert_allclose(apply_chi(chi, stack, ops), unitary_process(QUARTER_TURN)(stack), atol=1e-12)


def test_amplitude_damping_has_two_kraus_operators(ops, rng):
    process = amplitude_damping(0.3)
    chi = reconstruct_process(process)
    assert kraus_rank(chi) == 2
    operators = kraus_from_chi(chi, ops)
    assert len(operators) == 2
    rho = random_density_matrix(rng)
    np.testing.assert_allclose(apply_kraus(operators, rho), process(rho), atol=1e-12)


def test_single_matrix_process_falls_back_to_per_input_calls(ops, states):
    lam = extract_lambda(full_depolarizing, states)
    chi = reconstruct_chi(default_beta(), lam)
    np.testing.assert_allclose(np.diag(chi.chi), [1 / 9] + [1 / 6] * 8, atol=1e-12)
    np.testing.assert_allclose(chi.chi - np.diag(np.diag(chi.chi)), 0.0, atol=1e-12)
    assert kraus_rank(chi) == 9
    assert trace_preservation_residual(chi, ops) < 1e-12


def test_non_hermitian_process_is_rejected():
    with pytest.raises(ChiHermiticityError):
        reconstruct_process(lambda rho: gell_mann(1) @ rho)


def test_reconstruct_rejects_wrong_lambda_length():
    with pytest.raises(ValueError):
        reconstruct_chi(default_beta(), np.zeros(80))


def test_validate_identity_chi(ops):
    chi = np.zeros((9, 9), dtype=complex)
    chi[0, 0] = 1.0
    report = validate_chi(ProcessMatrix(chi=chi), ops)
    assert report.passes()
    assert report.kraus_rank == 1
    assert report.trace == pytest.approx(1.0)
    assert report.trace_preservation_residual < 1e-15


def test_validate_flags_non_hermitian_chi(ops):
    chi = np.zeros((9, 9), dtype=complex)
    chi[0, 0] = 1.0
    chi[2, 5] = 0.1
    report = validate_chi(ProcessMatrix(chi=chi), ops)
    assert report.hermiticity_residual == pytest.approx(0.1)
    assert not report.passes()


def test_validate_flags_non_trace_preserving_chi(ops):
    chi = np.zeros((9, 9), dtype=complex)
    chi[0, 0] = 0.5
    report = validate_chi(ProcessMatrix(chi=chi), ops)
    assert report.trace_preservation_residual == pytest.approx(0.5)
    assert not report.passes()
