"""Full-length runs on the published window: the comparison table and the χ oracle."""
import numpy as np
import pytest

from config import MIN_EIGENVALUE_TOL, PROCESS_METRIC_TOL, STATE_FIDELITY_TOL
from src.experiment_runner import run_table1, run_tomography
from src.experiment_schemas.experiment import ExperimentConfig
from src.qutrit.algebra import operator_basis, state_basis
from src.qutrit.dynamics import propagate
from src.qutrit.qpt import ProcessMatrix, apply_chi, apply_kraus, kraus_from_chi, kraus_rank
from src.utils import constants
from tests.conftest import random_density_matrix

pytestmark = pytest.mark.slow

PRESETS = [constants.NONE, constants.D1, constants.D2]
ORACLE_TOL = {constants.NONE: 1e-6, constants.D1: 1e-5, constants.D2: 1e-5}


@pytest.fixture(scope="module")
def table():
    return run_table1()


@pytest.fixture(scope="module")
def oracle_inputs():
    rng = np.random.default_rng(7)
    randoms = [random_density_matrix(rng) for _ in range(20)]
    return np.concatenate([np.array(state_basis().elements), np.array(randoms)])


@pytest.mark.parametrize("process", constants.TABLE1_PROCESSES)
def test_state_fidelities_match_published(table, process):
    for column in constants.STATE_FIDELITY_COLUMNS:
        assert table.rows[process][column] == pytest.approx(
            constants.PUBLISHED_TABLE1[process][column], abs=STATE_FIDELITY_TOL
        ), column


@pytest.mark.parametrize("process", constants.TABLE1_PROCESSES)
def test_process_metrics_are_ordered_and_deviations_reported(table, process):
    row = table.rows[process]
    for column in (constants.PROCESS_FIDELITY_D1, constants.PROCESS_FIDELITY_D2):
        assert 0.0 <= row[column] <= 1.0
    assert row[constants.PROCESS_FIDELITY_D1] > row[constants.PROCESS_FIDELITY_D2]
    assert row[constants.PROCESS_DISTANCE_D1] < row[constants.PROCESS_DISTANCE_D2]
    for column in constants.TABLE1_COLUMNS:
        deviation = table.deviations[process][column]
        assert deviation == pytest.approx(row[column] - constants.PUBLISHED_TABLE1[process][column])
        if abs(deviation) > PROCESS_METRIC_TOL:
            assert (process, column) in table.out_of_tolerance


@pytest.mark.parametrize("process", constants.TABLE1_PROCESSES)
@pytest.mark.parametrize("preset", PRESETS)
def test_chi_reproduces_direct_propagation(table, oracle_inputs, process, preset):
    config = ExperimentConfig().with_overrides(process=process, decoherence=preset)
    expected = propagate(
        oracle_inputs, config.kind, config.pulse_params(), config.decoherence_rates(), config.time_grid()
    )
    chi = ProcessMatrix(chi=table.chis[(process, preset)])
    actual = apply_chi(chi, oracle_inputs, operator_basis())
    assert np.max(np.abs(actual - expected)) <= ORACLE_TOL[preset]


def test_decoherence_free_stirap_peaks_at_lambda5(table):
    weights = np.abs(np.diag(table.chis[(constants.STIRAP, constants.NONE)]))
    assert int(np.argmax(weights[1:])) + 1 == 5


@pytest.mark.parametrize("process", constants.TABLE1_PROCESSES)
def test_decoherence_spreads_weight_onto_the_diagonal(table, process):
    shares = table.diagonal_shares[process]
    assert shares[constants.D2] > shares[constants.D1] > shares[constants.NONE]


def test_noisy_sastirap_needs_several_kraus_operators(table):
    ops = operator_basis()
    chi = ProcessMatrix(chi=table.chis[(constants.SA_STIRAP, constants.D1)])
    assert kraus_rank(chi) > 1
    rho = random_density_matrix(np.random.default_rng(11))
    np.testing.assert_allclose(
        apply_kraus(kraus_from_chi(chi, ops, clamp_tol=MIN_EIGENVALUE_TOL), rho),
        apply_chi(chi, rho, ops),
        atol=1e-5,
    )


def test_identity_run_is_a_single_chi_entry():
    report = run_tomography(ExperimentConfig.model_validate({"process": "identity"}))
    chi = np.abs(report.chi.chi)
    assert chi[0, 0] == pytest.approx(1.0, abs=1e-12)
    chi[0, 0] = 0.0
    assert np.max(chi) < 1e-12
