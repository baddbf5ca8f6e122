import sys
import time
import traceback
from pathlib import Path
from typing import Callable, Optional

import click
import yaml
from pydantic import ValidationError

from config import LOG_LEVEL, MAX_WORKERS, OUTPUT_DIR
from src.experiment_runner import run_simulation, run_table1, run_tomography, validate_chi_file
from src.experiment_schemas.experiment import ExperimentConfig, default_phases_are_counterdiabatic
from src.logging import init_loguru_logger, logger
from src.qutrit.errors import QutritError
from src.report_saver import ReportSaver, write_json
from src.utils import constants
from src.utils.constants import (
    CHI_GRID_SVG,
    DEBUG,
    EXIT_CONFIG_ERROR,
    EXIT_NUMERICAL_FAILURE,
    EXIT_OK,
    EXIT_VALIDATION_FAILURE,
    TABLE1_JSON,
    VALIDATION_JSON,
)
from src.utils.heatmap import render_chi_grid


class ConfigError(Exception):
    """Custom exception for configuration-related errors."""
    pass


class ConfigValidator:
    """Validates the experiment configuration YAML file."""

    @staticmethod
    def load_yaml(yaml_path: Path) -> dict:
        """Load and parse a YAML file."""
        try:
            with open(yaml_path, "r") as stream:
                return yaml.safe_load(stream)
        except yaml.YAMLError as exc:
            raise ConfigError(f"Error reading YAML file {yaml_path}: {exc}")
        except FileNotFoundError:
            raise ConfigError(f"YAML file not found: {yaml_path}")

    @classmethod
    def validate_config(
        cls,
        config_yaml_path: Optional[Path],
        process: Optional[str] = None,
        decoherence: Optional[str] = None,
    ) -> ExperimentConfig:
        """
        Validate the experiment file and apply the command-line overrides.
        A missing path means the published defaults.
        """
        parameters = cls.load_yaml(config_yaml_path) if config_yaml_path else {}
        if parameters is None:
            parameters = {}
        if not isinstance(parameters, dict):
            raise ConfigError(f"Top level of {config_yaml_path} must be a mapping")
        try:
            config = ExperimentConfig.model_validate(parameters)
            config = config.with_overrides(process=process, decoherence=decoherence)
        except ValidationError as exc:
            raise ConfigError(f"Invalid configuration in {config_yaml_path or 'defaults'}:\n{exc}")
        cls._check_phases(config)
        return config

    @staticmethod
    def _check_phases(config: ExperimentConfig):
        """saSTIRAP expects φ01 + φ12 − φ02 = −π/2; other phases still run."""
        if config.process == constants.SA_STIRAP and not default_phases_are_counterdiabatic(config.pulse):
            logger.warning(
                f"Phases phi01={config.pulse.phi01}, phi12={config.pulse.phi12}, phi02={config.pulse.phi02} "
                "break the counterdiabatic condition phi01 + phi12 - phi02 = -pi/2"
            )


class FileManager:
    """Handles output folder preparation."""

    @staticmethod
    def prepare_output_folder(out: Optional[Path], command: str) -> Path:
        """Use the given folder, or ``OUTPUT_DIR/<command>`` when none is given."""
        output_folder = Path(out) if out else Path(OUTPUT_DIR) / command
        output_folder.mkdir(parents=True, exist_ok=True)
        return output_folder


def format_execution_time(seconds: float) -> str:
    """Format execution time into hours, minutes, and seconds."""
    hours = int(seconds // 3600)
    minutes = int((seconds % 3600) // 60)
    remaining_seconds = seconds % 60

    time_parts = []
    if hours > 0:
        time_parts.append(f"{hours} {'hour' if hours == 1 else 'hours'}")
    if minutes > 0:
        time_parts.append(f"{minutes} {'minute' if minutes == 1 else 'minutes'}")
    if remaining_seconds > 0 or not time_parts:
        time_parts.append(f"{remaining_seconds:.2f} seconds")

    return " ".join(time_parts)


def run_command(action: Callable[[], int]) -> int:
    """Run one subcommand body and translate its failure into an exit code."""
    start_time = time.time()
    try:
        exit_code = action()
    except ConfigError as ce:
        logger.error(f"Configuration error: {ce}")
        return EXIT_CONFIG_ERROR
    except QutritError as qe:
        logger.error(f"Numerical failure ({type(qe).__name__}): {qe}")
        logger.debug(traceback.format_exc())
        return EXIT_NUMERICAL_FAILURE
    except Exception as e:
        logger.exception(f"An unexpected error occurred: {e}")
        return 1
    click.echo(f"\nTask completed in {format_execution_time(time.time() - start_time)}")
    return exit_code


def experiment_options(command):
    """Options shared by the commands that run an experiment."""
    options = [
        click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
                     help="Experiment YAML file; the published parameters when omitted."),
        click.option("--out", "out", type=click.Path(file_okay=False, path_type=Path), default=None,
                     help="Folder for the run artifacts."),
        click.option("--process", type=click.Choice(constants.PROCESS_KINDS), default=None,
                     help="Override the process kind of the config."),
        click.option("--decoherence", type=click.Choice([constants.NONE, constants.D1, constants.D2]), default=None,
                     help="Override the decoherence preset of the config."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


@click.group()
@click.option("--verbose", is_flag=True, help="Log debug details to the console.")
def cli(verbose: bool):
    """Qutrit STIRAP laboratory: simulation and 9x9 process tomography."""
    init_loguru_logger(DEBUG if verbose else LOG_LEVEL)


@cli.command()
@experiment_options
@click.pass_context
def simulate(ctx, config_path, out, process, decoherence):
    """Propagate |0><0| and report the transfer fidelity."""

    def action() -> int:
        config = ConfigValidator.validate_config(config_path, process, decoherence)
        output_folder = FileManager.prepare_output_folder(out, "simulate")
        report = run_simulation(config)
        ReportSaver.save(report, output_folder)
        click.echo(report.formatted_summary())
        return EXIT_OK

    ctx.exit(run_command(action))


@cli.command()
@experiment_options
@click.pass_context
def qpt(ctx, config_path, out, process, decoherence):
    """Reconstruct the process matrix chi and write CSV, JSON and SVG artifacts."""

    def action() -> int:
        config = ConfigValidator.validate_config(config_path, process, decoherence)
        output_folder = FileManager.prepare_output_folder(out, "qpt")
        report = run_tomography(config)
        title = f"|chi| {constants.PROCESS_DISPLAY_NAMES[config.process]} ({config.decoherence.preset})"
        ReportSaver.save(report, output_folder, title)
        click.echo(report.formatted_summary())
        validation = validate_chi_file(output_folder)
        if not validation.passed:
            logger.error("Reconstructed chi fails the validation thresholds")
            return EXIT_VALIDATION_FAILURE
        return EXIT_OK

    ctx.exit(run_command(action))


@cli.command()
@experiment_options
@click.pass_context
def table1(ctx, config_path, out, process, decoherence):
    """
    Run STIRAP, saSTIRAP and the two-photon process under none/d1/d2 and compare
    with the published fidelities and distances.
    """

    def action() -> int:
        if process or decoherence:
            logger.warning("table1 runs every process and preset; --process/--decoherence are ignored")
        config = ConfigValidator.validate_config(config_path)
        output_folder = FileManager.prepare_output_folder(out, "table1")
        table = run_table1(config, max_workers=MAX_WORKERS)
        write_json(output_folder / TABLE1_JSON, table.to_dict())
        render_chi_grid(
            table.chis,
            constants.TABLE1_PROCESSES,
            [constants.NONE, constants.D1, constants.D2],
            output_folder / CHI_GRID_SVG,
        )
        click.echo(table.formatted())
        logger.info(f"Table written to {output_folder / TABLE1_JSON}")
        return EXIT_OK

    ctx.exit(run_command(action))


@cli.command()
@click.argument("chi_path", type=click.Path(path_type=Path))
@experiment_options
@click.pass_context
def validate(ctx, chi_path, config_path, out, process, decoherence):
    """
    Check a stored chi (report.json, chi_real.csv or their folder). With --out the
    residuals are also written as validation.json.
    """

    def action() -> int:
        if config_path or process or decoherence:
            logger.warning("validate reads chi from CHI_PATH; --config/--process/--decoherence are ignored")
        try:
            validation = validate_chi_file(chi_path)
        except (ValueError, FileNotFoundError) as exc:
            raise ConfigError(f"Cannot read chi from {chi_path}: {exc}")
        click.echo(validation.formatted())
        if out:
            output_folder = FileManager.prepare_output_folder(out, "validate")
            write_json(output_folder / VALIDATION_JSON, {
                "hermiticity_residual": validation.report.hermiticity_residual,
                "trace_preservation_residual": validation.report.trace_preservation_residual,
                "min_eigenvalue": validation.report.min_eigenvalue,
                "trace": validation.report.trace,
                "kraus_rank": validation.report.kraus_rank,
                "passed": validation.passed,
            })
        return EXIT_OK if validation.passed else EXIT_VALIDATION_FAILURE

    ctx.exit(run_command(action))


def main(argv=None) -> int:
    """Main entry point for the qutrit tomography laboratory."""
    try:
        result = cli.main(args=argv, prog_name="qutrit-lab", standalone_mode=False)
    except click.ClickException as ce:
        ce.show()
        return EXIT_CONFIG_ERROR
    except click.Abort:
        logger.error("Aborted by user")
        return 1
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    exit_code = main()
    sys.exit(exit_code)
