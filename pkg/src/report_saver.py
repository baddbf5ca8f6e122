import json
from pathlib import Path
from typing import Optional

import numpy as np

from src.logging import logger
from src.run_report import RunReport
from src.utils.constants import (
    CHI_ABS_CSV,
    CHI_IMAG_CSV,
    CHI_REAL_CSV,
    CHI_SVG,
    FLOAT_FORMAT,
    POPULATIONS_CSV,
    REPORT_JSON,
)
from src.utils.heatmap import render_chi_heatmap


def write_grid_csv(path: Path, grid: np.ndarray, header: str = ""):
    np.savetxt(path, grid, delimiter=",", fmt=FLOAT_FORMAT, header=header, comments="")


def write_json(path: Path, data: dict):
    with open(path, "w", encoding="utf-8") as json_file:
        json.dump(data, json_file, indent=2, sort_keys=False)
        json_file.write("\n")


def load_chi_grid(path: Path) -> np.ndarray:
    """
    Load a 9×9 complex χ from ``report.json``, from ``chi_real.csv`` (with the
    sibling ``chi_imag.csv`` when present) or from a folder holding either.

    Raises:
        ValueError: If the file does not parse as a 9×9 grid.
    """
    path = Path(path)
    if path.is_dir():
        path = path / REPORT_JSON if (path / REPORT_JSON).exists() else path / CHI_REAL_CSV
    if not path.exists():
        raise FileNotFoundError(f"Chi file not found: {path}")
    try:
        if path.suffix == ".json":
            with open(path, "r", encoding="utf-8") as stream:
                data = json.load(stream)
            chi = RunReport.from_dict(data).chi
            if chi is None:
                raise ValueError(f"{path} holds no chi matrix")
            grid = chi.chi
        else:
            grid = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2).astype(complex)
            imag_path = path.with_name(CHI_IMAG_CSV)
            if path.name == CHI_REAL_CSV and imag_path.exists():
                grid = grid + 1j * np.loadtxt(imag_path, delimiter=",", dtype=float, ndmin=2)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValueError(f"Could not parse chi file {path}: {exc}") from exc
    if grid.shape != (9, 9):
        raise ValueError(f"Chi file {path} holds a {grid.shape} grid, expected 9x9")
    return grid


class ReportSaver:

    def __init__(self, report: RunReport, output_dir: Path):
        self.report = report
        self.output_dir = Path(output_dir)

    # Function to create the directory for the run artifacts
    def create_output_directory(self) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir

    # Function to save the real, imaginary and absolute chi grids
    def save_chi_csv(self):
        if self.report.chi is None:
            raise ValueError("Report holds no chi matrix to save.")
        chi = self.report.chi.chi
        write_grid_csv(self.output_dir / CHI_REAL_CSV, np.real(chi))
        write_grid_csv(self.output_dir / CHI_IMAG_CSV, np.imag(chi))
        write_grid_csv(self.output_dir / CHI_ABS_CSV, np.abs(chi))

    def save_heatmap(self, title: Optional[str] = None):
        if self.report.chi is None:
            raise ValueError("Report holds no chi matrix to render.")
        render_chi_heatmap(self.report.chi.chi, self.output_dir / CHI_SVG, title or "|chi|")

    def save_populations(self):
        if self.report.populations is None:
            return
        table = np.column_stack([self.report.times, self.report.populations])
        write_grid_csv(self.output_dir / POPULATIONS_CSV, table, header="t_ns,p0,p1,p2")

    # Function to save the report itself as JSON
    def save_report_json(self):
        write_json(self.output_dir / REPORT_JSON, self.report.to_dict())

    @staticmethod
    def save(report: RunReport, output_dir: Path, title: Optional[str] = None) -> Path:
        saver = ReportSaver(report, output_dir)
        saver.create_output_directory()
        if report.chi is not None:
            saver.save_chi_csv()
            saver.save_heatmap(title)
        saver.save_populations()
        saver.save_report_json()
        logger.info(f"Run artifacts saved to {saver.output_dir}")
        return saver.output_dir
