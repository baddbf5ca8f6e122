"""
SVG heatmaps of |χ| with the basis labelled 1-9 (1 = identity, 2-9 = Λ₁..Λ₈).
"""
from pathlib import Path
from typing import Dict, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from src.logging import logger

AXIS_LABELS = [str(i) for i in range(1, 10)]
COLOR_MAP = "viridis"


def _configure_deterministic_svg():
    plt.rcParams["svg.hashsalt"] = "qutrit-chi"
    plt.rcParams["svg.fonttype"] = "none"


def _draw(ax, grid: np.ndarray, vmin: float, vmax: float, title: str):
    image = ax.imshow(grid, cmap=COLOR_MAP, vmin=vmin, vmax=vmax, origin="upper")
    ax.set_xticks(range(9))
    ax.set_yticks(range(9))
    ax.set_xticklabels(AXIS_LABELS)
    ax.set_yticklabels(AXIS_LABELS)
    ax.set_title(title)
    return image


def render_chi_heatmap(chi: np.ndarray, path: Path, title: str = "|chi|") -> Path:
    """Write a single |χ| heatmap with its color bar."""
    _configure_deterministic_svg()
    grid = np.abs(chi)
    fig, ax = plt.subplots(figsize=(5, 4.2))
    try:
        image = _draw(ax, grid, 0.0, float(grid.max()) or 1.0, title)
        fig.colorbar(image, ax=ax)
        fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    logger.debug(f"Heatmap written to {path}")
    return path


def render_chi_grid(
    chis: Dict[Tuple[str, str], np.ndarray],
    rows: Sequence[str],
    columns: Sequence[str],
    path: Path,
) -> Path:
    """
    Write a rows × columns panel of |χ| heatmaps; every row shares one linear
    color scale and one color bar at its right.
    """
    _configure_deterministic_svg()
    fig, axes = plt.subplots(len(rows), len(columns), figsize=(4 * len(columns), 3.6 * len(rows)), squeeze=False)
    try:
        for r, row in enumerate(rows):
            row_max = max(float(np.abs(chis[(row, column)]).max()) for column in columns) or 1.0
            image = None
            for c, column in enumerate(columns):
                image = _draw(axes[r][c], np.abs(chis[(row, column)]), 0.0, row_max, f"{row} / {column}")
            fig.colorbar(image, ax=list(axes[r]))
        fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    logger.debug(f"Heatmap grid written to {path}")
    return path
