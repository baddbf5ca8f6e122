from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from src.logging import logger
from src.qutrit.qpt import ProcessMatrix, ValidationReport


def complex_grid_to_dict(grid: np.ndarray) -> Dict[str, list]:
    grid = np.asarray(grid, dtype=complex)
    return {"real": np.real(grid).tolist(), "imag": np.imag(grid).tolist()}


def complex_grid_from_dict(data: Dict[str, list]) -> np.ndarray:
    return np.asarray(data["real"], dtype=float) + 1j * np.asarray(data["imag"], dtype=float)


@dataclass
class RunReport:
    config: Dict[str, Any] = field(default_factory=dict)
    chi: Optional[ProcessMatrix] = None
    validation: Optional[ValidationReport] = None
    metrics: Dict[str, float] = field(default_factory=dict)
    final_states: Dict[str, np.ndarray] = field(default_factory=dict)
    populations: Optional[np.ndarray] = None
    times: Optional[np.ndarray] = None
    wall_time: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready view; floats keep their shortest round-trip repr."""
        data: Dict[str, Any] = {
            "config": self.config,
            "metrics": self.metrics,
            "final_states": {label: complex_grid_to_dict(state) for label, state in self.final_states.items()},
            "wall_time_s": self.wall_time,
        }
        if self.chi is not None:
            data["chi"] = complex_grid_to_dict(self.chi.chi)
            data["basis_labels"] = list(self.chi.basis_labels)
            data["beta_condition_number"] = self.chi.condition_number
        if self.validation is not None:
            data["validation"] = {
                "hermiticity_residual": self.validation.hermiticity_residual,
                "min_eigenvalue": self.validation.min_eigenvalue,
                "trace_preservation_residual": self.validation.trace_preservation_residual,
                "trace": self.validation.trace,
                "kraus_rank": self.validation.kraus_rank,
            }
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunReport":
        chi = None
        if "chi" in data:
            chi = ProcessMatrix(
                chi=complex_grid_from_dict(data["chi"]),
                basis_labels=tuple(data.get("basis_labels", ())),
                condition_number=data.get("beta_condition_number"),
            )
        validation = ValidationReport(**data["validation"]) if "validation" in data else None
        return cls(
            config=data.get("config", {}),
            chi=chi,
            validation=validation,
            metrics=data.get("metrics", {}),
            final_states={
                label: complex_grid_from_dict(state)
                for label, state in data.get("final_states", {}).items()
            },
            wall_time=data.get("wall_time_s", 0.0),
        )

    def formatted_summary(self) -> str:
        """
        Formats the run outcome as a short plain-text block.
        """
        logger.debug(f"Formatting summary for process {self.config.get('process')}")
        lines = [
            f"Process: {self.config.get('process')}",
            f"Decoherence: {self.config.get('decoherence', {}).get('preset')}",
        ]
        for name, value in self.metrics.items():
            lines.append(f"{name}: {value:.6g}")
        if self.validation is not None:
            lines.append(f"Hermiticity residual: {self.validation.hermiticity_residual:.3e}")
            lines.append(f"Min eigenvalue: {self.validation.min_eigenvalue:.3e}")
            lines.append(f"TP residual: {self.validation.trace_preservation_residual:.3e}")
            lines.append(f"Tr chi: {self.validation.trace:.6g}")
            lines.append(f"Kraus rank: {self.validation.kraus_rank}")
        lines.append(f"Wall time: {self.wall_time:.2f} s")
        return "\n".join(lines)
