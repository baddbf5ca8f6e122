"""
Schema of the experiment configuration file.

Values are written in lab units (MHz, GHz, ns, rad) and converted to rad/ns and
1/ns by the ``*_params`` accessors. Every field defaults to the published value.
"""
import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.qutrit.dynamics import DecoherenceRates, TimeGrid
from src.qutrit.hamiltonians import HamiltonianKind
from src.qutrit.pulses import PulseParams
from src.utils import constants
from src.utils.units import ghz_to_rad_per_ns, mhz_to_rad_per_ns, rate_mhz_to_per_ns

ProcessName = Literal["stirap", "sastirap", "twophoton", "identity"]
PresetName = Literal["none", "d1", "d2", "custom"]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PulseSection(StrictModel):
    amp01_mhz: float = Field(constants.PEAK_RABI_MHZ, ge=0)
    amp12_mhz: float = Field(constants.PEAK_RABI_MHZ, ge=0)
    sigma_ns: float = Field(constants.SIGMA_NS, gt=0)
    # None means T_SEP_OVER_SIGMA * sigma
    t_sep_ns: Optional[float] = None
    phi01: float = 0.0
    phi12: float = 0.0
    phi02: float = constants.DEFAULT_PHI02

    @property
    def resolved_t_sep(self) -> float:
        if self.t_sep_ns is None:
            return constants.T_SEP_OVER_SIGMA * self.sigma_ns
        return self.t_sep_ns


class FrequencySection(StrictModel):
    omega01_ghz: float = Field(constants.OMEGA01_GHZ, gt=0)
    omega12_ghz: float = Field(constants.OMEGA12_GHZ, gt=0)


class DetuningSection(StrictModel):
    delta01_mhz: float = 0.0
    delta12_mhz: float = 0.0


class RatesSection(StrictModel):
    gamma_rel_10: float = Field(0.0, ge=0)
    gamma_rel_21: float = Field(0.0, ge=0)
    gamma_phi_10: float = Field(0.0, ge=0)
    gamma_phi_21: float = Field(0.0, ge=0)
    gamma_phi_20: float = Field(0.0, ge=0)


class DecoherenceSection(StrictModel):
    preset: PresetName = constants.NONE
    # MHz, read only when preset is "custom"
    rates: Optional[RatesSection] = None

    @model_validator(mode="after")
    def _custom_needs_rates(self):
        if self.preset == constants.CUSTOM and self.rates is None:
            raise ValueError("decoherence preset 'custom' requires a 'rates' section")
        return self

    def rates_mhz(self) -> dict:
        if self.preset == constants.CUSTOM:
            return self.rates.model_dump()
        return dict(constants.DECOHERENCE_RATES_MHZ[self.preset])


class GridSection(StrictModel):
    t_start_ns: float = constants.T_START_NS
    t_end_ns: float = constants.T_END_NS
    n_steps: int = Field(constants.N_STEPS, ge=1)

    @model_validator(mode="after")
    def _ordered(self):
        if not self.t_end_ns > self.t_start_ns:
            raise ValueError(f"t_end_ns ({self.t_end_ns}) must exceed t_start_ns ({self.t_start_ns})")
        return self


class SimulateSection(StrictModel):
    all_basis_inputs: bool = False


class ExperimentConfig(StrictModel):
    process: ProcessName = constants.SA_STIRAP
    pulse: PulseSection = Field(default_factory=PulseSection)
    frequencies: FrequencySection = Field(default_factory=FrequencySection)
    detunings: DetuningSection = Field(default_factory=DetuningSection)
    decoherence: DecoherenceSection = Field(default_factory=DecoherenceSection)
    grid: GridSection = Field(default_factory=GridSection)
    simulate: SimulateSection = Field(default_factory=SimulateSection)

    @property
    def kind(self) -> HamiltonianKind:
        return HamiltonianKind(self.process)

    def with_overrides(self, process: Optional[str] = None, decoherence: Optional[str] = None) -> "ExperimentConfig":
        """Copy with the process kind and/or decoherence preset replaced."""
        data = self.model_dump()
        if process is not None:
            data["process"] = process
        if decoherence is not None:
            data["decoherence"]["preset"] = decoherence
        return ExperimentConfig.model_validate(data)

    def pulse_params(self) -> PulseParams:
        omega01 = ghz_to_rad_per_ns(self.frequencies.omega01_ghz)
        omega12 = ghz_to_rad_per_ns(self.frequencies.omega12_ghz)
        return PulseParams(
            amp01=mhz_to_rad_per_ns(self.pulse.amp01_mhz),
            amp12=mhz_to_rad_per_ns(self.pulse.amp12_mhz),
            sigma=self.pulse.sigma_ns,
            t_sep=self.pulse.resolved_t_sep,
            phi01=self.pulse.phi01,
            phi12=self.pulse.phi12,
            phi02=self.pulse.phi02,
            delta01=mhz_to_rad_per_ns(self.detunings.delta01_mhz),
            delta12=mhz_to_rad_per_ns(self.detunings.delta12_mhz),
            big_delta=(omega01 - omega12) / 2,
        )

    def decoherence_rates(self) -> DecoherenceRates:
        return DecoherenceRates(**{
            name: rate_mhz_to_per_ns(value)
            for name, value in self.decoherence.rates_mhz().items()
        })

    def time_grid(self) -> TimeGrid:
        return TimeGrid(self.grid.t_start_ns, self.grid.t_end_ns, self.grid.n_steps)


def default_phases_are_counterdiabatic(pulse: PulseSection) -> bool:
    """φ₀₁ + φ₁₂ − φ₀₂ = −π/2."""
    return math.isclose(pulse.phi01 + pulse.phi12 - pulse.phi02, -math.pi / 2, abs_tol=1e-12)
