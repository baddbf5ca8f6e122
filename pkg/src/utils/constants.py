import math

# String constants used in the application
DEBUG = "DEBUG"
INFO = "INFO"
WARNING = "WARNING"
ERROR = "ERROR"
CRITICAL = "CRITICAL"

# Process kinds accepted by the config file and the CLI
STIRAP = "stirap"
SA_STIRAP = "sastirap"
TWO_PHOTON = "twophoton"
IDENTITY = "identity"
PROCESS_KINDS = [STIRAP, SA_STIRAP, TWO_PHOTON, IDENTITY]
TABLE1_PROCESSES = [STIRAP, SA_STIRAP, TWO_PHOTON]

# Decoherence presets
NONE = "none"
D1 = "d1"
D2 = "d2"
CUSTOM = "custom"
DECOHERENCE_PRESETS = [NONE, D1, D2, CUSTOM]

# Relaxation and pure-dephasing rates of the presets, in MHz
DECOHERENCE_RATES_MHZ = {
    NONE: {
        "gamma_rel_10": 0.0,
        "gamma_rel_21": 0.0,
        "gamma_phi_10": 0.0,
        "gamma_phi_21": 0.0,
        "gamma_phi_20": 0.0,
    },
    D1: {
        "gamma_rel_10": 0.5,
        "gamma_rel_21": 0.71,
        "gamma_phi_10": 0.4,
        "gamma_phi_21": 0.56,
        "gamma_phi_20": 0.96,
    },
    D2: {
        "gamma_rel_10": 2.5,
        "gamma_rel_21": 3.55,
        "gamma_phi_10": 2.0,
        "gamma_phi_21": 2.80,
        "gamma_phi_20": 4.8,
    },
}

# Published parameters
OMEGA01_GHZ = 5.27
OMEGA12_GHZ = 4.82
PEAK_RABI_MHZ = 45.0
SIGMA_NS = 35.0
T_SEP_OVER_SIGMA = -0.8
T_START_NS = -182.0
T_END_NS = 140.0
N_STEPS = 1800
DEFAULT_PHI02 = math.pi / 2

# Output files
CONFIG_YAML = "experiment.yaml"
CHI_REAL_CSV = "chi_real.csv"
CHI_IMAG_CSV = "chi_imag.csv"
CHI_ABS_CSV = "chi_abs.csv"
POPULATIONS_CSV = "populations.csv"
REPORT_JSON = "report.json"
CHI_SVG = "chi.svg"
TABLE1_JSON = "table1.json"
CHI_GRID_SVG = "chi_grid.svg"
VALIDATION_JSON = "validation.json"

# 17 significant digits round-trip any double exactly
FLOAT_FORMAT = "%.17g"

# Exit codes
EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_FAILURE = 3
EXIT_VALIDATION_FAILURE = 4

# Table columns and published values
PROCESS_FIDELITY_D1 = "F_0_d1"
PROCESS_FIDELITY_D2 = "F_0_d2"
PROCESS_DISTANCE_D1 = "D_0_d1"
PROCESS_DISTANCE_D2 = "D_0_d2"
STATE_FIDELITY_0 = "F0"
STATE_FIDELITY_D1 = "Fd1"
STATE_FIDELITY_D2 = "Fd2"
TABLE1_COLUMNS = [
    PROCESS_FIDELITY_D1,
    PROCESS_FIDELITY_D2,
    PROCESS_DISTANCE_D1,
    PROCESS_DISTANCE_D2,
    STATE_FIDELITY_0,
    STATE_FIDELITY_D1,
    STATE_FIDELITY_D2,
]
STATE_FIDELITY_COLUMNS = [STATE_FIDELITY_0, STATE_FIDELITY_D1, STATE_FIDELITY_D2]
PUBLISHED_TABLE1 = {
    STIRAP: dict(zip(TABLE1_COLUMNS, [0.76, 0.31, 0.25, 0.74, 0.916, 0.796, 0.464])),
    SA_STIRAP: dict(zip(TABLE1_COLUMNS, [0.78, 0.33, 0.24, 0.72, 0.999, 0.861, 0.487])),
    TWO_PHOTON: dict(zip(TABLE1_COLUMNS, [0.78, 0.33, 0.24, 0.72, 0.888, 0.770, 0.446])),
}
PROCESS_DISPLAY_NAMES = {
    STIRAP: "STIRAP",
    SA_STIRAP: "saSTIRAP",
    TWO_PHOTON: "Two-photon process",
    IDENTITY: "Identity",
}
