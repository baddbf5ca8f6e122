# In this file, you can set the configurations of the app.
from src.utils.constants import INFO, DEBUG, ERROR

#config related to logging must have prefix LOG_
LOG_LEVEL = INFO # Can be DEBUG, INFO, WARNING, ERROR, CRITICAL
LOG_TO_FILE = False
LOG_TO_CONSOLE = True

# Root folder for run artifacts when --out is not given
OUTPUT_DIR = "output"

# Threads used by table1 to run its nine experiments
MAX_WORKERS = 3

# Thresholds applied by the validate command and the qpt report
HERMITICITY_TOL = 1e-8
TRACE_PRESERVATION_TOL = 1e-5
MIN_EIGENVALUE_TOL = 1e-5

# Allowed deviation from the published table
STATE_FIDELITY_TOL = 0.01
PROCESS_METRIC_TOL = 0.05
