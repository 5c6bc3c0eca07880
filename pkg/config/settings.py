"""
Toolkit configuration and constants
"""

TOOL_NAME = "nls-verify"
TOOL_VERSION = "1.0.0"

# Identity testing (zero tests that cannot be decided exactly)
IDENTITY_SAMPLES = 32
IDENTITY_WINDOW = (-10.0, 10.0)
POLE_EXCLUSION = 1e-3
IDENTITY_RTOL = 1e-12
IDENTITY_SEED = 20240101
MAX_SAMPLE_ATTEMPTS = 50  # candidate draws per accepted sample

# Default singular manifold and leading coefficient for Painleve runs
DEFAULT_PSI = "t^2"
DEFAULT_U0 = "1"

# Finite differences
FD_STEP = 1e-5

# Solver
POLE_GUARD = 1e-2
MIN_GRID_POINTS = 16

# Gridded fields: fraction of the periodic box trusted after resampling
SUPPORT_FRACTION = 0.8

# Reports
REPORT_FLOAT_DIGITS = 17
FIELD_CSV_HEADER = "t,x,re,im,abs"

# Logging
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
DEFAULT_LOG_LEVEL = "WARNING"

# Exit codes
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
