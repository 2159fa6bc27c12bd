import os

BASE_DIR = os.path.abspath(os.path.dirname(__file__))

# SQLite run ledger location
INSTANCE_DIR = os.environ.get("HEISLAB_INSTANCE_DIR", os.path.join(BASE_DIR, "instance"))
LEDGER_PATH = os.path.join(INSTANCE_DIR, "heislab_runs.db")
LEDGER_ENABLED = os.environ.get("HEISLAB_LEDGER", "1").lower() not in ("0", "false", "off", "no")

# Ensure the instance directory exists
os.makedirs(INSTANCE_DIR, exist_ok=True)

# Default directory for report files; unset means reports go to stdout
OUTPUT_DIR = os.environ.get("HEISLAB_OUTPUT_DIR") or None

LOG_LEVEL = os.environ.get("HEISLAB_LOG_LEVEL", "WARNING")

SCHEMA_VERSION = "1.0"

# Hermite truncation / eigensolver limits
BASIS_CAP = 5000
MONOMIAL_CAP = 200000
DENSE_EIGEN_LIMIT = 2000
EIGEN_TOL = 1e-10

# Tolerances (all overridable from the CLI)
TOL_MATRIX = 1e-12
TOL_ORTHOGONAL = 1e-14
TOL_SPECTRUM = 1e-8
TOL_CALIBRATION = 1e-10
TOL_HERMITIAN = 1e-12

# Largest denominator when a float direction is read back as a lattice direction
LATTICE_DENOMINATOR = 10 ** 6

DEFAULT_SEED = 0
RANDOM_SAMPLES = 100
