from pathlib import Path
import os
from dotenv import load_dotenv

load_dotenv()

env_root = os.getenv("PROJECT_ROOT", "./")
# Wrap env_root in Path for easier path manipulations
ROOT_DIR = Path(env_root).resolve()

CONFIGS_DIR = ROOT_DIR / "configs"
EXPERIMENT_CONFIGS_DIR = CONFIGS_DIR / "experiments"
SRC_DIR = ROOT_DIR / "src"

LOGS_DIR = ROOT_DIR / "logs"
LOG_FILE_PATH = LOGS_DIR / "mgoig.log"
# Console level when --log-level is not given.
DEFAULT_LOG_LEVEL = os.getenv("MGOIG_LOG_LEVEL", "INFO")

# Default directory for CSV tables, run manifests and Markdown summaries.
# Overridden per run with --output-dir or the config's output_dir.
RESULTS_DIR = Path(os.getenv("MGOIG_OUTPUT_DIR", str(ROOT_DIR / "results"))).resolve()

# --- Tractability caps ---
# Brute-force enumeration of all 2^m labelings of the domain.
MAX_ENUMERATION_POINTS = 20
# Exact densest-subgraph search enumerates vertex subsets of one connected
# component of the g-relevant subgraph at a time.
MAX_DENSITY_VERTICES = 22
# Agnostic one-inclusion graphs are full hypercubes on n + 1 coordinates.
MAX_AGNOSTIC_VERTICES = 2**12
# Weighted samples enumerated by the exact prediction-error mode.
EXACT_ENUMERATION_BUDGET = 10**7
# LP oracle used by the solver tests.
ORACLE_MAX_EDGES = 8
ORACLE_MAX_DENOMINATOR = 4
# n! permutation cross-check of the closed-form transductive error.
MAX_PERMUTATION_N = 7
# Exhaustive search over b in {0,1}^I for the lower-bound harness.
MAX_EXHAUSTIVE_LOWER_BOUND_I = 10
# Exhaustive subset search for the multi-group covering number.
MAX_COVER_BRUTE_FORCE = 20

# --- Guarantee constants ---
# High-probability constant of the prefix-majority aggregate (realizable).
PAC_REALIZABLE_CONSTANT = 9.64
# Constant of the averaged prefix guarantee the majority argument doubles.
PREFIX_AVERAGE_CONSTANT = 4.82
# Discounted-density and agnostic excess-risk constant.
AGNOSTIC_CONSTANT = 16
# Two-sided normal quantile used for the 99% Monte Carlo half-width.
MC_Z_99 = 2.5758293035489

CSV_COLUMNS = [
    "experiment_id",
    "learner",
    "g_id",
    "n",
    "metric",
    "value",
    "value_decimal",
    "bound",
    "bound_decimal",
    "bound_satisfied",
    "ci_halfwidth",
    "seed",
]
