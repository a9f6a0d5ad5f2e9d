import os
from dotenv import load_dotenv

load_dotenv()

# --- Paths ---
BASE_DIR = os.path.dirname(__file__)
LOG_DIR = os.path.join(BASE_DIR, "logs")

# --- Tracing ---
TRACE_LOG = os.getenv("QMAT_TRACE", "1") != "0"  # "0" turns the trace file off

# --- Guards ---

# m^N above this is refused by the brute-force image oracle.
ENUM_GUARD = int(os.getenv("QMAT_ENUM_GUARD", str(10**8)))

# Symbolic centrality expands full products; past 9 generators or m > 3 it gets slow fast.
SYMBOLIC_MAX_GENERATORS = 9
SYMBOLIC_MAX_MODULUS = 3

# --- Enumeration ---
ENUM_CHUNK = 1 << 16  # vectors per numpy batch

# --- Parallelism ---
WORKERS = int(os.getenv("QMAT_WORKERS", "1"))  # 1 = run table cells in-process

# --- Reproduce ---
DEFAULT_MODULI = (3, 5, 7)
REPRODUCE_BRUTE_LIMIT = 3 * 10**6  # brute-force cross-check only below this m^N
RANDOM_SEED = 20240607
RANDOM_CASES = 200

# --- Output ---
SCHEMA_VERSION = "1.0"
