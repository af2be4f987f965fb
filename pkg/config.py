"""
bmg_lab Configuration Management
Handles environment variables, enumeration limits, and expected classification data.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Project root directory
PROJECT_ROOT = Path(__file__).parent

# Application Settings
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

# Enumeration Settings
BMG_WORKERS = int(os.getenv("BMG_WORKERS", "1"))
# Exhaustive scans cover 2^(2*i*j) masks; i*j above this needs an explicit override
PAIR_BUDGET = int(os.getenv("BMG_PAIR_BUDGET", "12"))
# Masks per vectorised chunk = 2 ** CHUNK_BITS
CHUNK_BITS = int(os.getenv("BMG_CHUNK_BITS", "16"))
SWAP_CONVENTION = os.getenv("BMG_SWAP_CONVENTION", "when-equal")
# Classification rows count classes of plain digraphs; component color flips are merged
CLASSIFY_CONVENTION = os.getenv("BMG_CLASSIFY_CONVENTION", "uncolored")
DEFAULT_SEED = int(os.getenv("BMG_SEED", "1"))

# Data directories
DATA_DIR = PROJECT_ROOT / "data"
FIXTURES_FILE = DATA_DIR / "fixtures" / "published_graphs.json"
OUTPUT_DIR = Path(os.getenv("BMG_OUTPUT_DIR", str(DATA_DIR / "output")))

# Published counts (A, B, C, D, E) of the classification sets, keyed by (n, i)
# with class sizes i and n - i, counted up to isomorphism of plain digraphs.
# The C and D columns do not follow their definitions: for (4, 2) they hold the
# sink-free count and the count of graphs with equivalent vertices.
PUBLISHED_CLASSIFICATION = {
    (4, 2): (26, 14, 5, 11, 2),
    (5, 2): (122, 74, 51, 16, 4),
    (6, 2): (353, 175, 69, 33, 2),
    (6, 3): (347, 172, 149, 33, 8),
    (7, 2): (647, 283, 571, 59, 1),
    (7, 3): (555, 324, 352, 126, 21),
}

# Published number of extension classes of the elementary bases
PUBLISHED_EXTENSIONS = {
    "pi11": 7,
    "pi2_8": 18,
}

PUBLISHED_EXTENSION_LISTS = {
    "pi11": [f"gamma{k}_7" for k in range(1, 8)],
    "pi2_8": [f"gamma{k}_8" for k in range(1, 19)],
}

# Fixture names of the published E-set members, keyed like PUBLISHED_CLASSIFICATION
PUBLISHED_E_LISTS = {
    (3, 1): ["gamma1_3"],
    (4, 2): ["gamma1_4", "gamma2_4"],
    (5, 2): ["gamma1_5", "gamma2_5", "gamma3_5", "gamma4_5"],
    (6, 2): ["gamma1_6", "gamma2_6"],
    (6, 3): [f"gamma{k}_6" for k in range(3, 11)],
    (7, 3): [f"gamma{k}_7" for k in range(1, 22)],
}

# Quality thresholds for the classification report
QUALITY_CONFIG = {
    "require_lattice": True,
    "rerun_conventions_on_mismatch": True,
    # Published columns a row must reproduce; the others are reported only
    "published_columns": ("A", "B", "E"),
}


def validate_config() -> tuple[bool, list[str]]:
    """Validate configuration settings."""
    errors = []

    if BMG_WORKERS < 1:
        errors.append("BMG_WORKERS must be at least 1")

    if PAIR_BUDGET < 1:
        errors.append("BMG_PAIR_BUDGET must be positive")

    if not 8 <= CHUNK_BITS <= 24:
        errors.append("BMG_CHUNK_BITS must be between 8 and 24")

    conventions = ("when-equal", "never", "always", "uncolored")
    if SWAP_CONVENTION not in conventions:
        errors.append(f"BMG_SWAP_CONVENTION must be one of {conventions}, got '{SWAP_CONVENTION}'")
    if CLASSIFY_CONVENTION not in conventions:
        errors.append(f"BMG_CLASSIFY_CONVENTION must be one of {conventions}, got '{CLASSIFY_CONVENTION}'")

    if not FIXTURES_FILE.exists():
        errors.append(f"Fixture manifest not found at {FIXTURES_FILE}")

    return len(errors) == 0, errors
