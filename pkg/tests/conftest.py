import os
import sys
from pathlib import Path

import pytest

# Add the project root to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from XiBounds.models import HIGH_TABLE_BASE, HIGH_TABLE_FIRST_INDEX  # noqa: E402
from XiBounds.zerodata import read_zero_table  # noqa: E402

SAMPLES_DIR = project_root / "samples"

# Public Odlyzko tables are large; tests that need them read these paths
ZEROS_LOW = os.environ.get("XIBOUNDS_ZEROS_LOW")
ZEROS_HIGH = os.environ.get("XIBOUNDS_ZEROS_HIGH")

needs_low_table = pytest.mark.skipif(
    not ZEROS_LOW, reason="XIBOUNDS_ZEROS_LOW (first 100k or 2M zeros) not set"
)
needs_high_table = pytest.mark.skipif(
    not ZEROS_HIGH, reason="XIBOUNDS_ZEROS_HIGH (zeros from index 10^12 + 1) not set"
)

FIRST_30 = [
    14.134725142, 21.022039639, 25.010857580, 30.424876126, 32.935061588,
    37.586178159, 40.918719012, 43.327073281, 48.005150881, 49.773832478,
    52.970321478, 56.446247697, 59.347044003, 60.831778525, 65.112544048,
    67.079810529, 69.546401711, 72.067157674, 75.704690699, 77.144840069,
    79.337375020, 82.910380854, 84.735492981, 87.425274613, 88.809111208,
    92.491899271, 94.651344041, 95.870634228, 98.831194218, 101.317851006,
]


@pytest.fixture
def samples_dir():
    return SAMPLES_DIR


@pytest.fixture(scope="session")
def first30_table():
    return read_zero_table(str(SAMPLES_DIR / "zeros_first30.txt"), label="first30")


@pytest.fixture(scope="session")
def low_table():
    return read_zero_table(ZEROS_LOW, label="low")


@pytest.fixture(scope="session")
def high_table():
    return read_zero_table(
        ZEROS_HIGH, base_height=HIGH_TABLE_BASE, first_index=HIGH_TABLE_FIRST_INDEX, label="high"
    )
