import os
import shutil
import subprocess
from pathlib import Path

import pytest

from synth import synthetic_records

ANALYSIS_DIR = Path(__file__).resolve().parent.parent
DEFAULT_DESK_SWEEP = ANALYSIS_DIR.parent / "results" / "desk_sweep.csv"


@pytest.fixture
def synthetic():
    return synthetic_records(2000)


@pytest.fixture(scope="session")
def desk_records():
    """The desk-scale sweep CSV, consumed through the simulator's external
    interface: an existing results file (CODEV_DESK_SWEEP or the default
    location), or a fresh run of the `codev table1` command."""
    path = Path(os.environ.get("CODEV_DESK_SWEEP", DEFAULT_DESK_SWEEP))
    if not path.exists():
        codev = shutil.which("codev")
        if codev is None:
            pytest.skip("no desk sweep file and no codev CLI on PATH")
        path.parent.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [codev, "table1", "--scale", "desk", "--output", str(path)],
            check=True,
        )
    from codev_analysis.io import read_records

    return read_records(path)
