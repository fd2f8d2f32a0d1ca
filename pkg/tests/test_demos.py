import pathlib
import subprocess
import sys

import pytest

DEMOS = sorted((pathlib.Path(__file__).parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("script", DEMOS, ids=lambda p: p.name)
def test_demo_runs(script):
    # Small N for the scaling demo keeps this quick.
    proc = subprocess.run([sys.executable, str(script), "13"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout
