"""The demo scripts must keep running end to end."""

import subprocess
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).parent.parent
DEMOS = sorted((ROOT / "demos").glob("*.py"))


@pytest.mark.parametrize("script", DEMOS, ids=[p.name for p in DEMOS])
def test_demo_runs_clean(script):
    result = subprocess.run([sys.executable, str(script)], cwd=ROOT,
                            capture_output=True, text=True, timeout=60)
    assert result.returncode == 0, result.stderr
    assert result.stdout.strip()


def test_extraction_demo_runs_clean():
    script = ROOT / "extraction" / "demos" / "extract_and_map.py"
    result = subprocess.run([sys.executable, str(script)], cwd=ROOT / "extraction",
                            capture_output=True, text=True, timeout=60)
    assert result.returncode == 0, result.stderr
    assert "top mapping" in result.stdout
