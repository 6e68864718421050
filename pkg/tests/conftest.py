import subprocess
import sys

import numpy as np
import pytest

from tsmorph import TimeSeries


def make_sine(length, period, phase=0.0, amplitude=1.0, sid=None):
    t = np.arange(length, dtype=float)
    return TimeSeries(amplitude * np.sin(2.0 * np.pi * t / period + phase), id=sid)


def run_cli(*args, cwd=None):
    """Invoke the CLI exactly as a user would, in a child process."""
    return subprocess.run(
        [sys.executable, "-m", "tsmorph", *[str(a) for a in args]],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


@pytest.fixture
def sine_series():
    return make_sine


@pytest.fixture
def cli():
    return run_cli
