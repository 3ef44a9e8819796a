import math

import numpy as np
import pytest

from tiadc.config import RunConfig
from tiadc.signal import TestSignal


@pytest.fixture
def cfg():
    return RunConfig().validate()


@pytest.fixture
def tone():
    return TestSignal.sinusoid(0.5, 2 * math.pi * 21 / 16384)


def welch_mean_db(power, lo, hi):
    return 10 * math.log10(float(np.mean(power[lo:hi + 1])))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
