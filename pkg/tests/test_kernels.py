import os
import subprocess
import sys

import numpy as np
import pytest

from tiadc import _core
from tiadc.ddsm import DdsmSpec, LsbDither, quantize_input

backends = _core.backends()
needs_compiled = pytest.mark.skipif("cython" not in backends, reason="extension not built")


def run_ddsm(mod, x, bits, spec):
    out = np.empty(len(bits))
    errors = np.zeros(spec.order)
    mod.ddsm_run(quantize_input(x, spec), bits, spec.lsb, spec.feedback, errors,
                 spec.levels, float(spec.step), out)
    return out, errors


def run_ds2(mod, x, levels=8):
    out = np.empty_like(x)
    state = np.zeros(3)
    sat = mod.ds2_run(x, out, state, levels, 1.0)
    return out, state, sat


@needs_compiled
@pytest.mark.parametrize("order,levels", [(1, 2), (2, 4), (3, 10)])
@pytest.mark.parametrize("x", [-0.3, 0.0, 0.1234])
def test_ddsm_backends_bit_identical(order, levels, x):
    spec = DdsmSpec(order=order, levels=levels)
    bits = LsbDither(1, 2).bits(20_000)
    a, ea = run_ddsm(backends["cython"], x, bits, spec)
    b, eb = run_ddsm(backends["python"], x, bits, spec)
    np.testing.assert_array_equal(a, b)
    np.testing.assert_array_equal(ea, eb)


@needs_compiled
@pytest.mark.parametrize("levels", [2, 8, 33])
def test_ds2_backends_bit_identical(levels):
    rng = np.random.default_rng(levels)
    x = 0.6 * np.sin(0.013 * np.arange(20_000)) + 0.05 * rng.standard_normal(20_000)
    x[5000:5100] = 1.8  # drive into saturation too
    a = run_ds2(backends["cython"], x, levels)
    b = run_ds2(backends["python"], x, levels)
    np.testing.assert_array_equal(a[0], b[0])
    np.testing.assert_array_equal(a[1], b[1])
    assert a[2] == b[2] > 0


def test_fallback_forced_by_environment():
    env = dict(os.environ, TIADC_PURE_PYTHON="1")
    code = "import tiadc; print(tiadc.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_active_backend_is_listed():
    assert _core.BACKEND in backends
