"""Time the compiled and pure-Python loop kernels on the same inputs.

    python benchmarks/bench_kernels.py [--samples N] [--repeat R]

Both backends must produce identical output; the script checks that before
reporting throughput.
"""

import argparse
import timeit

import numpy as np

from tiadc import _core
from tiadc.ddsm import DdsmSpec, LsbDither, quantize_input


def ddsm_case(mod, n):
    spec = DdsmSpec()
    bits = LsbDither(1, 0).bits(n)
    xq = quantize_input(-0.3, spec)

    def run():
        out = np.empty(n)
        mod.ddsm_run(xq, bits, spec.lsb, spec.feedback, np.zeros(spec.order),
                     spec.levels, float(spec.step), out)
        return out

    return run


def ds2_case(mod, n):
    x = 0.5 * np.sin(2 * np.pi * 21 / 16384 * np.arange(n))

    def run():
        out = np.empty(n)
        mod.ds2_run(x, out, np.zeros(3), 8, 1.0)
        return out

    return run


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=1 << 16)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    found = _core.backends()
    print(f"active backend: {_core.BACKEND}; available: {', '.join(sorted(found))}")
    print(f"{'kernel':<6} {'backend':<8} {'best s':>10} {'Msamples/s':>11}")
    for label, case in (("ddsm", ddsm_case), ("ds2", ds2_case)):
        outputs, best = {}, {}
        for name, mod in sorted(found.items()):
            run = case(mod, args.samples)
            outputs[name] = run()
            best[name] = min(timeit.repeat(run, number=1, repeat=args.repeat))
            print(f"{label:<6} {name:<8} {best[name]:>10.4f} {args.samples / best[name] / 1e6:>11.2f}")
        if len(outputs) == 2:
            assert np.array_equal(outputs["cython"], outputs["python"]), f"{label}: backends disagree"
            print(f"{label:<6} speedup  {best['python'] / best['cython']:>10.1f}x")


if __name__ == "__main__":
    main()
