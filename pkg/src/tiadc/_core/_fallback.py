"""Pure-Python versions of the compiled loops in ``_kernels.pyx``.

Kept operation-for-operation identical to the Cython source; the parity
tests compare both backends bit for bit.
"""

import math


def ddsm_run(x_in, dither, lsb, coeffs, errors, levels, step, out):
    order = len(coeffs)
    c = [float(v) for v in coeffs]
    e = [float(v) for v in errors]
    half = (levels - 1) * step / 2.0
    top = levels - 1
    for n in range(len(out)):
        v = x_in + int(dither[n]) * lsb
        for k in range(order):
            v = v + c[k] * e[k]
        j = math.floor((v + half) / step + 0.5)
        if j < 0:
            j = 0
        elif j > top:
            j = top
        y = j * step - half
        if order:
            e.pop()
            e.insert(0, y - v)
        out[n] = y
    for k in range(order):
        errors[k] = e[k]


def ds2_run(x, out, state, levels, full_scale):
    step = 2.0 * full_scale / (levels - 1)
    a1, a2, u = float(state[0]), float(state[1]), float(state[2])
    top = levels - 1
    saturated = 0
    for n in range(len(x)):
        xn = float(x[n])
        a1 = a1 + u
        a2 = a2 + a1
        v = xn + a1 + a2
        j = math.floor((v + full_scale) / step + 0.5)
        if j < 0:
            j = 0
            saturated += 1
        elif j > top:
            j = top
            saturated += 1
        y = j * step - full_scale
        out[n] = y
        u = xn - y
    state[0] = a1
    state[1] = a2
    state[2] = u
    return saturated
