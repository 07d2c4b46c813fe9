"""Compiled sweep over the five-class grid (see ``bounds.grid_search``).

The loop nest, its bounds and the floating-point accumulation ``a += delta``
are kept identical to the reference C++ sweep so both visit the same points.
Values are compared in the log domain.
"""

import math

import numpy as np
from numba import config, njit, prange

if config.THREADING_LAYER == "default":
    # skip the TBB probe (and its version warning); OpenMP is always bundled
    config.THREADING_LAYER = "omp"


@njit(cache=True)
def sweep_row(c, a3, delta, min_class, max_ind):
    lo = 1.0 - max_ind
    best = -np.inf
    b0 = b1 = b2 = 0.0
    count = 0
    log_b3 = math.log(math.expm1(c * a3))
    a2 = min_class
    while a3 + a2 + 3 * min_class < 1:
        l23 = (-a2 * math.log(a2) - a3 * math.log(a3) - c / 2
               + a3 * math.log(math.expm1(c * a2))
               + a2 * math.log1p(-math.exp(-a3 / a2) * math.exp(-c * a3)))
        a1 = min_class
        while a3 + a1 < max_ind and a3 + a2 + a1 + 2 * min_class < 1:
            la = l23 - a1 * math.log(a1) + a2 * math.log(math.expm1(c * a1))
            a0 = max(max(min_class, lo - a2 - a3), lo - a1 - a3)
            while a2 + a0 < max_ind and a3 + a0 < max_ind and a3 + a2 + a1 + a0 + min_class < 1:
                a4 = 1 - a0 - a1 - a2 - a3
                v = (la - a0 * math.log(a0) + a4 * (log_b3 + c * a0 - math.log(a4))
                     + a1 * math.log(math.expm1(c * a0)))
                count += 1
                if v > best:
                    best = v
                    b0 = a0
                    b1 = a1
                    b2 = a2
                a0 += delta
            a1 += delta
        a2 += delta
    return best, b0, b1, b2, count


@njit(parallel=True, cache=True)
def sweep(c, a3s, delta, min_class, max_ind):
    n = a3s.shape[0]
    best = np.empty(n)
    arg = np.empty((n, 3))
    counts = np.zeros(n, dtype=np.int64)
    for i in prange(n):
        v, b0, b1, b2, cnt = sweep_row(c, a3s[i], delta, min_class, max_ind)
        best[i] = v
        arg[i, 0] = b0
        arg[i, 1] = b1
        arg[i, 2] = b2
        counts[i] = cnt
    return best, arg, counts
