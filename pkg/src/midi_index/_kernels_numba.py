"""Numba versions of the hot loops.

All outputs are preallocated by the caller so that peak memory is visible
to tracemalloc and kernels never touch the numba runtime allocator.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def max_gap(sorted_values):
    best = 0.0
    for i in range(sorted_values.size - 1):
        d = sorted_values[i + 1] - sorted_values[i]
        if d > best:
            best = d
    return best


@njit(cache=True, nogil=True)
def bin_fixed_width(values01, width, nbins, out):
    last = nbins - 1
    for i in range(values01.size):
        k = np.int64(values01[i] / width)
        out[i] = k if k < last else last
    return out


@njit(cache=True, nogil=True)
def bin_fixed_count(values01, nbins, out):
    last = nbins - 1
    for i in range(values01.size):
        k = np.int64(values01[i] * nbins)
        out[i] = k if k < last else last
    return out


@njit(cache=True, nogil=True)
def joint_counts(ix, iy, counts):
    for k in range(ix.size):
        counts[ix[k], iy[k]] += 1
    return counts


@njit(cache=True, nogil=True)
def _row_means(v):
    n = v.size
    out = np.empty(n)
    for k in range(n):
        s = 0.0
        for l in range(n):
            s += abs(v[k] - v[l])
        out[k] = s / n
    return out


@njit(cache=True, nogil=True)
def dcov_terms(x, y):
    # O(n) memory: centered entries are rebuilt on the fly from row means
    n = x.size
    ra = _row_means(x)
    rb = _row_means(y)
    ga = ra.mean()
    gb = rb.mean()
    sab = 0.0
    saa = 0.0
    sbb = 0.0
    for k in range(n):
        for l in range(n):
            a = abs(x[k] - x[l]) - ra[k] - ra[l] + ga
            b = abs(y[k] - y[l]) - rb[k] - rb[l] + gb
            sab += a * b
            saa += a * a
            sbb += b * b
    nn = float(n) * float(n)
    return sab / nn, saa / nn, sbb / nn
