"""Pure-numpy versions of the hot loops.

Semantics match ``_kernels_numba`` element for element: the same divisions
are performed in the same order, so bin indices agree bit for bit.
"""

import numpy as np


def max_gap(sorted_values):
    if sorted_values.size < 2:
        return 0.0
    return float(np.max(np.diff(sorted_values)))


def bin_fixed_width(values01, width, nbins, out):
    idx = (values01 / width).astype(np.int64)
    np.minimum(idx, nbins - 1, out=idx)
    out[:] = idx
    return out


def bin_fixed_count(values01, nbins, out):
    idx = (values01 * nbins).astype(np.int64)
    np.minimum(idx, nbins - 1, out=idx)
    out[:] = idx
    return out


def joint_counts(ix, iy, counts):
    nx, ny = counts.shape
    flat = np.bincount(ix * ny + iy, minlength=nx * ny)
    counts += flat.reshape(nx, ny)
    return counts


_BLOCK = 512


def _row_means(v):
    out = np.empty(v.size)
    for lo in range(0, v.size, _BLOCK):
        out[lo : lo + _BLOCK] = np.abs(v[lo : lo + _BLOCK, None] - v[None, :]).mean(axis=1)
    return out


def dcov_terms(x, y):
    """Return (dcov^2, dvar_x^2, dvar_y^2); row blocks keep memory at O(block * n)."""
    n = x.size
    ra, rb = _row_means(x), _row_means(y)
    ga, gb = ra.mean(), rb.mean()
    sab = saa = sbb = 0.0
    for lo in range(0, n, _BLOCK):
        hi = min(lo + _BLOCK, n)
        A = np.abs(x[lo:hi, None] - x[None, :]) - ra[lo:hi, None] - ra[None, :] + ga
        B = np.abs(y[lo:hi, None] - y[None, :]) - rb[lo:hi, None] - rb[None, :] + gb
        sab += float(np.einsum("ij,ij->", A, B))
        saa += float(np.einsum("ij,ij->", A, A))
        sbb += float(np.einsum("ij,ij->", B, B))
    nn = float(n) * float(n)
    return sab / nn, saa / nn, sbb / nn
