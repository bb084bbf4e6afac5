"""Reference dependence measures: distance correlation, Pearson, Spearman."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .estimator import DegenerateAxis

# above this many points dcor is refused by the CLI unless forced
DCOR_MAX_N = 20000


@dataclass(frozen=True)
class DcorReport:
    dcov_sq: float
    dvar_x: float
    dvar_y: float
    dcor: float

    def as_dict(self) -> dict:
        return {"dcor": self.dcor, "dcov_sq": self.dcov_sq, "dvar_x": self.dvar_x, "dvar_y": self.dvar_y}


def _pair(xs, ys):
    x = np.ascontiguousarray(xs, dtype=np.float64)
    y = np.ascontiguousarray(ys, dtype=np.float64)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError("xs and ys must be 1-d arrays of equal length")
    if x.size < 2:
        raise ValueError("need at least 2 observations")
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise ValueError("observations must be finite")
    return x, y


def distance_correlation(xs, ys) -> DcorReport:
    """Sample distance correlation from double-centered |x_k - x_l| matrices.

    ``dcor`` is R (not R^2) and is 0 when either distance variance is 0.
    O(n^2) time; the numba backend uses O(n) memory.
    """
    x, y = _pair(xs, ys)
    dcov, vx, vy = _backend.kernels().dcov_terms(x, y)
    dcov = max(dcov, 0.0)
    denom = vx * vy
    r = math.sqrt(dcov / math.sqrt(denom)) if denom > 0 else 0.0
    return DcorReport(dcov_sq=dcov, dvar_x=vx, dvar_y=vy, dcor=r)


def pearson(xs, ys) -> float:
    x, y = _pair(xs, ys)
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateAxis("zero variance")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def rankdata(values) -> np.ndarray:
    """1-based ranks with ties replaced by their average rank."""
    v = np.asarray(values, dtype=np.float64)
    order = np.argsort(v, kind="mergesort")
    sv = v[order]
    # boundaries of runs of equal values
    starts = np.flatnonzero(np.r_[True, sv[1:] != sv[:-1]])
    ends = np.r_[starts[1:], sv.size]
    avg = (starts + ends + 1) / 2.0
    ranks = np.empty(v.size)
    ranks[order] = np.repeat(avg, ends - starts)
    return ranks


def spearman(xs, ys) -> float:
    x, y = _pair(xs, ys)
    return pearson(rankdata(x), rankdata(y))
