"""Maximal-spacing histogram estimate of the MIDI dependence index.

One axis is cut into fixed-width cells whose length is ``n**c`` times the
largest gap between consecutive order statistics; the other axis gets
``max(2, floor(log10 n))`` equal cells. Plug-in entropies and mutual
information of the resulting joint histogram give

    MIDI_x = I / min(H_x, H_y)

and the final index is the larger of the two axis-role assignments.
All logarithms are natural; the index itself is base-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend

DEFAULT_C = 0.1

# plug-in MI is >= 0 in exact arithmetic; anything more negative is a bug
_NEGATIVE_MI_SLACK = 1e-12


class DegenerateAxis(ValueError):
    """A variable has zero range (all values equal) or otherwise cannot be scaled."""


class InconsistentEstimate(ArithmeticError):
    """Raised when the plug-in mutual information comes out clearly negative."""


@dataclass(frozen=True)
class EstimatorConfig:
    c: float = DEFAULT_C
    log_base: str = "natural"

    def __post_init__(self):
        if not (0.0 < self.c < 1.0):
            raise ValueError(f"c must lie in (0, 1), got {self.c}")
        if self.log_base != "natural":
            raise ValueError("only natural logarithms are supported")


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Paired observations ``(xs[i], ys[i])``."""

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.ascontiguousarray(self.xs, dtype=np.float64)
        ys = np.ascontiguousarray(self.ys, dtype=np.float64)
        if xs.ndim != 1 or ys.ndim != 1:
            raise ValueError("xs and ys must be one-dimensional")
        if xs.size != ys.size:
            raise ValueError(f"length mismatch: {xs.size} xs vs {ys.size} ys")
        if xs.size < 2:
            raise ValueError("need at least 2 observations")
        if not (np.isfinite(xs).all() and np.isfinite(ys).all()):
            raise ValueError("observations must be finite")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def n(self) -> int:
        return int(self.xs.size)


@dataclass(frozen=True)
class PartitionSpec:
    """Binning of one scaled axis.

    ``fixed_width`` cells are ``[k*L, (k+1)*L)`` anchored at 0 with the last
    cell closed at 1; ``fixed_count`` cells split [0, 1] into ``bin_count``
    equal pieces. ``bin_length`` is only set for ``fixed_width``.
    """

    axis: str
    kind: str
    bin_count: int
    bin_length: float | None = None


@dataclass(frozen=True, eq=False)
class JointHistogram:
    counts: np.ndarray

    @property
    def row_marginals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_marginals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape

    def transpose(self) -> JointHistogram:
        return JointHistogram(np.ascontiguousarray(self.counts.T))


@dataclass(frozen=True, eq=False)
class DirectionalEstimate:
    """One pass of the scheme with the spacing rule on ``spacing_axis``.

    ``h_spacing`` is the entropy of the fixed-width axis and ``h_count`` that
    of the fixed-count axis.
    """

    spacing_axis: str
    mi_hat: float
    h_spacing: float
    h_count: float
    value: float
    degenerate: bool
    spacing_partition: PartitionSpec
    count_partition: PartitionSpec
    histogram: JointHistogram = field(repr=False)


@dataclass(frozen=True, eq=False)
class EstimateReport:
    """Result of :func:`midi`.

    ``mi_hat``, ``hx_hat`` and ``hy_hat`` come from the pass that attained the
    maximum (the x pass on ties); ``hx_hat`` is always the entropy of the
    first variable, whichever role it played in that pass.
    """

    mi_hat: float
    hx_hat: float
    hy_hat: float
    midi_x: float
    midi_y: float
    midi: float
    config_used: EstimatorConfig
    x_pass: DirectionalEstimate = field(repr=False)
    y_pass: DirectionalEstimate = field(repr=False)

    @property
    def degenerate(self) -> bool:
        """True when neither pass had two occupied cells on both axes."""
        return self.x_pass.degenerate and self.y_pass.degenerate

    def as_dict(self) -> dict:
        return {
            "midi": self.midi,
            "midi_x": self.midi_x,
            "midi_y": self.midi_y,
            "mi_hat": self.mi_hat,
            "hx_hat": self.hx_hat,
            "hy_hat": self.hy_hat,
            "degenerate_x": self.x_pass.degenerate,
            "degenerate_y": self.y_pass.degenerate,
            "c": self.config_used.c,
            "log_base": self.config_used.log_base,
            "x_pass_bins": [self.x_pass.spacing_partition.bin_count, self.x_pass.count_partition.bin_count],
            "y_pass_bins": [self.y_pass.count_partition.bin_count, self.y_pass.spacing_partition.bin_count],
        }


def scale_to_unit(values) -> np.ndarray:
    """Affinely map ``values`` onto [0, 1] (min -> 0, max -> 1)."""
    v = np.asarray(values, dtype=np.float64)
    if v.size < 2:
        raise ValueError("need at least 2 values to scale")
    lo = v.min()
    hi = v.max()
    span = hi - lo
    if not span > 0:
        raise DegenerateAxis("variable is constant (zero range)")
    if not math.isfinite(span):
        raise DegenerateAxis("variable range is not finite")
    return (v - lo) / span


def maximal_spacing(values01) -> float:
    """Largest gap between consecutive values of an already sorted array.

    The interval endpoints are not padded in; only observed points count.
    """
    v = np.ascontiguousarray(values01, dtype=np.float64)
    if v.size < 2:
        raise ValueError("need at least 2 values")
    gap = float(_backend.kernels().max_gap(v))
    if gap <= 0.0:
        raise DegenerateAxis("all points coincide")
    return gap


def fixed_width_partition(n: int, c: float, l_max: float, axis: str = "x") -> PartitionSpec:
    """Cells of length ``min(1, n**c * l_max)`` anchored at 0."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not (0.0 < c < 1.0):
        raise ValueError("c must lie in (0, 1)")
    if not (0.0 < l_max <= 1.0):
        raise ValueError(f"l_max must lie in (0, 1], got {l_max}")
    length = min(1.0, n**c * l_max)
    return PartitionSpec(axis=axis, kind="fixed_width", bin_count=math.ceil(1.0 / length), bin_length=length)


def fixed_count_partition(n: int, axis: str = "y") -> PartitionSpec:
    if n < 2:
        raise ValueError("n must be >= 2")
    # exact integer floor(log10 n), immune to log10 rounding near powers of 10
    return PartitionSpec(axis=axis, kind="fixed_count", bin_count=max(2, len(str(int(n))) - 1))


def assign_bins(values01, spec: PartitionSpec) -> np.ndarray:
    v = np.ascontiguousarray(values01, dtype=np.float64)
    out = np.empty(v.size, dtype=np.int64)
    k = _backend.kernels()
    if spec.bin_count == 1:
        out[:] = 0
    elif spec.kind == "fixed_width":
        k.bin_fixed_width(v, float(spec.bin_length), int(spec.bin_count), out)
    elif spec.kind == "fixed_count":
        k.bin_fixed_count(v, int(spec.bin_count), out)
    else:
        raise ValueError(f"unknown partition kind {spec.kind!r}")
    return out


def build_joint_histogram(ix, iy, nx: int, ny: int) -> JointHistogram:
    ix = np.ascontiguousarray(ix, dtype=np.int64)
    iy = np.ascontiguousarray(iy, dtype=np.int64)
    if ix.shape != iy.shape:
        raise ValueError("index arrays differ in length")
    counts = np.zeros((nx, ny), dtype=np.int64)
    _backend.kernels().joint_counts(ix, iy, counts)
    return JointHistogram(counts)


def entropy_hat(marginal, n: int | None = None) -> float:
    """Plug-in entropy ``sum (k/n) ln(n/k)`` over nonzero counts, in nats."""
    m = np.asarray(marginal, dtype=np.float64).ravel()
    m = m[m > 0]
    if n is None:
        n = m.sum()
    if n <= 0:
        raise ValueError("total count must be positive")
    p = m / n
    return float(np.sum(p * np.log(n / m)))


def mutual_information_hat(h: JointHistogram) -> float:
    counts = h.counts
    n = float(counts.sum())
    rows = counts.sum(axis=1).astype(np.float64)
    cols = counts.sum(axis=0).astype(np.float64)
    i, j = np.nonzero(counts)
    c = counts[i, j].astype(np.float64)
    mi = float(np.sum((c / n) * np.log(n * c / (rows[i] * cols[j]))))
    if mi < 0.0:
        if mi < -_NEGATIVE_MI_SLACK:
            raise InconsistentEstimate(f"plug-in mutual information is negative: {mi!r}")
        mi = 0.0
    return mi


def _scaled(values, axis_name):
    try:
        return scale_to_unit(values)
    except DegenerateAxis as exc:
        raise DegenerateAxis(f"{axis_name}: {exc}") from None


def _pass(spacing01, count01, cfg, spacing_axis, count_axis):
    n = spacing01.size
    l_max = maximal_spacing(np.sort(spacing01))
    sp = fixed_width_partition(n, cfg.c, l_max, axis=spacing_axis)
    cp = fixed_count_partition(n, axis=count_axis)
    hist = build_joint_histogram(assign_bins(spacing01, sp), assign_bins(count01, cp), sp.bin_count, cp.bin_count)
    mi = mutual_information_hat(hist)
    h_sp = entropy_hat(hist.row_marginals, n)
    h_ct = entropy_hat(hist.col_marginals, n)
    denom = min(h_sp, h_ct)
    if denom > 0.0:
        value, degenerate = mi / denom, False
    else:
        value, degenerate = 0.0, True
    return DirectionalEstimate(spacing_axis, mi, h_sp, h_ct, value, degenerate, sp, cp, hist)


def _check_pair(xs, ys):
    s = SampleSet(xs, ys)
    return s.xs, s.ys


def midi_directional(xs, ys, cfg: EstimatorConfig | None = None) -> DirectionalEstimate:
    """Single pass with the spacing rule on ``xs`` and the count rule on ``ys``."""
    cfg = cfg or EstimatorConfig()
    xs, ys = _check_pair(xs, ys)
    return _pass(_scaled(xs, "x"), _scaled(ys, "y"), cfg, "x", "y")


def bin_assignments(xs, ys, cfg: EstimatorConfig | None = None):
    """Bin indices of the x pass: ``(ix, iy, x_spec, y_spec)``."""
    cfg = cfg or EstimatorConfig()
    xs, ys = _check_pair(xs, ys)
    u, v = _scaled(xs, "x"), _scaled(ys, "y")
    sp = fixed_width_partition(u.size, cfg.c, maximal_spacing(np.sort(u)), axis="x")
    cp = fixed_count_partition(u.size, axis="y")
    return assign_bins(u, sp), assign_bins(v, cp), sp, cp


def midi(xs, ys, cfg: EstimatorConfig | None = None) -> EstimateReport:
    """MIDI of a paired sample; the max over both axis-role assignments.

    >>> x = [0.0, 1 / 3, 2 / 3, 1.0]
    >>> round(midi(x, x).midi, 12)
    1.0
    """
    cfg = cfg or EstimatorConfig()
    xs, ys = _check_pair(xs, ys)
    u, v = _scaled(xs, "x"), _scaled(ys, "y")
    fwd = _pass(u, v, cfg, "x", "y")
    rev = _pass(v, u, cfg, "y", "x")
    if rev.value > fwd.value:
        best, hx, hy = rev, rev.h_count, rev.h_spacing
    else:
        best, hx, hy = fwd, fwd.h_spacing, fwd.h_count
    return EstimateReport(
        mi_hat=best.mi_hat,
        hx_hat=hx,
        hy_hat=hy,
        midi_x=fwd.value,
        midi_y=rev.value,
        midi=max(fwd.value, rev.value),
        config_used=cfg,
        x_pass=fwd,
        y_pass=rev,
    )


def midi_value(xs, ys, c: float = DEFAULT_C) -> float:
    return midi(xs, ys, EstimatorConfig(c)).midi
