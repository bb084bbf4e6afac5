"""Screen every column of a matrix against one reference column."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .baselines import distance_correlation, pearson
from .estimator import DegenerateAxis, EstimatorConfig, midi, scale_to_unit
from .power import _default_jobs

SCREEN_MEASURES = ("midi", "dcor", "pearson")


@dataclass
class ScreenResult:
    column_id: str
    midi: float
    dcor: float | None = None
    pearson: float | None = None
    degenerate: bool = False
    n_used: int = 0

    def row(self, measures):
        out = [self.column_id, self.n_used]
        for m in measures:
            v = getattr(self, m)
            out.append("" if v is None else repr(float(v)))
        out.append(int(self.degenerate))
        return out


def _screen_one(name, ref, col, measures, cfg):
    keep = ~(np.isnan(ref) | np.isnan(col))
    x, y = ref[keep], col[keep]
    res = ScreenResult(column_id=name, midi=0.0, n_used=int(keep.sum()))
    if x.size < 2 or np.ptp(y) == 0.0:
        res.degenerate = True
        return res
    try:
        rep = midi(x, y, cfg)
    except DegenerateAxis:
        # reference constant after pairwise deletion
        res.degenerate = True
        return res
    res.midi = rep.midi
    res.degenerate = rep.degenerate
    if "dcor" in measures:
        res.dcor = distance_correlation(x, y).dcor
    if "pearson" in measures:
        res.pearson = pearson(x, y)
    return res


def screen(names, data, ref_index, measures=("midi",), cfg=None, jobs=None):
    """Score every non-reference column against column ``ref_index``.

    Rows missing either value are dropped per pair. Results are sorted by
    MIDI descending with degenerate columns last; ties keep column order.
    Raises DegenerateAxis when the reference column is constant.
    """
    cfg = cfg or EstimatorConfig()
    ref = data[:, ref_index]
    finite = ref[~np.isnan(ref)]
    if finite.size < 2:
        raise DegenerateAxis("reference column has fewer than 2 values")
    scale_to_unit(finite)

    targets = [(i, names[i]) for i in range(len(names)) if i != ref_index]
    jobs = _default_jobs() if jobs is None else max(1, int(jobs))

    def work(item):
        i, name = item
        return _screen_one(name, ref, data[:, i], measures, cfg)

    if jobs == 1:
        results = [work(t) for t in targets]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, targets))

    order = sorted(range(len(results)), key=lambda k: (results[k].degenerate, -results[k].midi, k))
    return [results[k] for k in order]
