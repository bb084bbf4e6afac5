"""Monte Carlo power of dependence measures against independence.

A null cutoff is the order statistic at ``ceil(0.95 * reps)`` of the measure
over independent-uniform datasets; power at a noise level is the fraction of
noisy replicates scoring strictly above it. Every replicate draws a fresh x.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import baselines
from .datagen import NOISE_SCALE, FunctionKind, NoiseKind, NoiseSpec, add_noise, child_seed, generate, noise_levels
from .estimator import midi_value

MEASURES = ("midi", "dcor", "pearson", "spearman")

_NULL_STREAM = 0
_LEVEL_STREAM = 1


def _dcor(x, y):
    return baselines.distance_correlation(x, y).dcor


def _abs_pearson(x, y):
    return abs(baselines.pearson(x, y))


def _abs_spearman(x, y):
    return abs(baselines.spearman(x, y))


_MEASURE_FUNCS = {
    "midi": midi_value,
    "dcor": _dcor,
    # signed coefficients would miss decreasing relations; test on |r|
    "pearson": _abs_pearson,
    "spearman": _abs_spearman,
}


def measure_function(name: str):
    try:
        return _MEASURE_FUNCS[name]
    except KeyError:
        raise ValueError(f"unknown measure {name!r}; choose from {list(MEASURES)}") from None


@dataclass
class PowerCurve:
    measure: str
    function: str
    noise_scale: float
    levels: list = field(default_factory=list)  # (sigma, power) pairs
    cutoff: float = float("nan")
    reps: int = 0
    n_points: int = 0
    base_seed: int = 0

    @property
    def sigmas(self) -> np.ndarray:
        return np.array([s for s, _ in self.levels])

    @property
    def powers(self) -> np.ndarray:
        return np.array([p for _, p in self.levels])

    def csv_rows(self):
        for sigma, power in self.levels:
            yield (self.measure, self.function, sigma, power)

    def to_json(self) -> str:
        d = asdict(self)
        d["levels"] = [{"sigma": s, "power": p} for s, p in self.levels]
        return json.dumps(d, indent=2)


def _default_jobs():
    env = os.environ.get("MIDI_INDEX_JOBS")
    return int(env) if env else (os.cpu_count() or 1)


def _evaluate(tasks, jobs):
    # map keeps submission order, so output never depends on scheduling
    jobs = _default_jobs() if jobs is None else max(1, int(jobs))
    if jobs == 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda t: t(), tasks))


def cutoff_index(reps: int) -> int:
    """1-based rank of the 0.95 quantile, ``ceil(0.95 * reps)`` in exact arithmetic."""
    return (95 * reps + 99) // 100


def quantile_cutoff(values) -> float:
    v = np.sort(np.asarray(values, dtype=np.float64))
    return float(v[cutoff_index(v.size) - 1])


def null_values(measure: str, reps: int, n_points: int, seed: int, jobs=None) -> np.ndarray:
    f = measure_function(measure)

    def one(r):
        s = generate(FunctionKind.UNIFORM_2D, n_points, child_seed(seed, _NULL_STREAM, r))
        return f(s.xs, s.ys)

    return np.array(_evaluate([lambda r=r: one(r) for r in range(reps)], jobs))


def null_cutoff(measure: str, reps: int = 500, n_points: int = 1000, seed: int = 0, jobs=None) -> float:
    if reps < 20:
        raise ValueError("reps must be >= 20")
    return quantile_cutoff(null_values(measure, reps, n_points, seed, jobs))


def power_at_level(measure, function, sigma, reps, n_points, cutoff, seed, jobs=None) -> float:
    """Fraction of ``reps`` noisy datasets whose measure is strictly above ``cutoff``."""
    f = measure_function(measure)
    function = FunctionKind.parse(function)

    def one(r):
        rs = child_seed(seed, r)
        s = generate(function, n_points, rs)
        y = add_noise(s.ys, NoiseSpec(NoiseKind.GAUSSIAN_SIGMA, float(sigma), rs))
        return f(s.xs, y)

    vals = np.array(_evaluate([lambda r=r: one(r) for r in range(reps)], jobs))
    return float(np.count_nonzero(vals > cutoff)) / reps


def power_curve(measure, function, reps: int = 500, n_points: int = 1000, seed: int = 0, jobs=None) -> PowerCurve:
    function = FunctionKind.parse(function)
    sigmas = noise_levels(function)
    cutoff = null_cutoff(measure, reps, n_points, seed, jobs)
    curve = PowerCurve(
        measure=measure,
        function=function.value,
        noise_scale=NOISE_SCALE[function],
        cutoff=cutoff,
        reps=reps,
        n_points=n_points,
        base_seed=seed,
    )
    for k, sigma in enumerate(sigmas, start=1):
        p = power_at_level(measure, function, sigma, reps, n_points, cutoff, child_seed(seed, _LEVEL_STREAM, k), jobs)
        curve.levels.append((float(sigma), p))
    return curve
