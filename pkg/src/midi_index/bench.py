"""Wall time and peak traced memory of each measure, per kernel backend."""

from __future__ import annotations

import gc
import time
import tracemalloc
from dataclasses import dataclass

from . import _backend
from .baselines import DCOR_MAX_N
from .datagen import FunctionKind, generate
from .power import measure_function


class SizeGuardError(ValueError):
    pass


@dataclass
class BenchRow:
    n: int
    measure: str
    backend: str
    seconds: float
    peak_mb: float
    value: float

    def row(self):
        return [self.n, self.measure, self.backend, f"{self.seconds:.6f}", f"{self.peak_mb:.3f}", repr(self.value)]


HEADER = ["n", "measure", "backend", "seconds", "peak_mb", "value"]


def check_dcor_size(n: int, force: bool = False) -> None:
    if n > DCOR_MAX_N and not force:
        raise SizeGuardError(f"dcor is O(n^2); refusing n={n} > {DCOR_MAX_N} without --force")


def _warm(f):
    # trigger numba compilation outside the timed region
    s = generate(FunctionKind.LINE, 64, 0)
    f(s.xs, s.ys)


def time_measure(measure: str, n: int, seed: int = 0, backend: str | None = None, repeat: int = 1) -> BenchRow:
    """Best-of-``repeat`` wall time plus one tracemalloc-instrumented run.

    ``peak_mb`` is the traced peak of the call plus the input arrays. Numba
    kernels write into caller-allocated numpy buffers, so nothing escapes
    tracemalloc on either backend.
    """
    f = measure_function(measure)
    name = backend or _backend.name()
    with _backend.use(name):
        s = generate(FunctionKind.LINE, n, seed)
        _warm(f)
        best = float("inf")
        value = float("nan")
        for _ in range(max(1, repeat)):
            gc.collect()
            t0 = time.perf_counter()
            value = f(s.xs, s.ys)
            best = min(best, time.perf_counter() - t0)
        gc.collect()
        inputs = s.xs.nbytes + s.ys.nbytes
        tracemalloc.start()
        try:
            f(s.xs, s.ys)
            _, peak = tracemalloc.get_traced_memory()
        finally:
            tracemalloc.stop()
    return BenchRow(n, measure, name, best, (peak + inputs) / 2**20, float(value))


def run(sizes, measures, seed: int = 0, backends=None, force: bool = False, repeat: int = 1):
    if "dcor" in measures:
        for n in sizes:
            check_dcor_size(n, force)
    backends = backends or [_backend.name()]
    return [time_measure(m, n, seed, b, repeat) for b in backends for m in measures for n in sizes]
