"""Seeded synthetic datasets and noise.

Every draw comes from numpy's PCG64 fed by a ``SeedSequence(seed,
spawn_key=(stream,))``. The x draws, auxiliary draws (circle branch, the
second uniform/normal coordinate) and noise use separate streams, so adding
noise never perturbs the underlying dataset for the same seed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .estimator import SampleSet

RNG_NAME = "numpy.PCG64 via SeedSequence(seed, spawn_key=(stream,))"

_STREAM_X = 0
_STREAM_AUX = 1
_STREAM_NOISE = 2


class FunctionKind(str, enum.Enum):
    # functional relations and reference distributions
    LINE = "line"
    HALF_PARABOLA = "half_parabola"
    PARABOLA = "parabola"
    EXPONENTIAL = "exponential"
    SINUSOIDAL = "sinusoidal"
    SIN_FOURIER = "sin_fourier"
    SIN_NONFOURIER = "sin_nonfourier"
    SIN_VARYING = "sin_varying"
    CIRCLE = "circle"
    NORMAL_BIVARIATE = "normal_bivariate"
    UNIFORM_2D = "uniform_2d"
    # power-study functions
    QUADRATIC_POW = "quadratic_pow"
    CUBIC_POW = "cubic_pow"
    SIN_EIGHTH = "sin_eighth"
    SIN_HALF = "sin_half"
    FOURTH_ROOT = "fourth_root"
    STEP = "step"

    @classmethod
    def parse(cls, text) -> FunctionKind:
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("-", "_").replace(" ", "_")
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown function kind {text!r}; choose from {[k.value for k in cls]}") from None


# noise scale per power-study function; sigma = scale * k / 10 for k = 1..30
NOISE_SCALE = {
    FunctionKind.LINE: 1.0,
    FunctionKind.QUADRATIC_POW: 1.0,
    FunctionKind.CUBIC_POW: 10.0,
    FunctionKind.SIN_EIGHTH: 2.0,
    FunctionKind.SIN_HALF: 1.0,
    FunctionKind.FOURTH_ROOT: 1.0,
    FunctionKind.CIRCLE: 0.25,
    FunctionKind.STEP: 5.0,
}


def _cubic(x):
    t = x - 1.0 / 3.0
    return 128.0 * t**3 - 48.0 * t**2 - 12.0 * t


_CLOSED_FORMS = {
    FunctionKind.LINE: lambda x: x.copy(),
    FunctionKind.HALF_PARABOLA: lambda x: x**2,
    FunctionKind.PARABOLA: lambda x: (x - 0.5) ** 2,
    FunctionKind.EXPONENTIAL: lambda x: 10.0**x,
    FunctionKind.SINUSOIDAL: lambda x: np.sin(10.0 * np.pi * x + x),
    FunctionKind.SIN_FOURIER: lambda x: np.sin(16.0 * np.pi * x),
    FunctionKind.SIN_NONFOURIER: lambda x: np.sin(13.0 * np.pi * x),
    FunctionKind.SIN_VARYING: lambda x: np.sin(7.0 * np.pi * x * (1.0 + x)),
    FunctionKind.QUADRATIC_POW: lambda x: 4.0 * (x - 0.5) ** 2,
    FunctionKind.CUBIC_POW: _cubic,
    FunctionKind.SIN_EIGHTH: lambda x: np.sin(4.0 * np.pi * x),
    FunctionKind.SIN_HALF: lambda x: np.sin(16.0 * np.pi * x),
    FunctionKind.FOURTH_ROOT: lambda x: x**0.25,
    FunctionKind.STEP: lambda x: (x > 0.5).astype(np.float64),
}


def closed_form(kind, x) -> np.ndarray:
    """y = f(x) for the deterministic function kinds (circle takes its branch separately)."""
    kind = FunctionKind.parse(kind)
    try:
        f = _CLOSED_FORMS[kind]
    except KeyError:
        raise ValueError(f"{kind.value} has no single-valued closed form") from None
    return f(np.asarray(x, dtype=np.float64))


def circle_y(x, z) -> np.ndarray:
    """Upper (z=1) or lower (z=0) half of the circle (2x-1)^2 + y^2 = 1."""
    x = np.asarray(x, dtype=np.float64)
    return (2.0 * np.asarray(z, dtype=np.float64) - 1.0) * np.sqrt(1.0 - (2.0 * x - 1.0) ** 2)


def rng(seed, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,))))


def child_seed(seed, *key: int) -> int:
    """Derive an independent integer seed from ``seed`` and an integer path."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, np.uint64)[0])


def generate_bivariate_normal(n: int, rho: float, seed) -> SampleSet:
    """Standard bivariate normal pairs with correlation ``rho``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not (-1.0 <= rho <= 1.0):
        raise ValueError(f"rho must lie in [-1, 1], got {rho}")
    x = rng(seed, _STREAM_X).standard_normal(n)
    z = rng(seed, _STREAM_AUX).standard_normal(n)
    y = rho * x + math.sqrt(1.0 - rho * rho) * z
    return SampleSet(x, y)


def generate(kind, n: int, seed, *, rho: float = 0.0) -> SampleSet:
    """Draw ``n`` points of dataset ``kind``; ``rho`` only applies to normal_bivariate."""
    kind = FunctionKind.parse(kind)
    if n < 2:
        raise ValueError("n must be >= 2")
    if kind is FunctionKind.NORMAL_BIVARIATE:
        return generate_bivariate_normal(n, rho, seed)
    x = rng(seed, _STREAM_X).random(n)
    if kind is FunctionKind.UNIFORM_2D:
        y = rng(seed, _STREAM_AUX).random(n)
    elif kind is FunctionKind.CIRCLE:
        y = circle_y(x, rng(seed, _STREAM_AUX).integers(0, 2, n))
    else:
        y = closed_form(kind, x)
    return SampleSet(x, y)


class NoiseKind(str, enum.Enum):
    UNIFORM_VARIANCE = "uniform_variance"
    GAUSSIAN_SIGMA = "gaussian_sigma"


@dataclass(frozen=True)
class NoiseSpec:
    """``level`` is a variance for uniform noise and a standard deviation for gaussian."""

    kind: NoiseKind
    level: float
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", NoiseKind(self.kind))
        if not (self.level >= 0.0 and math.isfinite(self.level)):
            raise ValueError(f"noise level must be finite and >= 0, got {self.level}")


def add_noise(ys, spec: NoiseSpec) -> np.ndarray:
    y = np.array(ys, dtype=np.float64)
    if spec.level == 0.0:
        return y
    g = rng(spec.seed, _STREAM_NOISE)
    if spec.kind is NoiseKind.UNIFORM_VARIANCE:
        half = math.sqrt(3.0 * spec.level)
        return y + g.uniform(-half, half, y.size)
    return y + g.normal(0.0, spec.level, y.size)


def noise_levels(kind, count: int = 30) -> np.ndarray:
    """Gaussian sigmas ``scale * k / 10`` for ``k = 1..count``."""
    kind = FunctionKind.parse(kind)
    if kind not in NOISE_SCALE:
        raise ValueError(f"{kind.value} has no power-study noise scale")
    return NOISE_SCALE[kind] * np.arange(1, count + 1) / 10.0
