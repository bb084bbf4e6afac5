"""MIDI: a mutual information based dependence index with maximal-spacing bins."""

from .baselines import DcorReport, distance_correlation, pearson, spearman
from .datagen import FunctionKind, NoiseKind, NoiseSpec, add_noise, generate, generate_bivariate_normal
from .estimator import (
    DegenerateAxis,
    EstimateReport,
    EstimatorConfig,
    InconsistentEstimate,
    JointHistogram,
    PartitionSpec,
    SampleSet,
    midi,
    midi_directional,
)
from .power import PowerCurve, null_cutoff, power_at_level, power_curve

__version__ = "0.1.0"

__all__ = [
    "DcorReport",
    "DegenerateAxis",
    "EstimateReport",
    "EstimatorConfig",
    "FunctionKind",
    "InconsistentEstimate",
    "JointHistogram",
    "NoiseKind",
    "NoiseSpec",
    "PartitionSpec",
    "PowerCurve",
    "SampleSet",
    "add_noise",
    "distance_correlation",
    "generate",
    "generate_bivariate_normal",
    "midi",
    "midi_directional",
    "null_cutoff",
    "pearson",
    "power_at_level",
    "power_curve",
    "spearman",
]
