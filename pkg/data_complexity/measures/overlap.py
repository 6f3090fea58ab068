"""
Measures of overlap in single-feature values between the two classes (F1, F2, F3).
"""
from dataclasses import dataclass
import logging
import math

import numpy as np

from data_complexity.models.dataset import Dataset, FeatureStats, feature_stats

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class OverlapBounds:
    """
    Per-feature bounds of the class value ranges.

    Attributes:
        minmax: min(max(f_i, c1), max(f_i, c2))
        maxmin: max(min(f_i, c1), min(f_i, c2))
        maxmax: max(max(f_i, c1), max(f_i, c2))
        minmin: min(min(f_i, c1), min(f_i, c2))
    """
    minmax: np.ndarray
    maxmin: np.ndarray
    maxmax: np.ndarray
    minmin: np.ndarray

    @classmethod
    def from_stats(cls, stats: FeatureStats) -> 'OverlapBounds':
        return cls(
            minmax=stats.maximums.min(axis=0),
            maxmin=stats.minimums.max(axis=0),
            maxmax=stats.maximums.max(axis=0),
            minmin=stats.minimums.min(axis=0)
        )


def fisher_ratios(stats: FeatureStats) -> np.ndarray:
    """
    Fisher's discriminant ratio (mu1 - mu2)^2 / (var1 + var2) for every feature.

    A feature with zero pooled variance gives 0 when the means agree and
    +inf when they differ.
    """
    numerator = (stats.means[0] - stats.means[1]) ** 2
    pooled = stats.variances[0] + stats.variances[1]
    ratios = np.zeros_like(numerator)
    spread = pooled > 0
    ratios[spread] = numerator[spread] / pooled[spread]
    ratios[~spread & (numerator > 0)] = math.inf
    return ratios


def f1_max_fisher(ds: Dataset) -> float:
    """Maximum Fisher's discriminant ratio over all features (F1)."""
    ratios = fisher_ratios(feature_stats(ds))
    value = float(ratios.max())
    if math.isinf(value):
        logger.info(f"{ds.name}: F1 infinite, a zero-variance feature separates the classes")
    return value


def f2_overlap_volume(ds: Dataset) -> float:
    """
    Volume of the class-overlap region relative to the joint range (F2).

    The per-feature overlap is clamped at zero when the class ranges are
    disjoint; a feature constant over both classes contributes a factor 1.
    """
    bounds = OverlapBounds.from_stats(feature_stats(ds))
    overlap = np.maximum(bounds.minmax - bounds.maxmin, 0.0)
    extent = bounds.maxmax - bounds.minmin
    factors = np.ones_like(extent)
    varying = extent > 0
    factors[varying] = overlap[varying] / extent[varying]
    return float(np.prod(factors))


def feature_efficiencies(ds: Dataset) -> np.ndarray:
    """
    Fraction of points lying strictly outside the closed overlap interval
    [MAXMIN_i, MINMAX_i], per feature.
    """
    bounds = OverlapBounds.from_stats(feature_stats(ds))
    values = ds.points
    outside = (values < bounds.maxmin) | (values > bounds.minmax)
    # Disjoint ranges leave an empty interval; every point is separable then
    disjoint = bounds.maxmin > bounds.minmax
    outside[:, disjoint] = True
    return outside.sum(axis=0) / ds.n


def f3_max_feature_efficiency(ds: Dataset) -> float:
    """Maximum individual feature efficiency (F3)."""
    return float(feature_efficiencies(ds).max())
