"""Domain types and elementary statistics with a fixed accumulation order.

Every statistic in this module sorts its accumulation terms into a canonical
order before summing, so results are bitwise identical across runs, platforms
and row permutations of the underlying sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import rankdata

__all__ = [
    "MarginalDistribution",
    "InputSpec",
    "Dataset",
    "SensitivityReport",
    "stable_sum",
    "stable_mean",
    "stable_variance",
    "weighted_variance",
    "pearson",
    "spearman",
]

_PROB_TOL = 1e-12


@dataclass(frozen=True)
class MarginalDistribution:
    """Marginal law of one model input: uniform, normal or categorical."""

    kind: str
    lo: float = 0.0
    hi: float = 1.0
    mean: float = 0.0
    sd: float = 1.0
    levels: tuple = ()
    probabilities: tuple = ()

    def __post_init__(self):
        if self.kind == "uniform":
            if not self.lo < self.hi:
                raise ValueError(f"uniform requires lo < hi, got [{self.lo}, {self.hi}]")
        elif self.kind == "normal":
            if not self.sd > 0:
                raise ValueError(f"normal requires sd > 0, got {self.sd}")
        elif self.kind == "categorical":
            if len(self.levels) != len(self.probabilities) or not self.levels:
                raise ValueError("categorical requires matching, non-empty levels and probabilities")
            p = np.asarray(self.probabilities, dtype=float)
            if np.any(p <= 0) or np.any(p > 1):
                raise ValueError("categorical probabilities must lie in (0, 1]")
            if abs(float(p.sum()) - 1.0) > _PROB_TOL:
                raise ValueError(f"categorical probabilities sum to {p.sum()}, not 1")
        else:
            raise ValueError(f"unknown distribution kind {self.kind!r}")

    @staticmethod
    def uniform(lo, hi):
        return MarginalDistribution("uniform", lo=float(lo), hi=float(hi))

    @staticmethod
    def normal(mean, sd):
        return MarginalDistribution("normal", mean=float(mean), sd=float(sd))

    @staticmethod
    def categorical(levels, probabilities):
        return MarginalDistribution(
            "categorical", levels=tuple(levels), probabilities=tuple(float(p) for p in probabilities)
        )


@dataclass(frozen=True)
class InputSpec:
    """One named model input with its marginal distribution."""

    name: str
    distribution: MarginalDistribution
    unit: str = ""


@dataclass(frozen=True)
class Dataset:
    """An N x K input matrix plus the length-N output vector it produced.

    Categorical columns are stored as level indices. This is the sole input
    to every estimator in the package.
    """

    inputs: np.ndarray
    output: np.ndarray
    specs: tuple

    def __post_init__(self):
        inputs = np.ascontiguousarray(np.asarray(self.inputs, dtype=float))
        output = np.ascontiguousarray(np.asarray(self.output, dtype=float))
        if inputs.ndim != 2:
            raise ValueError("inputs must be a 2-D matrix")
        if output.ndim != 1 or output.shape[0] != inputs.shape[0]:
            raise ValueError("output length must match the number of input rows")
        if inputs.shape[0] < 2:
            raise ValueError("dataset requires at least 2 rows")
        if inputs.shape[1] != len(self.specs):
            raise ValueError(
                f"dataset has {inputs.shape[1]} columns but {len(self.specs)} input specs"
            )
        if not np.all(np.isfinite(inputs)) or not np.all(np.isfinite(output)):
            raise ValueError("dataset contains NaN or Inf entries")
        names = [s.name for s in self.specs]
        if len(set(names)) != len(names):
            raise ValueError("input names must be unique")
        inputs.flags.writeable = False
        output.flags.writeable = False
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "output", output)
        object.__setattr__(self, "specs", tuple(self.specs))

    @property
    def n_rows(self):
        return self.inputs.shape[0]

    @property
    def n_inputs(self):
        return self.inputs.shape[1]

    @property
    def names(self):
        return tuple(s.name for s in self.specs)

    def column(self, i):
        return self.inputs[:, i]


@dataclass(frozen=True)
class SensitivityReport:
    """First-order vector, symmetric second-order matrix and combined indices."""

    names: tuple
    first_order: np.ndarray
    second_order: np.ndarray
    combined: np.ndarray
    var_y: float
    n_bins_first: int
    n_bins_second_per_dim: int
    warnings: tuple = field(default_factory=tuple)

    def __post_init__(self):
        k = len(self.names)
        fo = np.asarray(self.first_order, dtype=float)
        so = np.asarray(self.second_order, dtype=float)
        co = np.asarray(self.combined, dtype=float)
        if fo.shape != (k,) or co.shape != (k,) or so.shape != (k, k):
            raise ValueError("report arrays inconsistent with the number of inputs")
        if not (np.all(np.isfinite(fo)) and np.all(np.isfinite(so)) and np.all(np.isfinite(co))):
            raise ValueError("report contains non-finite indices")
        if not np.array_equal(so, so.T):
            raise ValueError("second-order matrix must be exactly symmetric")
        if np.any(np.diag(so) != 0.0):
            raise ValueError("second-order diagonal must be exactly zero")
        for a in (fo, so, co):
            a.flags.writeable = False
        object.__setattr__(self, "first_order", fo)
        object.__setattr__(self, "second_order", so)
        object.__setattr__(self, "combined", co)


def stable_sum(values):
    """Sum after sorting the terms: fixed order regardless of input order."""
    v = np.asarray(values, dtype=float)
    return float(np.sum(np.sort(v, kind="stable")))


def stable_mean(values):
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("mean of empty vector")
    return stable_sum(v) / v.size


def stable_variance(values, mean=None):
    """Population variance with canonical accumulation order."""
    v = np.asarray(values, dtype=float)
    if mean is None:
        mean = stable_mean(v)
    return stable_sum((v - mean) ** 2) / v.size


def weighted_variance(bin_means, bin_counts, grand_mean):
    """Occupancy-weighted variance of bin means around a grand mean.

    Bins with zero count contribute nothing (their means are ignored and may
    be NaN). Raises if every bin is empty.
    """
    means = np.asarray(bin_means, dtype=float)
    counts = np.asarray(bin_counts, dtype=float)
    if means.shape != counts.shape or means.ndim != 1 or means.size < 1:
        raise ValueError("bin means and counts must be equal-length vectors")
    if np.any(counts < 0) or np.any(counts != np.floor(counts)):
        raise ValueError("bin counts must be non-negative integers")
    total = counts.sum()
    if total == 0:
        raise ValueError("empty binning")
    occ = counts > 0
    terms = counts[occ] * (means[occ] - grand_mean) ** 2
    return stable_sum(terms) / total


def pearson(x, y):
    """Product-moment correlation coefficient."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size < 2:
        raise ValueError("pearson requires two equal-length vectors of size >= 2")
    dx = x - stable_mean(x)
    dy = y - stable_mean(y)
    sx = stable_sum(dx * dx)
    sy = stable_sum(dy * dy)
    if sx == 0.0 or sy == 0.0:
        raise ValueError("degenerate correlation")
    r = stable_sum(dx * dy) / math.sqrt(sx * sy)
    return min(1.0, max(-1.0, r))


def spearman(x, y):
    """Rank correlation: pearson applied to mid-rank transforms."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size < 2:
        raise ValueError("spearman requires two equal-length vectors of size >= 2")
    return pearson(rankdata(x, method="average"), rankdata(y, method="average"))
