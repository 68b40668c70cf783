"""The simple binning estimator: conditional variance over equal-width bins
of one input (first order) or a grid of two (second order), divided by the
output variance."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import SensitivityReport, stable_mean, stable_sum, stable_variance

__all__ = [
    "BinningConfig",
    "bin_count_first",
    "bin_count_second_per_dim",
    "bin_edges",
    "first_order_index",
    "second_order_index",
    "analyze",
    "conservation_check",
]

# Experimentally optimal first-order bin counts over a grid of sample sizes
# (rows) and input counts (columns 3, 6, 12); queried by bilinear
# interpolation with clamping.
_N_GRID = np.array([1000, 2500, 5000, 7500, 10000, 25000, 50000], dtype=float)
_K_GRID = np.array([3, 6, 12], dtype=float)
_BIN_TABLE = np.array(
    [
        [10, 10, 10],
        [25, 10, 10],
        [50, 10, 10],
        [50, 25, 10],
        [50, 50, 10],
        [100, 50, 25],
        [100, 50, 50],
    ],
    dtype=float,
)

_MIN_BINS = 10
_MAX_BINS = 100

# Target observations per two-dimensional grid cell for second-order indices.
# Chosen so the joint conditional variance stays resolved at large samples
# (the square-root-of-first-order-bins rule is too coarse there) while small
# samples keep cells populated: 1000 rows -> 4 bins per axis.
_PAIR_CELL_OCCUPANCY = 60.0


@dataclass(frozen=True)
class BinningConfig:
    """Bin counts for the estimator; None selects the automatic rule."""

    n_bins_first: int | None = None
    n_bins_second_per_dim: int | None = None

    def __post_init__(self):
        for v in (self.n_bins_first, self.n_bins_second_per_dim):
            if v is not None and v < 2:
                raise ValueError("bin counts must be >= 2")


def bin_count_first(n_obs, k_inputs):
    """First-order bin count: interpolated from the experimental table.

    Bilinear interpolation over (n_obs, k_inputs) with n_obs clamped to
    [1000, 50000] and k to [3, 12]; the result is rounded, floored at 10 and
    capped at 100.
    """
    if k_inputs < 1:
        raise ValueError("k_inputs must be >= 1")
    if n_obs < 100:
        raise ValueError("sample too small")
    n = min(max(float(n_obs), _N_GRID[0]), _N_GRID[-1])
    k = min(max(float(k_inputs), _K_GRID[0]), _K_GRID[-1])
    by_k = [np.interp(n, _N_GRID, _BIN_TABLE[:, j]) for j in range(len(_K_GRID))]
    value = float(np.interp(k, _K_GRID, by_k))
    return int(min(_MAX_BINS, max(_MIN_BINS, round(value))))


def bin_count_second_per_dim(n_obs):
    """Per-axis bin count for the two-dimensional grid.

    Keeps roughly a constant number of observations per grid cell.
    """
    if n_obs < 100:
        raise ValueError("sample too small")
    return max(2, round(math.sqrt(n_obs / _PAIR_CELL_OCCUPANCY)))


def bin_edges(column, spec, n_bins):
    """Equal-width edges over the observed range, or the category level map."""
    column = np.asarray(column, dtype=float)
    if spec.distribution.kind == "categorical":
        return np.arange(len(spec.distribution.levels) + 1, dtype=float) - 0.5
    if n_bins < 2:
        raise ValueError("n_bins must be >= 2")
    lo = float(column.min())
    hi = float(column.max())
    if lo == hi:
        raise ValueError("degenerate input")
    return np.linspace(lo, hi, n_bins + 1)


def _cell_indices(column, spec, n_bins):
    """Bin index per row: equal-width over [min, max], rightmost inclusive."""
    if spec is not None and spec.distribution.kind == "categorical":
        n = len(spec.distribution.levels)
        return column.astype(np.int64), n
    lo = column.min()
    hi = column.max()
    if lo == hi:
        raise ValueError("degenerate input")
    idx = np.floor((column - lo) * (n_bins / (hi - lo))).astype(np.int64)
    np.clip(idx, 0, n_bins - 1, out=idx)
    return idx, n_bins


def _conditional_variance_ratio(cell_idx, n_cells, y, var_y):
    """V_w(E[Y | cell]) / Var(Y) with order-canonical accumulation."""
    order = np.lexsort((y, cell_idx))
    ci = cell_idx[order]
    ys = y[order]
    counts = np.bincount(ci, minlength=n_cells)
    sums = np.bincount(ci, weights=ys, minlength=n_cells)
    occ = counts > 0
    means = sums[occ] / counts[occ]
    n_occ = counts[occ].astype(float)
    total = n_occ.sum()
    grand = stable_sum(n_occ * means) / total
    wvar = stable_sum(n_occ * (means - grand) ** 2) / total
    return wvar / var_y


def first_order_index(x, y, spec, n_bins):
    """Fraction of output variance explained by one input alone."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be equal-length vectors")
    var_y = stable_variance(y)
    if var_y == 0.0:
        raise ValueError("constant output")
    idx, n_cells = _cell_indices(x, spec, n_bins)
    return _conditional_variance_ratio(idx, n_cells, y, var_y)


def second_order_index(xi, xj, y, specs, m):
    """Joint-effect index of a pair beyond their first-order effects.

    All three terms share the same per-axis bin count m so the bin geometry
    is identical across the joint and marginal conditional variances.
    """
    xi = np.asarray(xi, dtype=float)
    xj = np.asarray(xj, dtype=float)
    y = np.asarray(y, dtype=float)
    if m < 2:
        raise ValueError("m must be >= 2")
    var_y = stable_variance(y)
    if var_y == 0.0:
        raise ValueError("constant output")
    if m * m > y.size / 5:
        warnings.warn("sparse grid: m^2 exceeds N/5", stacklevel=2)
    spec_i, spec_j = specs
    ci, ni = _cell_indices(xi, spec_i, m)
    cj, nj = _cell_indices(xj, spec_j, m)
    joint = _conditional_variance_ratio(ci * nj + cj, ni * nj, y, var_y)
    si = _conditional_variance_ratio(ci, ni, y, var_y)
    sj = _conditional_variance_ratio(cj, nj, y, var_y)
    return joint - si - sj


def analyze(dataset, config=None, reuse_first_order_marginals=False):
    """Full sensitivity report for a dataset.

    First-order indices use the table-interpolated bin count; every pair gets
    a second-order index on an m x m grid with marginal terms recomputed at m
    bins (set reuse_first_order_marginals=True to subtract the full-resolution
    first-order values instead, for comparison). Constant input columns are
    assigned index 0 with a warning instead of failing the analysis.
    """
    config = config or BinningConfig()
    n, k = dataset.n_rows, dataset.n_inputs
    y = dataset.output
    var_y = stable_variance(y)
    if var_y == 0.0:
        raise ValueError("constant output")
    nb = config.n_bins_first or bin_count_first(n, k)
    m = config.n_bins_second_per_dim or bin_count_second_per_dim(n)

    notes = []
    cells_first = {}
    cells_pair = {}
    for i in range(k):
        try:
            cells_first[i] = _cell_indices(dataset.column(i), dataset.specs[i], nb)
            cells_pair[i] = _cell_indices(dataset.column(i), dataset.specs[i], m)
        except ValueError:
            notes.append(f"degenerate input column {dataset.names[i]!r}: indices set to 0")
            warnings.warn(notes[-1], stacklevel=2)

    first = np.zeros(k)
    for i, (ci, n_cells) in cells_first.items():
        first[i] = _conditional_variance_ratio(ci, n_cells, y, var_y)

    second = np.zeros((k, k))
    marg = {i: _conditional_variance_ratio(ci, nc, y, var_y) for i, (ci, nc) in cells_pair.items()}
    for i in range(k):
        for j in range(i + 1, k):
            if i not in cells_pair or j not in cells_pair:
                continue
            (ci, ni), (cj, nj) = cells_pair[i], cells_pair[j]
            joint = _conditional_variance_ratio(ci * nj + cj, ni * nj, y, var_y)
            if reuse_first_order_marginals:
                s = joint - first[i] - first[j]
            else:
                s = joint - marg[i] - marg[j]
            second[i, j] = second[j, i] = s

    combined = first + 0.5 * second.sum(axis=1)
    return SensitivityReport(
        names=dataset.names,
        first_order=first,
        second_order=second,
        combined=combined,
        var_y=var_y,
        n_bins_first=nb,
        n_bins_second_per_dim=m,
        warnings=tuple(notes),
    )


def conservation_check(report):
    """Sum of all first- and second-order indices; 1 when nothing is missing."""
    upper = report.second_order[np.triu_indices(len(report.names), k=1)]
    return float(stable_sum(report.first_order) + stable_sum(upper))
