import numpy as np
import pytest

from binsa import (
    Dataset,
    InputSpec,
    MarginalDistribution,
    SensitivityReport,
    pearson,
    spearman,
    stable_mean,
    stable_sum,
    stable_variance,
    weighted_variance,
)


def test_stable_sum_matches_exact_value():
    assert stable_sum([1.0, 2.0, 3.5]) == 6.5


def test_stable_sum_is_permutation_invariant_bitwise():
    rng = np.random.default_rng(7)
    v = rng.normal(size=10001) * 1e8 + rng.normal(size=10001)
    s1 = stable_sum(v)
    s2 = stable_sum(v[::-1].copy())
    s3 = stable_sum(rng.permutation(v))
    assert s1 == s2 == s3


def test_stable_mean_and_variance_hand_case():
    v = [2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]
    assert stable_mean(v) == 5.0
    assert stable_variance(v) == 4.0  # classic population-variance example


def test_stable_mean_empty_raises():
    with pytest.raises(ValueError):
        stable_mean([])


def test_weighted_variance_hand_case():
    # bins: means 1, 3, 6 with counts 2, 4, 2; grand mean = (2+12+12)/8 = 3.25
    # V = (2*(1-3.25)^2 + 4*(3-3.25)^2 + 2*(6-3.25)^2) / 8
    #   = (10.125 + 0.25 + 15.125) / 8 = 3.1875
    assert weighted_variance([1.0, 3.0, 6.0], [2, 4, 2], 3.25) == 3.1875


def test_weighted_variance_ignores_empty_bins():
    v = weighted_variance([1.0, np.nan, 6.0], [2, 0, 2], 3.5)
    assert v == (2 * 6.25 + 2 * 6.25) / 4


def test_weighted_variance_all_empty_raises():
    with pytest.raises(ValueError, match="empty binning"):
        weighted_variance([1.0], [0], 0.0)


def test_weighted_variance_rejects_negative_counts():
    with pytest.raises(ValueError):
        weighted_variance([1.0, 2.0], [2, -1], 1.5)


def test_pearson_exact_on_linear_data():
    x = np.arange(10.0)
    assert pearson(x, 3.0 * x - 2.0) == 1.0
    assert pearson(x, -0.5 * x + 4.0) == -1.0


def test_pearson_hand_case():
    x = [1.0, 2.0, 3.0]
    y = [1.0, 2.0, 4.0]
    # dx = [-1, 0, 1], dy = [-4/3, -1/3, 5/3]: r = 3 / sqrt(2 * 14/3)
    expected = 3.0 / np.sqrt(2.0 * (14.0 / 3.0))
    assert pearson(x, y) == pytest.approx(expected, abs=1e-15)


def test_pearson_degenerate_raises():
    with pytest.raises(ValueError, match="degenerate correlation"):
        pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])


def test_spearman_on_monotone_nonlinear_data():
    x = np.linspace(0, 1, 50)
    assert spearman(x, np.exp(5 * x)) == pytest.approx(1.0)
    assert spearman(x, -np.exp(5 * x)) == pytest.approx(-1.0)


def test_spearman_ties_use_mid_ranks():
    assert spearman([1, 1, 2, 2], [1, 1, 2, 2]) == pytest.approx(1.0)


def test_marginal_constructors_validate():
    MarginalDistribution.uniform(0, 1)
    MarginalDistribution.normal(0, 1)
    MarginalDistribution.categorical(("a", "b"), (0.5, 0.5))
    with pytest.raises(ValueError):
        MarginalDistribution.uniform(1, 1)
    with pytest.raises(ValueError):
        MarginalDistribution.normal(0, 0)
    with pytest.raises(ValueError):
        MarginalDistribution.categorical(("a", "b"), (0.5, 0.6))
    with pytest.raises(ValueError):
        MarginalDistribution("weird")


def _specs(k):
    return tuple(
        InputSpec(name=f"x{i}", distribution=MarginalDistribution.uniform(0, 1)) for i in range(k)
    )


def test_dataset_validation():
    x = np.random.default_rng(0).random((5, 2))
    y = x.sum(axis=1)
    ds = Dataset(inputs=x, output=y, specs=_specs(2))
    assert ds.n_rows == 5 and ds.n_inputs == 2
    assert ds.names == ("x0", "x1")
    with pytest.raises(ValueError):
        Dataset(inputs=x, output=y[:-1], specs=_specs(2))
    with pytest.raises(ValueError):
        Dataset(inputs=x, output=y, specs=_specs(3))
    bad = x.copy()
    bad[0, 0] = np.nan
    with pytest.raises(ValueError):
        Dataset(inputs=bad, output=y, specs=_specs(2))


def test_dataset_arrays_are_read_only():
    x = np.random.default_rng(0).random((5, 2))
    ds = Dataset(inputs=x, output=x.sum(axis=1), specs=_specs(2))
    with pytest.raises(ValueError):
        ds.inputs[0, 0] = 1.0


def test_report_requires_exact_symmetry_and_zero_diagonal():
    so = np.zeros((2, 2))
    SensitivityReport(
        names=("a", "b"),
        first_order=np.array([0.5, 0.5]),
        second_order=so,
        combined=np.array([0.5, 0.5]),
        var_y=1.0,
        n_bins_first=10,
        n_bins_second_per_dim=4,
    )
    asym = so.copy()
    asym[0, 1] = 0.1
    with pytest.raises(ValueError):
        SensitivityReport(
            names=("a", "b"),
            first_order=np.array([0.5, 0.5]),
            second_order=asym,
            combined=np.array([0.5, 0.5]),
            var_y=1.0,
            n_bins_first=10,
            n_bins_second_per_dim=4,
        )
