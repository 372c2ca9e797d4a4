from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from corpus import PATH4, TRIANGLE
from jdmgraph.diagnostics import (
    AutocorrSeries,
    LagGrid,
    autocorr_normalized,
    autocorr_unnormalized,
    autocorrelation,
    autocorrelation_experiment,
    autocorrelation_matrix,
    ar1_series,
    iid_tvd_floor,
    integrated_autocorr,
    mean_abs_crossing_time,
    potential_edges,
    record_series,
    sample_mean,
    select_probe_edges,
    tau_from_acf,
    threshold_crossing_time,
    tvd_convergence,
    tvd_statistic,
)
from jdmgraph.errors import EmptySeries, LagTooLarge, ZeroVariance
from jdmgraph.mcmc import make_rng, seed_chain
from jdmgraph.model import JointDegreeMatrix
from jdmgraph.synth import generate_synthetic


def test_sample_mean():
    assert sample_mean([0, 1, 1, 0]) == 0.5
    assert sample_mean([1]) == 1.0
    with pytest.raises(EmptySeries):
        sample_mean([])


def test_alternating_series():
    x = [1, 0] * 50
    assert autocorr_unnormalized(x, 0) == pytest.approx(0.25)
    assert autocorr_normalized(x, 1) == pytest.approx(-1.0)
    assert autocorr_normalized(x, 2) == pytest.approx(1.0)
    # the partial sums of (-1)^t leave -1/2 for an even window and 1/2 for an odd one
    assert integrated_autocorr(x, 10) == pytest.approx(-0.5)
    assert integrated_autocorr(x, 11) == pytest.approx(0.5)


def test_degenerate_inputs():
    with pytest.raises(ZeroVariance):
        autocorr_normalized([1, 1, 1, 1], 1)
    with pytest.raises(LagTooLarge):
        autocorr_unnormalized([0, 1, 0], 3)
    with pytest.raises(LagTooLarge):
        integrated_autocorr([0, 1, 0], 10)
    rho, c0 = autocorrelation_matrix(np.array([[1, 0], [1, 1], [1, 0]]), [0, 1])
    assert np.isnan(rho[:, 0]).all() and c0[0] == 0
    assert rho[0, 1] == pytest.approx(1.0)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=20, max_size=300), st.integers(1, 7))
def test_fft_matches_direct(bits, chunk):
    x = np.array(bits, dtype=float)
    if x.var() == 0:
        return
    lags = list(range(0, min(15, len(bits))))
    X = np.stack([x, 1 - x, np.roll(x, 3)], axis=1)
    rho, _ = autocorrelation_matrix(X, lags, chunk=chunk)
    for j in range(3):
        direct = [autocorr_normalized(X[:, j], t) for t in lags]
        np.testing.assert_allclose(rho[:, j], direct, atol=1e-9)


def test_ar1_estimators():
    x = ar1_series(0.9, 100_000, seed=1)
    acf = autocorrelation(x, range(21))
    assert np.max(np.abs(acf.rho - 0.9 ** np.arange(21))) <= 0.02
    assert integrated_autocorr(x, 60) == pytest.approx(9.5, rel=0.10)


def test_iid_bernoulli():
    x = np.random.default_rng(4).integers(0, 2, 100_000)
    assert 0.4 <= integrated_autocorr(x, 10) <= 0.6
    assert abs(autocorr_normalized(x, 10)) < 0.02


def test_sparse_grid_tau():
    # exact geometric acf sampled every 5 lags: 1/2 + 5 * sum 0.9^(5j)
    lags = np.arange(0, 200, 5)
    acf = AutocorrSeries(lags, 0.9 ** lags, 1.0)
    expected = 0.5 + 5 * sum(0.9 ** t for t in range(5, 200, 5))
    assert tau_from_acf(acf, 200) == pytest.approx(expected)


def test_threshold_crossing():
    lags = np.arange(0, 201, 10)
    acf = AutocorrSeries(lags, 0.9 ** lags, 1.0)
    assert threshold_crossing_time(acf, 0.001) == 70
    assert threshold_crossing_time(acf, 1e-12) is None
    rho = np.stack([0.9 ** lags, 0.8 ** lags], axis=1)
    # (0.9**60 + 0.8**60) / 2 is about 0.0009
    assert mean_abs_crossing_time(lags, rho, 0.001) == 60


def test_lag_grid():
    assert list(LagGrid(100, 500, 100).lags()) == [100, 200, 300, 400, 500]
    assert LagGrid.default_for(78) == LagGrid(100, 15000, 100)
    assert LagGrid.default_for(2500) == LagGrid(300, 45000, 300)


def test_potential_edges_and_probes():
    jdm = generate_synthetic()
    # five cells with 20 slots each have a mean in [0.4, 0.6]
    probes = select_probe_edges(jdm, 100)
    assert {p.mean for p in probes} == {Fraction(i, 20) for i in range(8, 13)}
    assert select_probe_edges(jdm, 100) == probes
    thinned = select_probe_edges(jdm, 10)
    assert len(thinned) == 10 and set(thinned) <= set(probes)
    padded = select_probe_edges(jdm, 120)
    assert padded[:100] == probes
    assert all(p.mean > Fraction(3, 5) for p in padded[100:])

    tri = select_probe_edges(TRIANGLE, 5)
    assert [(p.u, p.v, p.mean) for p in tri] == [(0, 1, 1), (0, 2, 1), (1, 2, 1)]
    assert len(potential_edges(PATH4)) == 6


def test_record_series_matches_chain():
    chain = seed_chain(PATH4, "B", make_rng(2))
    pairs = [(0, 2), (0, 3), (0, 1)]
    X = record_series(chain, pairs, 200, gap=3)
    assert X.shape == (200, 3)
    assert (X[:, 2] == 1).all()
    assert (X[:, 0] + X[:, 1] == 1).all()
    assert chain.steps == 600


def test_tvd_statistic():
    assert tvd_statistic({(0, 1): 10, (0, 2): 10, (1, 2): 10}, 10, TRIANGLE) == 0
    # nothing observed: every mean counts in full
    assert tvd_statistic({}, 10, TRIANGLE) == 1
    exact = {(0, 1): 100, (0, 2): 50, (0, 3): 50, (1, 2): 50, (1, 3): 50}
    assert tvd_statistic(exact, 100, PATH4) == pytest.approx(0)


def test_tvd_convergence_small():
    points = tvd_convergence(PATH4, "B", gaps=[5, 20], samples_per_gap=4000, replicas=2, seed=3)
    assert [p.gap for p in points] == [5, 20]
    for p in points:
        assert len(p.values) == 2
        assert 0 <= p.min <= p.median <= p.max < 0.03
    assert iid_tvd_floor(PATH4, 4000) > 0


def test_experiment_report_shape():
    jdm = JointDegreeMatrix({(1, 2): 2, (2, 2): 3})
    edges = potential_edges(jdm)
    report = autocorrelation_experiment(
        jdm, edges, steps=3000, grid=LagGrid(10, 500, 10), replicas=2, seed=1)
    assert report.rho.shape == (2, 50, len(edges))
    assert report.tau.shape == report.threshold_time.shape == (2, len(edges))
    agg = report.aggregates()
    assert set(agg) == {f"{a}:{b}" for a in ("tau_int", "threshold_time") for b in ("mean", "median", "max")}
    with pytest.raises(LagTooLarge):
        autocorrelation_experiment(jdm, edges, steps=100, grid=LagGrid(10, 500, 10), replicas=1)


def test_constant_edges_are_excluded():
    edges = potential_edges(PATH4)
    report = autocorrelation_experiment(
        PATH4, edges, steps=2000, grid=LagGrid(10, 200, 10), replicas=2, seed=0)
    const = report.constant_edges()
    # (0, 1) is always present and (2, 3) never
    labels = [e.label for e in edges]
    assert const[labels.index("0-1")] and const[labels.index("2-3")]
    assert not const[labels.index("0-2")]


def test_experiment_is_deterministic_and_parallel_safe():
    jdm = JointDegreeMatrix({(1, 2): 2, (2, 2): 3})
    edges = potential_edges(jdm)
    kw = dict(steps=2000, grid=LagGrid(10, 300, 10), replicas=2, seed=9)
    a = autocorrelation_experiment(jdm, edges, **kw)
    b = autocorrelation_experiment(jdm, edges, workers=2, **kw)
    np.testing.assert_array_equal(a.rho, b.rho)
