import math

import numpy as np
import pytest
from scipy.stats import chisquare

from ifm import interferometer as mz
from ifm.interferometer import MzConfig

from oracles import grid_argmax, mz_brute_force


def test_fig1_probabilities():
    d = mz.outcome_distribution(MzConfig(0.5, True))
    assert d.p_bright == pytest.approx(0.25, abs=1e-12)
    assert d.p_dark == pytest.approx(0.25, abs=1e-12)
    assert d.p_absorbed == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("R", [0.01, 0.3, 0.5, 0.77, 0.999])
def test_clear_beam_line_is_all_bright(R):
    d = mz.outcome_distribution(MzConfig(R, False))
    np.testing.assert_allclose(d.as_array(), [1, 0, 0], atol=1e-12)


def test_R_0_1_matches_brute_force():
    d = mz.outcome_distribution(MzConfig(0.1, True))
    # frozen from oracles.mz_brute_force(0.1)
    np.testing.assert_allclose(d.as_array(), [0.81, 0.09, 0.10], atol=1e-12)
    np.testing.assert_allclose(d.as_array(), mz_brute_force(0.1), atol=1e-12)


def test_closed_form_and_composition_agree(rng):
    for R in rng.uniform(1e-9, 1 - 1e-9, 1000):
        sim = mz.outcome_distribution(MzConfig(R, True)).as_array()
        closed = mz.closed_form_distribution(R).as_array()
        assert np.max(np.abs(sim - closed)) < 1e-12
        assert abs(sim.sum() - 1) < 1e-12


@pytest.mark.parametrize("R", [0.0, 1.0, -0.5, math.inf])
def test_config_rejects_bad_R(R):
    with pytest.raises(ValueError, match=r"R in \(0,1\)"):
        MzConfig(R)


def test_run_trials_statistics():
    cfg = MzConfig(0.5, True)
    n = 10**5
    tally = mz.run_trials(cfg, n, seed=12345)
    assert sum(tally.counts.values()) == n
    p = np.array([0.25, 0.25, 0.5])
    se = np.sqrt(p * (1 - p) / n)
    freq = tally.as_array() / n
    assert np.all(np.abs(freq - p) < 4 * se)
    assert chisquare(tally.as_array(), p * n).pvalue > 1e-6


def test_run_trials_clear_beam_never_dark_or_absorbed():
    tally = mz.run_trials(MzConfig(0.37, False), 50_000, seed=3)
    assert tally.counts["dark"] == 0
    assert tally.counts["absorbed"] == 0


def test_run_trials_deterministic_and_worker_independent():
    cfg = MzConfig(0.3, True)
    base = mz.run_trials(cfg, 20_001, seed=99, workers=1)
    assert mz.run_trials(cfg, 20_001, seed=99, workers=1) == base
    for workers in (2, 3, 7):
        assert mz.run_trials(cfg, 20_001, seed=99, workers=workers).counts == base.counts
    assert mz.run_trials(cfg, 20_001, seed=100).counts != base.counts


def test_run_trials_rejects_zero():
    with pytest.raises(ValueError):
        mz.run_trials(MzConfig(), 0)


def test_sequential_single_shot():
    R = 0.3
    rep = mz.sequential_strategy(MzConfig(R), 1)
    assert rep.p_detect == pytest.approx(R * (1 - R), abs=1e-15)
    assert rep.p_explode == pytest.approx(R, abs=1e-15)
    assert rep.p_give_up == pytest.approx((1 - R) ** 2, abs=1e-15)
    assert rep.expected_photons_sent == 1.0


def test_sequential_unbounded_half_split():
    rep = mz.sequential_strategy(MzConfig(0.5), None)
    assert rep.p_detect == pytest.approx(1 / 3, abs=1e-12)
    assert rep.p_explode == pytest.approx(2 / 3, abs=1e-12)
    # a large finite cap converges to the same numbers
    capped = mz.sequential_strategy(MzConfig(0.5), 200)
    assert capped.p_detect == pytest.approx(1 / 3, abs=1e-12)


def test_sequential_small_R_tends_to_half():
    rep = mz.sequential_strategy(MzConfig(1e-3), None)
    assert abs(rep.p_detect - 0.5) < 1e-3


def test_sequential_direct_geometric_sum(rng):
    for R in rng.uniform(0.01, 0.99, 50):
        M = int(rng.integers(1, 30))
        d, e, c = R * (1 - R), R, (1 - R) ** 2
        pd = sum(d * c**k for k in range(M))
        pe = sum(e * c**k for k in range(M))
        rep = mz.sequential_strategy(MzConfig(R), M)
        assert rep.p_detect == pytest.approx(pd, abs=1e-12)
        assert rep.p_explode == pytest.approx(pe, abs=1e-12)
        assert rep.p_detect + rep.p_explode + rep.p_give_up == pytest.approx(1, abs=1e-12)
        assert rep.expected_photons_sent <= M


def test_sequential_errors():
    with pytest.raises(ValueError):
        mz.sequential_strategy(MzConfig(0.5), 0)
    with pytest.raises(ValueError):
        mz.sequential_strategy(MzConfig(0.5, False), 5)


@pytest.mark.parametrize("R, M", [(0.5, None), (0.2, 3)])
def test_sequential_matches_monte_carlo(R, M):
    n = 10**5
    rep = mz.sequential_strategy(MzConfig(R), M)
    mc = mz.simulate_strategy(MzConfig(R), M, n, seed=7, workers=3)
    for key, p in (("detect", rep.p_detect), ("explode", rep.p_explode), ("give_up", rep.p_give_up)):
        se = math.sqrt(max(p * (1 - p), 1e-12) / n)
        assert abs(mc[key] / n - p) <= 4 * se + 1e-12, key
    assert mc["photons"] / n == pytest.approx(rep.expected_photons_sent, rel=0.02)


def test_simulate_strategy_worker_independent():
    cfg = MzConfig(0.4)
    a = mz.simulate_strategy(cfg, 10, 9_999, seed=5, workers=1)
    b = mz.simulate_strategy(cfg, 10, 9_999, seed=5, workers=4)
    assert a == b


def test_efficiency_values():
    assert mz.efficiency(0.5) == pytest.approx(1 / 3, abs=1e-15)
    assert mz.efficiency(0.01) == pytest.approx(0.99 / 1.99, abs=1e-15)
    d = mz_brute_force(0.01)
    assert mz.efficiency(0.01) == pytest.approx(d[1] / (d[1] + d[2]), abs=1e-12)
    assert mz.efficiency(1 - 1e-12) < 1e-11
    for R in (0.0, 1.0, 2.0):
        with pytest.raises(ValueError):
            mz.efficiency(R)


def _objective(weight):
    return lambda R: (1 - R) / (2 - R) - weight / (R * (2 - R))


def test_optimizer_boundaries():
    R, _ = mz.optimize_reflectivity(0.0)
    assert R == pytest.approx(mz.R_EPS, abs=1e-8)
    R, _ = mz.optimize_reflectivity(1e9)
    assert R == pytest.approx(1 - mz.R_EPS, abs=1e-8)


def test_optimizer_interior_matches_grid():
    R, val = mz.optimize_reflectivity(0.01)
    R_grid, val_grid = grid_argmax(_objective(0.01), mz.R_EPS, 1 - mz.R_EPS)
    assert 1e-3 < R < 1 - 1e-3
    assert abs(R - R_grid) < 1e-6
    assert val >= val_grid - 1e-12


@pytest.mark.parametrize("weight", [math.nan, math.inf, -1.0])
def test_optimizer_rejects_bad_weight(weight):
    with pytest.raises(ValueError):
        mz.optimize_reflectivity(weight)
