"""Unit tests for the fBm-sum validation harness."""

import math

import numpy as np
import pytest

from src.app.exceptions import DomainError, PreconditionError
from src.domain import harness
from src.domain.harness import (
    SAMPLE_CAP,
    check_correlation_expansion,
    check_variance_expansion,
    compare_run,
    halton_points,
    mc_sup_tail,
    sup_tail_table,
)
from src.domain.models import CaseTag
from src.infra.config import get_settings


class TestHalton:
    """Test halton_points."""

    def test_deterministic_and_bounded(self):
        points = halton_points(32, 3)

        assert points.shape == (32, 3)
        assert np.all(np.abs(points) <= SAMPLE_CAP)
        np.testing.assert_array_equal(points, halton_points(32, 3))


class TestExpansions:
    """Test the local expansion checks."""

    @pytest.mark.parametrize(("alpha1", "alpha2"), [(1.0, 1.0), (0.5, 1.5)])
    @pytest.mark.parametrize("axis", ["s", "t"])
    def test_variance_error_vanishes(self, alpha1, alpha2, axis):
        report = check_variance_expansion(alpha1, alpha2, axis=axis)

        assert report.name == f"variance-{axis}"
        assert report.decreasing
        assert report.max_rel_err[-1] < 1e-2
        assert report.n_points == 64

    @pytest.mark.parametrize(("alpha1", "alpha2"), [(1.0, 1.0), (0.5, 1.5)])
    def test_correlation_error_vanishes(self, alpha1, alpha2):
        report = check_correlation_expansion(alpha1, alpha2)

        assert report.decreasing
        assert report.max_rel_err[-1] < report.max_rel_err[0]

    @pytest.mark.parametrize(("alpha1", "alpha2"), [(1.0, 1.0), (0.5, 1.5)])
    @pytest.mark.parametrize("axis", ["s", "t"])
    def test_variance_within_two_percent(self, alpha1, alpha2, axis):
        report = check_variance_expansion(alpha1, alpha2, delta_ladder=[1e-3], axis=axis)
        assert report.max_rel_err[0] <= 0.02

    @pytest.mark.parametrize(("alpha1", "alpha2"), [(1.0, 1.0), (0.5, 1.5)])
    def test_correlation_within_five_percent(self, alpha1, alpha2):
        report = check_correlation_expansion(alpha1, alpha2, delta_ladder=[1e-3])
        assert report.max_rel_err[0] <= 0.05
        assert report.n_points == 64

    def test_variance_at_diagonal_point(self):
        # s = 0.5, t = 0.5 - delta: 1 - sigma = delta / 2 + O(delta^2)
        report = check_variance_expansion(1.0, 1.0, delta_ladder=[1e-3, 1e-4], sample_points=[0.5])
        assert report.n_points == 1
        assert max(report.max_rel_err) < 1e-3

    @pytest.mark.parametrize(("alpha1", "alpha2"), [(1.0, 1.0), (0.5, 1.5)])
    def test_correlation_along_t_only(self, alpha1, alpha2):
        pairs = halton_points(16, 5)
        pairs[:, 1] = 0.0
        pairs[:, 3] = 0.0
        report = check_correlation_expansion(alpha1, alpha2, sample_pairs=pairs)

        assert report.n_points == 16
        assert report.decreasing
        assert report.max_rel_err[1] <= 0.05

    @pytest.mark.parametrize(("alpha1", "alpha2"), [(1.0, 1.0), (0.5, 1.5)])
    def test_correlation_symmetric_in_the_pair(self, alpha1, alpha2):
        pairs = halton_points(32, 5)
        swapped = pairs[:, [0, 3, 4, 1, 2]]

        forward = check_correlation_expansion(alpha1, alpha2, sample_pairs=pairs)
        backward = check_correlation_expansion(alpha1, alpha2, sample_pairs=swapped)
        assert forward.max_rel_err == backward.max_rel_err

    @pytest.mark.parametrize("delta", [1e-2, 1e-3, 1e-4])
    @pytest.mark.parametrize(("alpha1", "alpha2"), [(1.0, 1.0), (0.5, 1.5), (1.5, 0.5)])
    def test_correlation_points_lie_in_region(self, alpha1, alpha2, delta):
        s, t, s1, t1 = harness._correlation_points(alpha1, alpha2, delta, halton_points(64, 5))

        for x, y in ((s, t), (s1, t1)):
            assert np.all(np.abs(x) ** alpha1 + np.abs(y) ** alpha2 <= 1.0 + 1e-12)
            assert np.all(y > 0.0)

    def test_pairs_leaving_region_are_skipped(self):
        pairs = np.array([[0.9, 1.0, 0.5, 0.0, 0.5], [0.0, 0.5, 0.5, -0.5, 0.2]])
        report = check_correlation_expansion(1.0, 1.0, delta_ladder=[0.5], sample_pairs=pairs)
        assert report.n_points == 1

    def test_offsets_outside_unit_range_rejected(self):
        with pytest.raises(PreconditionError):
            check_correlation_expansion(1.0, 1.0, sample_pairs=np.array([[0.0, 1.5, 0.0, 0.0, 0.0]]))
        with pytest.raises(PreconditionError):
            check_correlation_expansion(1.0, 1.0, sample_pairs=np.array([[0.95, 0.0, 0.1, 0.0, 0.2]]))

    def test_invalid_input(self):
        with pytest.raises(DomainError):
            check_variance_expansion(1.0, 1.0, axis="u")
        with pytest.raises(DomainError):
            check_variance_expansion(1.0, 1.0, delta_ladder=[1e-2, 0.0])
        with pytest.raises(PreconditionError):
            check_variance_expansion(1.0, 1.0, sample_points=[0.95])
        with pytest.raises(PreconditionError):
            check_correlation_expansion(1.0, 1.0, sample_pairs=np.zeros((4, 3)))


class TestSupTail:
    """Test the Monte Carlo exceedance probabilities."""

    def test_trivial_levels_skip_simulation(self, mocker):
        spy = mocker.spy(harness, "_simulate_suprema")
        estimates = sup_tail_table(1.0, 1.0, [-1.0, 0.0, math.inf], [16], reps=10)

        assert [e.p_hat for e in estimates] == [1.0, 1.0, 0.0]
        assert spy.call_count == 0

    @pytest.mark.parametrize("ladder", [[], [14], [17], [16, 24]])
    def test_grid_ladder_validation(self, ladder):
        with pytest.raises(PreconditionError):
            sup_tail_table(1.0, 1.0, [1.0], ladder, reps=10)

    def test_invalid_input(self):
        with pytest.raises(PreconditionError):
            mc_sup_tail(1.0, 1.0, 1.0, 16, reps=0)
        with pytest.raises(DomainError):
            mc_sup_tail(1.0, 1.0, math.nan, 16, reps=10)
        with pytest.raises(DomainError):
            mc_sup_tail(1.0, 2.5, 1.0, 16, reps=10)

    def test_finer_grids_see_higher_suprema(self):
        estimates = sup_tail_table(0.8, 1.2, [0.5, 1.0, 1.5], [16, 32, 64], reps=300, seed=1)
        by_grid = {}
        for est in estimates:
            by_grid.setdefault(est.grid_n, []).append(est.p_hat)

        for u_index in range(3):
            assert by_grid[16][u_index] <= by_grid[32][u_index] <= by_grid[64][u_index]
        # decreasing in u on every grid
        for values in by_grid.values():
            assert values[0] >= values[1] >= values[2]

    def test_single_estimate(self):
        estimate = mc_sup_tail(1.0, 1.0, 1.0, 16, reps=400, seed=2)

        assert estimate.grid_n == 16
        assert 0.0 < estimate.p_hat < 1.0
        assert estimate.stderr == pytest.approx(
            math.sqrt(estimate.p_hat * (1.0 - estimate.p_hat) / 400)
        )

    def test_rare_level_is_weak(self):
        estimate = mc_sup_tail(1.0, 1.0, 8.0, 16, reps=100)

        assert estimate.weak

    def test_threads_do_not_change_estimates(self):
        settings = get_settings()
        settings.block_size = 50
        settings.threads = 1
        single = sup_tail_table(0.7, 1.3, [1.0, 2.0], [16, 32], reps=200, seed=3)
        settings.threads = 3
        threaded = sup_tail_table(0.7, 1.3, [1.0, 2.0], [16, 32], reps=200, seed=3)

        assert single == threaded


class TestCompareRun:
    """Test compare_run."""

    def test_rows_against_asymptote(self, closed_forms_only):
        table = compare_run(1.0, 1.5, [2.0, 1.0], [16, 32], reps=200, seed=0, constants_provider=closed_forms_only)

        assert table.case == CaseTag.FBM_SUM_SMOOTH
        assert [(row.grid_n, row.u) for row in table.rows] == [(16, 1.0), (16, 2.0), (32, 1.0), (32, 2.0)]
        for row in table.rows:
            # K = 2 and p = 2 for alpha = (1, 1.5)
            expected = 2.0 * row.u**2 * 0.5 * math.erfc(row.u / math.sqrt(2.0))
            assert row.asymptote == pytest.approx(expected)
            assert row.ratio == pytest.approx(row.p_hat / expected)
            assert math.isfinite(row.ratio_stderr)

        frame = table.to_frame()
        assert {"u", "grid_n", "p_hat", "ratio", "trend_flag"} <= set(frame.columns)

    def test_levels_must_be_positive(self, closed_forms_only):
        with pytest.raises(PreconditionError):
            compare_run(1.0, 1.5, [0.0, 1.0], [16], reps=10, seed=0, constants_provider=closed_forms_only)

    def test_ratio_grows_with_the_grid(self, closed_forms_only):
        table = compare_run(
            1.0, 1.5, [1.5, 2.0], [16, 32, 64], reps=400, seed=1, constants_provider=closed_forms_only
        )

        for u in (1.5, 2.0):
            ratios = [row.ratio for row in table.rows if row.u == u]
            assert len(ratios) == 3
            assert ratios == sorted(ratios)
