"""Unit tests for domain models."""

import math

import numpy as np
import pytest

from src.domain.models import (
    AsymptoteFlag,
    CaseTag,
    ConstantKind,
    ConstantRequest,
    ExpansionReport,
    FbmPath,
    GridSpec,
    LineScenario,
    PowerLaw,
    RegionSpec,
    TailAsymptote,
    as_fraction,
)


class TestGridSpec:
    """Test GridSpec model."""

    def test_points_and_spacing(self):
        """Test grid points run from start to end."""
        grid = GridSpec(start=0.0, end=1.0, n_points=5)

        assert grid.spacing == pytest.approx(0.25)
        assert grid.starts_at_zero
        np.testing.assert_allclose(grid.points(), [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_symmetric_grid_contains_exact_zero(self):
        """Test a symmetric grid snaps its middle point to zero."""
        grid = GridSpec(start=-1.0, end=1.0, n_points=201)

        assert grid.points()[100] == 0.0
        assert grid.points()[-1] == 1.0

    def test_grid_validation(self):
        """Test empty intervals are rejected."""
        with pytest.raises(ValueError):
            GridSpec(start=1.0, end=1.0, n_points=3)
        with pytest.raises(ValueError):
            GridSpec(start=0.0, end=1.0, n_points=1)


class TestFbmPath:
    """Test FbmPath model."""

    def test_shape_must_match_grid(self):
        grid = GridSpec(start=0.0, end=1.0, n_points=3)
        with pytest.raises(ValueError):
            FbmPath(grid=grid, values=np.zeros(4), alpha=1.0)

    def test_to_frame(self):
        grid = GridSpec(start=0.0, end=1.0, n_points=3)
        frame = FbmPath(grid=grid, values=np.array([0.0, 0.3, -0.1]), alpha=1.0).to_frame()

        assert list(frame.columns) == ["t", "value"]
        assert frame["value"].tolist() == [0.0, 0.3, -0.1]


class TestRegionSpec:
    """Test RegionSpec model."""

    def test_interval(self):
        region = RegionSpec.interval(-1.0, 2.0)

        assert not region.is_planar
        assert region.size == 3.0
        assert region.label() == "[-1,2]"

    def test_strips(self):
        assert RegionSpec.strip(2.0, b=-1.0).label() == "strip(S=2,b=-1)"
        half = RegionSpec.strip(2.0, one_sided=True)
        assert half.is_planar
        assert half.label() == "half_strip(S=2,b=0)"


class TestPowerLaw:
    """Test PowerLaw model."""

    def test_alpha_convention(self):
        """Test rho(t) = c t^(alpha/2)."""
        law = PowerLaw.from_alpha(2.0, 1.5)

        assert law.index == 0.75
        assert law.alpha == 1.5
        assert law(16.0) == pytest.approx(16.0)
        assert law.inverse(16.0) == pytest.approx(16.0)

    def test_exact_alpha(self):
        assert PowerLaw.from_alpha(1.0, 2.0 / 3.0).alpha_exact == as_fraction(2.0 / 3.0)
        assert as_fraction(0.1 + 0.2) == as_fraction(0.3)

    def test_positive_parameters(self):
        with pytest.raises(ValueError):
            PowerLaw(coeff=0.0, index=1.0)
        with pytest.raises(ValueError):
            PowerLaw(coeff=1.0, index=-0.5)


class TestLineScenario:
    """Test LineScenario model."""

    def test_boundary_needs_segment(self):
        law = PowerLaw.from_alpha(1.0, 1.0)
        with pytest.raises(ValueError):
            LineScenario(T1=1.0, T2=1.0, rho1=law, rho2=law, v=law, boundary=True)
        with pytest.raises(ValueError):
            LineScenario(T1=1.0, T2=1.0, rho1=law, rho2=law, v=law, boundary=True, t1=1.0, t2=0.0)

        scenario = LineScenario(
            T1=1.0, T2=1.0, rho1=law, rho2=law, v=law, boundary=True, t1=0.25, t2=1.0
        )
        assert scenario.segment_length == 0.75


class TestConstantRequest:
    """Test ConstantRequest model."""

    def test_labels(self):
        assert ConstantRequest(kind=ConstantKind.PICKANDS, alpha=0.5).label() == "H_0.5"
        assert (
            ConstantRequest(kind=ConstantKind.PITERBARG, alpha=1.0, gamma=2.0, one_sided=True).label()
            == "hat_P_1^2"
        )
        assert (
            ConstantRequest(kind=ConstantKind.GEN_RATE, alpha=1.0, gamma=1.0, b=-1.0, one_sided=True).label()
            == "hat_H_1^(1,-1)"
        )

    def test_key_rounds_parameters(self):
        """Test requests differing below the rounding share a cache key."""
        a = ConstantRequest(kind=ConstantKind.PITERBARG, alpha=1.0, gamma=0.1 + 0.2)
        b = ConstantRequest(kind=ConstantKind.PITERBARG, alpha=1.0, gamma=0.3)
        c = ConstantRequest(kind=ConstantKind.PITERBARG, alpha=1.0, gamma=0.3, one_sided=True)

        assert a.key() == b.key()
        assert a.key() != c.key()

    def test_negative_zero_tilt(self):
        a = ConstantRequest(kind=ConstantKind.GEN_RATE, alpha=1.0, gamma=1.0, b=-0.0)
        b = ConstantRequest(kind=ConstantKind.GEN_RATE, alpha=1.0, gamma=1.0, b=0.0)
        assert a.key() == b.key()


class TestTailAsymptote:
    """Test TailAsymptote model."""

    @pytest.fixture
    def asymptote(self):
        return TailAsymptote(case=CaseTag.LINE_PRODUCT, K=2.0, K_stderr=0.1, p=3.0, p_exact="3")

    def test_evaluate(self, asymptote):
        """Test K u^p Psi(u)."""
        psi = 0.5 * math.erfc(3.0 / math.sqrt(2.0))
        assert asymptote.evaluate(3.0) == pytest.approx(2.0 * 27.0 * psi, rel=1e-12)
        assert asymptote.evaluate(math.inf) == 0.0
        with pytest.raises(ValueError):
            asymptote.evaluate(0.0)

    def test_log_evaluate_for_large_u(self, asymptote):
        assert asymptote.log_evaluate(3.0) == pytest.approx(math.log(asymptote.evaluate(3.0)))
        # Psi(60) underflows, its logarithm does not
        assert asymptote.evaluate(60.0) == 0.0
        assert asymptote.log_evaluate(60.0) == pytest.approx(
            math.log(2.0) + 3.0 * math.log(60.0) - 1800.0 - math.log(60.0 * math.sqrt(2 * math.pi)),
            abs=1e-3,
        )

    def test_evaluate_table(self, asymptote):
        table = asymptote.evaluate_table([2.0, 3.0])

        assert list(table.columns) == ["u", "asymptote", "log_asymptote", "lower", "upper"]
        assert table["asymptote"].iloc[1] == pytest.approx(asymptote.evaluate(3.0))
        assert table["lower"].iloc[0] == pytest.approx(0.9 * table["asymptote"].iloc[0])
        assert table["upper"].iloc[0] == pytest.approx(1.1 * table["asymptote"].iloc[0])

    def test_flags_are_unique_and_sorted(self):
        asymptote = TailAsymptote(
            case=CaseTag.LINE_PRODUCT,
            K=0.0,
            p=1.0,
            p_exact="1",
            flags=[
                AsymptoteFlag.QUADRATURE_UNCONVERGED,
                AsymptoteFlag.DEGENERATE_DOMAIN,
                AsymptoteFlag.QUADRATURE_UNCONVERGED,
            ],
        )
        assert asymptote.flags == [AsymptoteFlag.DEGENERATE_DOMAIN, AsymptoteFlag.QUADRATURE_UNCONVERGED]
        assert asymptote.to_row()["flags"] == "degenerate_domain;quadrature_unconverged"
        assert asymptote.log_evaluate(2.0) == -math.inf


class TestExpansionReport:
    """Test ExpansionReport model."""

    def test_decreasing(self):
        report = ExpansionReport(name="variance-s", delta_ladder=[1e-2, 1e-3], max_rel_err=[0.1, 0.01])
        assert report.decreasing
        assert report.to_frame()["expansion"].tolist() == ["variance-s", "variance-s"]

        report = ExpansionReport(name="correlation", delta_ladder=[1e-2, 1e-3], max_rel_err=[0.1, 0.2])
        assert not report.decreasing

    def test_lengths_must_match(self):
        with pytest.raises(ValueError):
            ExpansionReport(name="x", delta_ladder=[1e-2], max_rel_err=[0.1, 0.2])
