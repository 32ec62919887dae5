"""Unit tests for line, curve and fBm-sum asymptotics."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.app.exceptions import ConstantUnavailableError, DomainError, PreconditionError
from src.domain.asymptotics import (
    beta_reduced_integral,
    beta_reduced_reference,
    canonical_line_scenario,
    check_condition_f,
    classify_line,
    curve_asymptote,
    fbm_sum_asymptote,
    fbm_sum_curve_scenario,
    gaussian_tail,
    limit_ratio,
    line_asymptote,
    reduce_matrix_model,
)
from src.domain.models import AsymptoteFlag, CaseTag, CurveScenario, LineScenario, PowerLaw
from src.domain.services import PinnedConstants
from tests.conftest import PINNED_VALUES


def law(coeff: float, alpha: float) -> PowerLaw:
    return PowerLaw.from_alpha(coeff, alpha)


def line(**overrides) -> LineScenario:
    """Untilted line scenario with every alpha equal to one."""
    values = {"T1": 1.0, "T2": 1.0, "rho1": law(1.0, 1.0), "rho2": law(1.0, 1.0), "v": law(1.0, 1.0)}
    values.update(overrides)
    return LineScenario(**values)


def curve(f_prime, g, **overrides) -> CurveScenario:
    values = {
        "T1": 0.0,
        "T2": 1.0,
        "f": lambda t: np.asarray(t, dtype=float),
        "f_prime": f_prime,
        "g": g,
        "rho1": law(1.0, 1.0),
        "rho2": law(1.0, 1.0),
        "v": law(1.0, 2.0),
    }
    values.update(overrides)
    return CurveScenario(**values)


def ones(t):
    return np.ones_like(np.asarray(t, dtype=float))


class TestHelpers:
    """Test the small building blocks."""

    def test_gaussian_tail(self):
        assert gaussian_tail(0.0) == 0.5
        np.testing.assert_allclose(gaussian_tail(np.array([0.0, 1.0])), [0.5, 0.15865525393145707])

    def test_limit_ratio(self):
        assert limit_ratio(law(2.0, 1.0), law(1.0, 1.0)) == pytest.approx(4.0)
        assert limit_ratio(law(1.0, 1.5), law(1.0, 1.0)) == 0.0
        assert limit_ratio(law(1.0, 0.5), law(1.0, 1.0)) == math.inf

    def test_beta_reduction(self):
        assert beta_reduced_integral(1.0, 4.0) == pytest.approx(0.25)
        assert beta_reduced_integral(1.5, 1.0, weighted=True) == pytest.approx(1.0 / 1.5)
        with pytest.raises(DomainError):
            beta_reduced_integral(0.5, 0.0)

    @pytest.mark.parametrize(
        ("a", "b", "weighted"),
        [(0.5, 2.0, False), (0.75, 2.0, False), (1.5, 0.5, False), (1.5, 2.0, True), (0.6, 1.25, True)],
    )
    def test_beta_reduction_matches_quadrature(self, a, b, weighted):
        assert beta_reduced_reference(a, b, weighted) == pytest.approx(
            beta_reduced_integral(a, b, weighted), rel=1e-8
        )


class TestLineClassification:
    """Test canonical forms and case selection for lines."""

    def test_untilted_cases(self):
        assert classify_line(line(v=law(1.0, 2.0))) == CaseTag.LINE_PRODUCT
        assert classify_line(line()) == CaseTag.LINE_PITERBARG
        assert classify_line(line(v=law(1.0, 0.5))) == CaseTag.LINE_PITERBARG_INF

    def test_tilted_cases(self):
        assert classify_line(line(b=1.0, v=law(1.0, 2.0))) == CaseTag.TILTED_PRODUCT
        assert classify_line(line(b=1.0)) == CaseTag.TILTED_GENERALIZED
        assert classify_line(line(b=1.0, v=law(1.0, 0.5))) == CaseTag.TILTED_INF

    def test_eta_zero_walks_along_s(self):
        scn = line(b=2.0, rho2=law(3.0, 1.5))
        canonical = canonical_line_scenario(scn)

        assert canonical.b == 0.0
        assert canonical.rho2 == scn.rho1
        assert canonical.rho1.index == 0.75
        assert canonical.rho1.coeff == pytest.approx(3.0 * 2.0**-0.75)
        assert canonical.T2 == 1.0

    def test_eta_infinite_drops_the_tilt(self):
        canonical = canonical_line_scenario(line(b=2.0, rho1=law(1.0, 1.5)))

        assert canonical.b == 0.0
        assert canonical.T2 == 0.5

    @given(scale=st.floats(min_value=0.1, max_value=10.0), b=st.sampled_from([0.0, -0.5, 2.0]))
    @settings(max_examples=50)
    def test_classification_ignores_common_scale(self, scale, b):
        for v_alpha in (0.5, 1.0, 2.0):
            base = line(b=b, v=law(1.0, v_alpha))
            scaled = line(
                b=b, rho1=law(scale, 1.0), rho2=law(scale, 1.0), v=law(scale, v_alpha)
            )
            assert classify_line(scaled) == classify_line(base)


class TestLineAsymptote:
    """Test line_asymptote against hand-computed constants."""

    def test_product_case(self, closed_forms_only):
        # K = 2 * length * Gamma(3/2) * H_1^2
        result = line_asymptote(line(v=law(1.0, 2.0)), closed_forms_only)

        assert result.case == CaseTag.LINE_PRODUCT
        assert result.p_exact == "3"
        assert result.K == pytest.approx(2.0 * math.sqrt(math.pi))
        assert result.K_stderr == 0.0

    def test_product_case_on_boundary(self, closed_forms_only):
        scn = line(v=law(1.0, 2.0), boundary=True, t1=0.0, t2=1.0)
        assert line_asymptote(scn, closed_forms_only).K == pytest.approx(math.sqrt(math.pi) / 2.0)

    def test_piterbarg_case(self, closed_forms_only):
        # P_1^1 = 8/3 for two independent Exp(2) maxima
        result = line_asymptote(line(), closed_forms_only)

        assert result.p_exact == "2"
        assert result.K == pytest.approx(16.0 / 3.0)
        assert set(result.constants) == {"H_1", "P_1^1"}

    def test_infinite_gamma_case(self, closed_forms_only):
        scn = line(T2=1.5, rho1=law(1.0, 2.0), rho2=law(2.0, 1.0))
        result = line_asymptote(scn, closed_forms_only)

        assert result.case == CaseTag.LINE_PITERBARG_INF
        assert result.K == pytest.approx(2.0 * 1.5 * 4.0)

    def test_tilted_generalized_case(self):
        provider = PinnedConstants({"H_1^(1,1)": 2.5})
        result = line_asymptote(line(b=1.0), provider)

        assert result.case == CaseTag.TILTED_GENERALIZED
        assert result.K == pytest.approx(5.0)
        assert result.p == 2.0

    def test_tilted_infinite_case(self, closed_forms_only):
        result = line_asymptote(line(b=1.0, v=law(1.0, 0.5)), closed_forms_only)

        assert result.case == CaseTag.TILTED_INF
        assert result.K == pytest.approx(4.0)

    def test_degenerate_segment(self, closed_forms_only):
        scn = line(boundary=True, t1=0.5, t2=0.5)
        result = line_asymptote(scn, closed_forms_only)

        assert result.K == 0.0
        assert AsymptoteFlag.DEGENERATE_DOMAIN in result.flags

    def test_missing_constant(self, closed_forms_only):
        with pytest.raises(ConstantUnavailableError):
            line_asymptote(line(rho1=law(1.0, 0.5), rho2=law(1.0, 0.5), v=law(1.0, 2.0)), closed_forms_only)


class TestMatrixModel:
    """Test reduce_matrix_model."""

    rho = law(1.0, 1.0)

    def reduce(self, A, B, v1=None, v2=None):
        return reduce_matrix_model(
            np.array(A), np.array(B), self.rho, self.rho, v1 or law(1.0, 1.0), v2 or law(2.0, 1.0), 1.0, 1.0
        )

    def test_tilted_line(self):
        scn = self.reduce(np.eye(2), [[1.0, 1.0], [0.0, 0.0]])

        assert scn.b == 1.0
        assert scn.v.coeff == pytest.approx(1.0)

    def test_zero_first_row_swaps(self):
        scn = self.reduce(np.eye(2), [[0.0, 0.0], [1.0, 2.0]])

        assert scn.b == 2.0
        assert scn.v.coeff == pytest.approx(2.0)

    def test_tied_indices_add(self):
        scn = self.reduce(np.eye(2), [[1.0, 1.0], [1.0, 1.0]], v2=law(1.0, 1.0))

        assert scn.v.coeff == pytest.approx(math.sqrt(2.0))
        assert scn.v.index == 0.5

    def test_invalid_models(self):
        with pytest.raises(DomainError):
            self.reduce([[1.0, 1.0], [1.0, 1.0]], [[1.0, 1.0], [0.0, 0.0]])
        with pytest.raises(DomainError):
            self.reduce(np.eye(2), np.eye(2))
        with pytest.raises(DomainError):
            self.reduce(np.eye(2), np.zeros((2, 2)))


class TestCurveAsymptote:
    """Test curve_asymptote and condition F."""

    def test_condition_f(self):
        with pytest.raises(PreconditionError):
            check_condition_f(curve(lambda t: np.zeros_like(t), ones))
        with pytest.raises(PreconditionError):
            check_condition_f(curve(ones, lambda t: -ones(t)))
        with pytest.raises(PreconditionError):
            check_condition_f(curve(ones, lambda t: 2.0 * ones(t), g_bounds=(0.5, 1.0)))
        check_condition_f(curve(ones, ones, g_bounds=(1.0, 1.0)))

    def test_product_case(self, closed_forms_only):
        # K = int_0^1 1/g * 2 Gamma(3/2) H_1^2
        result = curve_asymptote(curve(ones, ones), closed_forms_only)

        assert result.case == CaseTag.CURVE_ETA_FINITE_PRODUCT
        assert result.p_exact == "3"
        assert result.K == pytest.approx(math.sqrt(math.pi), rel=1e-10)

    def test_eta_infinite_with_infinite_gamma(self, closed_forms_only):
        scn = curve(ones, ones, rho1=law(1.0, 1.5), v=law(1.0, 1.0))
        result = curve_asymptote(scn, closed_forms_only)

        assert result.case == CaseTag.CURVE_ETA_INF_PITERBARG
        assert result.K == pytest.approx(1.0)
        assert result.p_exact == "2"


class TestFbmSum:
    """Test fbm_sum_asymptote."""

    def test_closed_form_cases(self, closed_forms_only):
        smooth = fbm_sum_asymptote(1.0, 1.5, closed_forms_only)
        assert smooth.case == CaseTag.FBM_SUM_SMOOTH
        assert smooth.K == pytest.approx(2.0)
        assert smooth.p_exact == "2"

    def test_brownian_case(self, pinned_constants):
        result = fbm_sum_asymptote(0.5, 1.0, pinned_constants)

        assert result.case == CaseTag.FBM_SUM_BROWNIAN
        assert result.K == pytest.approx(2.0 * PINNED_VALUES["H_0.5"])
        assert result.p_exact == "4"

    def test_order_of_alphas_does_not_matter(self, pinned_constants):
        a = fbm_sum_asymptote(0.5, 0.75, pinned_constants)
        b = fbm_sum_asymptote(0.75, 0.5, pinned_constants)
        assert a == b

    def test_domain(self, pinned_constants):
        with pytest.raises(DomainError):
            fbm_sum_asymptote(1.0, 2.0, pinned_constants)
        with pytest.raises(DomainError):
            fbm_sum_curve_scenario(0.5, 1.0, piece=3)

    @pytest.mark.parametrize(
        ("alpha1", "alpha2", "case"),
        [
            (0.5, 0.75, CaseTag.FBM_SUM_ROUGH),
            (0.5, 1.0, CaseTag.FBM_SUM_BROWNIAN),
            (1.0, 1.5, CaseTag.FBM_SUM_SMOOTH),
            (0.5, 0.5, CaseTag.FBM_SUM_EQUAL_ROUGH),
            (1.0, 1.0, CaseTag.FBM_SUM_EQUAL_BROWNIAN),
            (1.5, 1.5, CaseTag.FBM_SUM_EQUAL_SMOOTH),
        ],
    )
    def test_four_boundary_arcs(self, pinned_constants, alpha1, alpha2, case):
        """Test the closed forms equal four times the general curve result on one arc."""
        direct = fbm_sum_asymptote(alpha1, alpha2, pinned_constants)
        arc = curve_asymptote(fbm_sum_curve_scenario(alpha1, alpha2, piece=1), pinned_constants)

        assert direct.case == case
        assert direct.p_exact == arc.p_exact
        assert direct.K == pytest.approx(4.0 * arc.K, rel=1e-6)
