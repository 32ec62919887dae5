"""Unit tests for the quadrature helpers."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.domain.quadrature import (
    fixed_rule_integral,
    gauss_legendre_integral,
    reference_integral,
    substitution_power,
)


class TestSubstitutionPower:
    """Test the desingularizing substitution."""

    def test_integer_exponents_need_none(self):
        assert substitution_power(0.0) == 1
        assert substitution_power(2.0) == 1

    def test_fractional_exponents(self):
        assert substitution_power(-0.5) == 8
        assert substitution_power(0.5) == 3
        assert substitution_power(1.5) == 2


class TestGaussLegendre:
    """Test gauss_legendre_integral."""

    def test_smooth_integrand(self):
        result = gauss_legendre_integral(np.exp, 0.0, 1.0)

        assert result.converged
        assert result.value == pytest.approx(math.e - 1.0, rel=1e-12)

    def test_inverse_square_root_singularity(self):
        result = gauss_legendre_integral(
            lambda t: 1.0 / np.sqrt(t), 0.0, 1.0, endpoint_exponents=(-0.5, 0.0)
        )
        assert result.converged
        assert result.value == pytest.approx(2.0, rel=1e-10)

    @given(
        a=st.floats(min_value=-0.8, max_value=1.5),
        b=st.floats(min_value=-0.8, max_value=1.5),
    )
    @settings(max_examples=50, deadline=None)
    def test_two_sided_singularities(self, a, b):
        """Test int_0^1 t^a (1 - t)^b dt = B(a + 1, b + 1)."""
        from scipy.special import beta

        def integrand(t):
            return t**a * (1.0 - t) ** b

        result = gauss_legendre_integral(integrand, 0.0, 1.0, tol=1e-10, endpoint_exponents=(a, b))
        assert result.value == pytest.approx(beta(a + 1.0, b + 1.0), rel=1e-6)

    def test_unconverged_is_reported(self):
        result = gauss_legendre_integral(
            lambda t: np.sin(1.0 / t), 1e-4, 1.0, tol=1e-14, max_nodes=128
        )
        assert not result.converged
        assert math.isnan(result.error)

    def test_invalid_input(self):
        with pytest.raises(ValueError):
            gauss_legendre_integral(np.exp, 1.0, 0.0)
        with pytest.raises(ValueError):
            gauss_legendre_integral(np.exp, 0.0, 1.0, endpoint_exponents=(-1.0, 0.0))


class TestFixedRule:
    """Test fixed_rule_integral."""

    def test_matches_adaptive_rule(self):
        result = gauss_legendre_integral(lambda t: t**-0.3, 0.0, 2.0, endpoint_exponents=(-0.3, 0.0))
        fixed = fixed_rule_integral(lambda t: t**-0.3, 0.0, 2.0, result.n_nodes, (-0.3, 0.0))

        assert fixed == pytest.approx(result.value, rel=1e-12)


class TestReferenceIntegral:
    """Test the QUADPACK cross-check."""

    def test_plain(self):
        result = reference_integral(math.cos, 0.0, math.pi / 2.0)
        assert result.converged
        assert result.value == pytest.approx(1.0, rel=1e-10)

    def test_algebraic_weight(self):
        """Test int_0^1 t^-0.5 (1 - t)^0.5 dt = B(1/2, 3/2) = pi / 2."""
        result = reference_integral(lambda t: 1.0, 0.0, 1.0, weight="alg", wvar=(-0.5, 0.5))
        assert result.value == pytest.approx(math.pi / 2.0, rel=1e-10)
