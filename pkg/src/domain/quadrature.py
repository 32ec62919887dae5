"""Gauss-Legendre quadrature with endpoint desingularization."""

import math
from collections.abc import Callable
from functools import lru_cache

import numpy as np
import structlog
from pydantic import BaseModel
from scipy import integrate

logger = structlog.get_logger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]


class QuadratureResult(BaseModel):
    """Value of an integral and how it was obtained."""
    value: float
    error: float
    n_nodes: int
    converged: bool


@lru_cache(maxsize=32)
def _unit_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


def substitution_power(exponent: float) -> int:
    """Power m of the map x -> x^m that smooths (t - a)^exponent at a."""
    if exponent >= 0 and float(exponent).is_integer():
        return 1
    return max(2, math.ceil(4.0 / (1.0 + exponent)))


def _apply_rule(
    func: Integrand,
    a: float,
    b: float,
    n: int,
    powers: tuple[int, int],
) -> float:
    x, w = _unit_rule(n)
    m_left, m_right = powers
    if m_left == 1 and m_right == 1:
        return float((b - a) * np.sum(w * func(a + (b - a) * x)))

    c = 0.5 * (a + b)
    # left half: t = a + (c - a) x^m
    t_left = a + (c - a) * x**m_left
    jac_left = (c - a) * m_left * x ** (m_left - 1)
    # right half: t = b - (b - c) y^m
    t_right = b - (b - c) * x**m_right
    jac_right = (b - c) * m_right * x ** (m_right - 1)
    # nodes that round onto a singular end point carry negligible weight
    left = t_left != a
    right = t_right != b
    return float(
        np.sum(w[left] * jac_left[left] * func(t_left[left]))
        + np.sum(w[right] * jac_right[right] * func(t_right[right]))
    )


def gauss_legendre_integral(
    func: Integrand,
    a: float,
    b: float,
    tol: float = 1e-8,
    endpoint_exponents: tuple[float, float] = (0.0, 0.0),
    min_nodes: int = 64,
    max_nodes: int = 4096,
) -> QuadratureResult:
    """Integrate ``func`` over [a, b], doubling nodes until the relative change is below tol.

    ``endpoint_exponents`` describe integrable power behaviour (t - a)^e0 and
    (b - t)^e1; non-integer exponents trigger a polynomial substitution on the
    corresponding half of the interval.
    """
    if not b > a:
        raise ValueError("integration interval must have b > a")
    if min(endpoint_exponents) <= -1.0:
        raise ValueError("endpoint exponents must exceed -1")

    powers = (
        substitution_power(endpoint_exponents[0]),
        substitution_power(endpoint_exponents[1]),
    )
    n = min_nodes
    previous = _apply_rule(func, a, b, n, powers)
    while n < max_nodes:
        n *= 2
        current = _apply_rule(func, a, b, n, powers)
        change = abs(current - previous)
        if change <= tol * max(abs(current), 1e-300):
            return QuadratureResult(value=current, error=change, n_nodes=n, converged=True)
        previous = current

    logger.warning("quadrature did not converge", a=a, b=b, nodes=n, tol=tol)
    return QuadratureResult(value=previous, error=math.nan, n_nodes=n, converged=False)


def fixed_rule_integral(
    func: Integrand,
    a: float,
    b: float,
    n_nodes: int,
    endpoint_exponents: tuple[float, float] = (0.0, 0.0),
) -> float:
    """One application of the n-node rule with the same substitution as gauss_legendre_integral."""
    powers = (
        substitution_power(endpoint_exponents[0]),
        substitution_power(endpoint_exponents[1]),
    )
    return _apply_rule(func, a, b, n_nodes, powers)


def reference_integral(
    func: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    weight: str | None = None,
    wvar: tuple[float, float] | None = None,
) -> QuadratureResult:
    """Adaptive QUADPACK integral, used to cross-check closed forms."""
    kwargs = {"epsabs": 0.0, "epsrel": tol, "limit": 200}
    if weight is not None:
        kwargs["weight"] = weight
        kwargs["wvar"] = wvar
    value, error = integrate.quad(func, a, b, **kwargs)
    return QuadratureResult(
        value=float(value),
        error=float(error),
        n_nodes=0,
        converged=bool(error <= max(tol * abs(value), 1e-14)),
    )
