"""Deterministic reference values for Monte Carlo functionals."""

import math

import numpy as np
from scipy import integrate
from scipy.special import log_ndtr

from src.app.exceptions import DomainError

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def quadratic_sup_expectation(S1: float, S2: float, k: float) -> float:
    """E exp(sup_{t in [S1, S2]} (sqrt2 t N - k t^2)) for standard normal N.

    This is every alpha = 2 functional, since B_2(t) = t N.
    """
    if not S2 > S1:
        raise DomainError("S2", S2, "must exceed S1")
    if k <= 0:
        raise DomainError("k", k, "must be positive")

    # the maximiser n / (sqrt2 k) sits at S1 below n1 and at S2 above n2
    n1 = math.sqrt(2.0) * k * S1
    n2 = math.sqrt(2.0) * k * S2
    a1 = math.sqrt(2.0) * S1
    a2 = math.sqrt(2.0) * S2

    # E[exp(a N) ; N < n1] = exp(a^2/2) Phi(n1 - a)
    lower = math.exp(a1**2 / 2.0 - k * S1**2 + log_ndtr(n1 - a1))
    upper = math.exp(a2**2 / 2.0 - k * S2**2 + log_ndtr(a2 - n2))

    def middle(n: float) -> float:
        return _INV_SQRT_2PI * math.exp(n * n / (2.0 * k) - n * n / 2.0)

    inner, _ = integrate.quad(middle, n1, n2, epsabs=0.0, epsrel=1e-12, limit=200)
    return lower + inner + upper


def drifted_brownian_sup_expectation(S: float, drift: float) -> float:
    """E exp(sup_{t in [0, S]} (sqrt2 B(t) - drift t)) from the reflection principle.

    drift = 1 gives the Pickands functional H_1[0, S]; drift = 1 + gamma gives
    the one-sided Piterbarg functional at alpha = 1.
    """
    if S <= 0:
        raise DomainError("S", S, "must be positive")
    scale = math.sqrt(2.0 * S)

    # P(M > m) = Psi((m + dS)/sqrt(2S)) + exp(-d m) Psi((m - dS)/sqrt(2S))
    def tail_weighted(m: float) -> float:
        first = m + log_ndtr(-(m + drift * S) / scale)
        second = (1.0 - drift) * m + log_ndtr(-(m - drift * S) / scale)
        return math.exp(first) + math.exp(second)

    # the integrand is unimodal with its mass below drift*S + a few scales
    split = max(abs(drift) * S, 1.0) + 10.0 * scale
    head, _ = integrate.quad(tail_weighted, 0.0, split, epsabs=0.0, epsrel=1e-11, limit=400)
    tail, _ = integrate.quad(tail_weighted, split, np.inf, epsabs=0.0, epsrel=1e-11, limit=400)
    return 1.0 + head + tail


def brownian_piterbarg(gamma: float, one_sided: bool) -> float:
    """Closed-form Piterbarg constant at alpha = 1.

    The one-sided supremum of sqrt2 B(t) - (1 + gamma) t is exponential with
    rate lam = 1 + gamma; the two-sided one is the maximum of two of them.
    """
    if gamma <= 0:
        raise DomainError("gamma", gamma, "must be positive")
    if math.isinf(gamma):
        return 1.0
    lam = 1.0 + gamma
    if one_sided:
        return lam / gamma
    return 2.0 * lam * lam / (gamma * (2.0 * lam - 1.0))


def gaussian_piterbarg(gamma: float, one_sided: bool) -> float:
    """Closed-form Piterbarg constant at alpha = 2.

    sup over t of sqrt2 t N - (1 + gamma) t^2 is N^2 / (2 (1 + gamma)),
    restricted to N > 0 in the one-sided case.
    """
    if gamma <= 0:
        raise DomainError("gamma", gamma, "must be positive")
    if math.isinf(gamma):
        return 1.0
    two_sided = math.sqrt((1.0 + gamma) / gamma)
    if one_sided:
        return 0.5 + 0.5 * two_sided
    return two_sided
