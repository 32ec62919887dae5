"""Exact tail asymptotics K * u^p * Psi(u) for Gaussian fields maximal on a line or curve.

Local structure is given by pure powers: 1 - r ~ rho1^2(|ds|) + rho2^2(|dt|)
and 1 - sigma ~ v^2(distance to the maximizing set). Which formula applies is
decided symbolically by comparing power indices, and only on ties by the
coefficients.
"""

import math
from collections.abc import Callable
from fractions import Fraction

import numpy as np
import structlog
from scipy import special

from src.app.exceptions import DomainError, PreconditionError
from src.domain.models import (
    AsymptoteFlag,
    CaseTag,
    ConstantEstimate,
    ConstantKind,
    ConstantRequest,
    CurveScenario,
    LineScenario,
    PowerLaw,
    TailAsymptote,
    as_fraction,
)
from src.domain.quadrature import fixed_rule_integral, gauss_legendre_integral, reference_integral
from src.domain.services import ConstantsProvider
from src.infra.config import get_settings

logger = structlog.get_logger(__name__)

CONDITION_F_POINTS = 257
MIN_ABS_F_PRIME = 1e-9
# node cap for integrands whose constants are simulated
MC_MAX_NODES = 256

_LINE_TAGS = {
    "product": (CaseTag.LINE_PRODUCT, CaseTag.TILTED_PRODUCT),
    "finite": (CaseTag.LINE_PITERBARG, CaseTag.TILTED_GENERALIZED),
    "inf": (CaseTag.LINE_PITERBARG_INF, CaseTag.TILTED_INF),
}


def gaussian_tail(u: float | np.ndarray) -> float | np.ndarray:
    """Psi(u) = 1 - Phi(u)."""
    value = 0.5 * special.erfc(np.asarray(u, dtype=float) / math.sqrt(2.0))
    return float(value) if value.ndim == 0 else value


def limit_ratio(num: PowerLaw, den: PowerLaw) -> float:
    """lim_{t -> 0} num(t)^2 / den(t)^2, decided on exact indices."""
    a, b = as_fraction(num.index), as_fraction(den.index)
    if a > b:
        return 0.0
    if a < b:
        return math.inf
    return (num.coeff / den.coeff) ** 2


def _inverse_exponent(law: PowerLaw) -> Fraction:
    """2 / alpha of a power law, exactly."""
    return 1 / as_fraction(law.index)


def _coeff_factor(law: PowerLaw) -> float:
    """u-free part of 1 / inverse(1/u): coeff^(2/alpha)."""
    return law.coeff ** (1.0 / law.index)


def _regime(value: float) -> str:
    if value == 0.0:
        return "product"
    return "inf" if math.isinf(value) else "finite"


class _Prefactor:
    """Accumulates the factors of K and the constants they use."""

    def __init__(self, provider: ConstantsProvider):
        self.provider = provider
        self.value = 1.0
        self.rel_var = 0.0
        self.counts: dict[str, int] = {}
        self.estimates: dict[str, ConstantEstimate] = {}
        self.flags: set[AsymptoteFlag] = set()

    def times(self, factor: float) -> "_Prefactor":
        self.value *= factor
        return self

    def constant(self, request: ConstantRequest) -> "_Prefactor":
        estimate = self.provider.get(request)
        label = request.label()
        self.counts[label] = self.counts.get(label, 0) + 1
        self.estimates[label] = estimate
        if estimate.converged is False:
            self.flags.add(AsymptoteFlag.NON_CONVERGED)
        return self.times(estimate.value)

    def integral(self, value: float, stderr: float, converged: bool) -> "_Prefactor":
        if not converged:
            self.flags.add(AsymptoteFlag.QUADRATURE_UNCONVERGED)
        if value != 0.0:
            self.rel_var += (stderr / abs(value)) ** 2
        return self.times(value)

    def finish(self, case: CaseTag, p: Fraction) -> TailAsymptote:
        # identical constants enter as powers, so their errors add linearly
        rel_var = self.rel_var + sum(
            (count * self.estimates[label].rel_stderr) ** 2 for label, count in self.counts.items()
        )
        K = max(self.value, 0.0)
        asymptote = TailAsymptote(
            case=case,
            K=K,
            K_stderr=K * math.sqrt(rel_var),
            p=float(p),
            p_exact=str(p),
            flags=list(self.flags),
            constants={label: est.value for label, est in self.estimates.items()},
        )
        logger.info(
            "asymptote assembled",
            case=case.value,
            K=asymptote.K,
            K_stderr=asymptote.K_stderr,
            p=asymptote.p_exact,
            flags=[flag.value for flag in asymptote.flags],
        )
        return asymptote


def _pickands(alpha: float) -> ConstantRequest:
    return ConstantRequest(kind=ConstantKind.PICKANDS, alpha=alpha)


def _piterbarg(alpha: float, gamma: float, one_sided: bool) -> ConstantRequest:
    return ConstantRequest(kind=ConstantKind.PITERBARG, alpha=alpha, gamma=gamma, one_sided=one_sided)


def _gen_rate(alpha: float, gamma: float, b: float, one_sided: bool) -> ConstantRequest:
    return ConstantRequest(kind=ConstantKind.GEN_RATE, alpha=alpha, gamma=gamma, b=b, one_sided=one_sided)


# ---------------------------------------------------------------------------
# Maximum on a line
# ---------------------------------------------------------------------------


def canonical_line_scenario(scn: LineScenario) -> LineScenario:
    """Rewrite a tilted scenario with eta = 0 or eta = inf in untilted form."""
    if scn.b == 0.0:
        return scn
    b = abs(scn.b)
    eta = limit_ratio(scn.rho2, scn.rho1)
    if eta == 0.0:
        # walk along the line in s; the transversal coordinate is s + b t
        rho1 = PowerLaw(coeff=scn.rho2.coeff * b ** (-scn.rho2.index), index=scn.rho2.index)
        return scn.model_copy(
            update={"rho1": rho1, "rho2": scn.rho1, "b": 0.0, "T2": min(scn.T1, b * scn.T2)}
        )
    if math.isinf(eta):
        return scn.model_copy(update={"b": 0.0, "T2": min(scn.T1 / b, scn.T2)})
    return scn


def classify_line(scn: LineScenario) -> CaseTag:
    canonical = canonical_line_scenario(scn)
    gamma1 = limit_ratio(canonical.v, canonical.rho1)
    untilted, tilted = _LINE_TAGS[_regime(gamma1)]
    return untilted if canonical.b == 0.0 else tilted


def _line_length(scn: LineScenario) -> float:
    if scn.boundary:
        return scn.segment_length
    if scn.b == 0.0:
        return 2.0 * scn.T2
    return 2.0 * min(scn.T2, scn.T1 / abs(scn.b))


def line_asymptote(scn: LineScenario, provider: ConstantsProvider) -> TailAsymptote:
    """Asymptote of P(sup X > u) when the variance is maximal on s + b t = 0."""
    tag = classify_line(scn)
    c = canonical_line_scenario(scn)
    a1, a2, beta = c.rho1.alpha, c.rho2.alpha, c.v.alpha
    length = _line_length(c)

    if tag in (CaseTag.LINE_PRODUCT, CaseTag.TILTED_PRODUCT):
        p = _inverse_exponent(c.rho1) + _inverse_exponent(c.rho2) - _inverse_exponent(c.v)
    else:
        p = _inverse_exponent(c.rho2)

    pre = _Prefactor(provider)
    if length <= 0.0:
        logger.warning("maximizing line has zero length", case=tag.value, length=length)
        pre.flags.add(AsymptoteFlag.DEGENERATE_DOMAIN)
        return pre.times(0.0).finish(tag, p)

    if tag in (CaseTag.LINE_PRODUCT, CaseTag.TILTED_PRODUCT):
        gamma_factor = special.gamma(1.0 / beta + 1.0) * (0.5 if c.boundary else 1.0)
        pre.times(2.0 * length * gamma_factor)
        pre.constant(_pickands(a1)).constant(_pickands(a2))
        pre.times(_coeff_factor(c.rho1) * _coeff_factor(c.rho2) / _coeff_factor(c.v))
        return pre.finish(tag, p)

    gamma1 = limit_ratio(c.v, c.rho1)
    pre.times(length * _coeff_factor(c.rho2))
    if tag == CaseTag.LINE_PITERBARG:
        pre.constant(_pickands(a2)).constant(_piterbarg(a1, gamma1, c.boundary))
    elif tag == CaseTag.LINE_PITERBARG_INF:
        pre.constant(_pickands(a2))
    elif tag == CaseTag.TILTED_GENERALIZED:
        eta = limit_ratio(c.rho2, c.rho1)
        pre.constant(_gen_rate(a1, gamma1, c.b * eta ** (-1.0 / a1), c.boundary))
    else:
        eta = limit_ratio(c.rho2, c.rho1)
        pre.times((abs(c.b) ** a1 / eta + 1.0) ** (1.0 / a1))
        pre.constant(_pickands(a1))
    return pre.finish(tag, p)


def reduce_matrix_model(
    A: np.ndarray,
    B: np.ndarray,
    rho1: PowerLaw,
    rho2: PowerLaw,
    v1: PowerLaw,
    v2: PowerLaw,
    T1: float,
    T2: float,
) -> LineScenario:
    """Canonical line scenario of the model 1 - r ~ rho1^2(|a1.d|) + rho2^2(|a2.d|),
    1 - sigma ~ v1^2(|b1.x|) + v2^2(|b2.x|), in the coordinates A x.

    ``T1`` and ``T2`` bound the transformed rectangle.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != (2, 2) or B.shape != (2, 2):
        raise DomainError("A", A.shape, "A and B must be 2x2")
    if np.linalg.matrix_rank(A) < 2:
        raise DomainError("A", A.tolist(), "rank(A) = 1 is not supported")
    if not np.any(B):
        raise DomainError("B", B.tolist(), "B must be nonzero")
    if np.linalg.matrix_rank(B) != 1:
        raise DomainError("B", B.tolist(), "variance must be maximal on a line, so det(B) = 0")

    C = B @ np.linalg.inv(A)
    if C[0, 0] == 0.0:
        C = C[::-1]
        v1, v2 = v2, v1
    b = float(C[0, 1] / C[0, 0])
    terms = [(as_fraction(v1.index), abs(C[0, 0]) ** v1.alpha * v1.coeff**2)]
    if C[1, 0] != 0.0:
        terms.append((as_fraction(v2.index), abs(C[1, 0]) ** v2.alpha * v2.coeff**2))
    index = min(term[0] for term in terms)
    coeff_sq = sum(weight for term_index, weight in terms if term_index == index)
    v = PowerLaw(coeff=math.sqrt(coeff_sq), index=float(index))
    return LineScenario(T1=T1, T2=T2, b=b, rho1=rho1, rho2=rho2, v=v)


# ---------------------------------------------------------------------------
# Maximum on a curve
# ---------------------------------------------------------------------------


def check_condition_f(scn: CurveScenario) -> None:
    """Raise PreconditionError unless inf |f'| > 0 and g is positive and bounded."""
    t = scn.T1 + (scn.T2 - scn.T1) * np.arange(1, CONDITION_F_POINTS + 1) / (CONDITION_F_POINTS + 1)
    f_prime = np.abs(np.asarray(scn.f_prime(t), dtype=float))
    g = np.asarray(scn.g(t), dtype=float)
    if not np.all(np.isfinite(f_prime)) or f_prime.min() < MIN_ABS_F_PRIME:
        raise PreconditionError(
            "curve_asymptote",
            "condition F: |f'| vanishes on the curve",
            min_abs_f_prime=float(np.nanmin(f_prime)),
        )
    if not np.all(np.isfinite(g)) or g.min() <= 0.0:
        raise PreconditionError("curve_asymptote", "condition F: g must be finite and positive")
    if scn.g_bounds is not None:
        lower, upper = scn.g_bounds
        slack = 1e-12 * max(1.0, abs(upper))
        if g.min() < lower - slack or g.max() > upper + slack:
            raise PreconditionError(
                "curve_asymptote",
                "condition F: g leaves its declared bounds",
                g_min=float(g.min()),
                g_max=float(g.max()),
            )


def _integrate(
    scn: CurveScenario, func: Callable[[np.ndarray], np.ndarray], tol: float
) -> tuple[float, float, bool]:
    result = gauss_legendre_integral(
        func, scn.T1, scn.T2, tol=tol, endpoint_exponents=scn.endpoint_exponents
    )
    return result.value, 0.0, result.converged


def _integrate_constants(
    scn: CurveScenario,
    provider: ConstantsProvider,
    request_at: Callable[[float], ConstantRequest],
    weight: Callable[[np.ndarray], np.ndarray],
    quad_tol: float,
) -> tuple[float, float, bool]:
    """Integral of weight(t) * C(t), with C(t) supplied per node by the provider."""

    def node_estimates(t: np.ndarray) -> list[ConstantEstimate]:
        return [provider.get(request_at(float(x))) for x in np.atleast_1d(t)]

    def values(t: np.ndarray) -> np.ndarray:
        return np.asarray(weight(t), dtype=float) * np.array([e.value for e in node_estimates(t)])

    def stderrs(t: np.ndarray) -> np.ndarray:
        return np.abs(np.asarray(weight(t), dtype=float)) * np.array([e.stderr for e in node_estimates(t)])

    probe = provider.get(request_at(0.5 * (scn.T1 + scn.T2)))
    tol = max(quad_tol, probe.rel_stderr)
    max_nodes = MC_MAX_NODES if probe.stderr > 0 else 4096
    result = gauss_legendre_integral(
        values,
        scn.T1,
        scn.T2,
        tol=tol,
        endpoint_exponents=scn.endpoint_exponents,
        max_nodes=max_nodes,
    )
    stderr = fixed_rule_integral(stderrs, scn.T1, scn.T2, result.n_nodes, scn.endpoint_exponents)
    converged = result.converged and probe.converged is not False
    return result.value, stderr, converged


def curve_asymptote(
    scn: CurveScenario,
    provider: ConstantsProvider,
    quad_tol: float | None = None,
) -> TailAsymptote:
    """Asymptote of P(sup X > u) when the variance is maximal on s = f(t), t in [T1, T2]."""
    check_condition_f(scn)
    tol = get_settings().quad_tol if quad_tol is None else quad_tol
    a1, a2, beta = scn.rho1.alpha, scn.rho2.alpha, scn.v.alpha
    eta = limit_ratio(scn.rho2, scn.rho1)
    gamma1 = limit_ratio(scn.v, scn.rho1)
    gamma2 = limit_ratio(scn.v, scn.rho2)
    hat = scn.boundary
    pre = _Prefactor(provider)

    def f_prime_abs(t: np.ndarray) -> np.ndarray:
        return np.abs(scn.f_prime(t))

    def unit(t: np.ndarray) -> np.ndarray:
        return np.ones_like(np.asarray(t, dtype=float))

    product = (eta == 0.0 and gamma2 == 0.0) or (eta > 0.0 and gamma1 == 0.0)
    if product:
        tag = {
            "product": CaseTag.CURVE_ETA0_PRODUCT,
            "finite": CaseTag.CURVE_ETA_FINITE_PRODUCT,
            "inf": CaseTag.CURVE_ETA_INF_PRODUCT,
        }[_regime(eta)]
        p = _inverse_exponent(scn.rho1) + _inverse_exponent(scn.rho2) - _inverse_exponent(scn.v)
        gamma_factor = special.gamma(1.0 / beta + 1.0) * (0.5 if hat else 1.0)
        pre.integral(*_integrate(scn, lambda t: 1.0 / np.asarray(scn.g(t), dtype=float), tol))
        pre.times(2.0 * gamma_factor)
        pre.constant(_pickands(a1)).constant(_pickands(a2))
        pre.times(_coeff_factor(scn.rho1) * _coeff_factor(scn.rho2) / _coeff_factor(scn.v))
        return pre.finish(tag, p)

    if eta == 0.0:
        tag = CaseTag.CURVE_ETA0_PITERBARG
        p = _inverse_exponent(scn.rho1)
        if math.isinf(gamma2):
            pre.integral(*_integrate(scn, f_prime_abs, tol))
        else:
            pre.integral(
                *_integrate_constants(
                    scn,
                    provider,
                    lambda t: _piterbarg(
                        a2, gamma2 * abs(float(scn.f_prime(t)) * float(scn.g(t))) ** a2, hat
                    ),
                    f_prime_abs,
                    tol,
                )
            )
        pre.constant(_pickands(a1)).times(_coeff_factor(scn.rho1))
        return pre.finish(tag, p)

    p = _inverse_exponent(scn.rho2)
    if math.isinf(eta):
        tag = CaseTag.CURVE_ETA_INF_PITERBARG
        if math.isinf(gamma1):
            pre.times(scn.T2 - scn.T1)
        else:
            pre.integral(
                *_integrate_constants(
                    scn,
                    provider,
                    lambda t: _piterbarg(a1, gamma1 * float(scn.g(t)) ** beta, hat),
                    unit,
                    tol,
                )
            )
        pre.constant(_pickands(a2)).times(_coeff_factor(scn.rho2))
        return pre.finish(tag, p)

    if math.isinf(gamma1):
        tag = CaseTag.CURVE_ETA_FINITE_INF
        pre.integral(
            *_integrate(
                scn, lambda t: (np.abs(scn.f_prime(t)) ** a1 / eta + 1.0) ** (1.0 / a1), tol
            )
        )
        pre.constant(_pickands(a1)).times(_coeff_factor(scn.rho2))
        return pre.finish(tag, p)

    tag = CaseTag.CURVE_ETA_FINITE_GENERALIZED
    tilt = eta ** (-1.0 / a1)
    pre.integral(
        *_integrate_constants(
            scn,
            provider,
            lambda t: _gen_rate(
                a1, gamma1 * float(scn.g(t)) ** a1, -tilt * abs(float(scn.f_prime(t))), hat
            ),
            unit,
            tol,
        )
    )
    pre.times(_coeff_factor(scn.rho2))
    return pre.finish(tag, p)


# ---------------------------------------------------------------------------
# Sum of two independent fBms over |s|^a1 + |t|^a2 <= 1
# ---------------------------------------------------------------------------


def beta_reduced_integral(a: float, b: float, weighted: bool = False) -> float:
    """int_0^1 (1 - t^a)^(b - 1) dt = B(1/a, b) / a.

    With ``weighted`` the integrand carries t^(a - 1) and the value is 1/(a b).
    """
    if not a > 0:
        raise DomainError("a", a, "must be positive")
    if not b > 0:
        raise DomainError("b", b, "exponent b - 1 must exceed -1")
    if weighted:
        return 1.0 / (a * b)
    return float(special.beta(1.0 / a, b) / a)


def beta_reduced_reference(a: float, b: float, weighted: bool = False) -> float:
    """beta_reduced_integral by adaptive quadrature with algebraic end point weights."""
    if not (a > 0 and b > 0):
        raise DomainError("b", b, "exponents must give an integrable integrand")

    def smooth_part(t: float) -> float:
        # (1 - t^a) / (1 - t) stays bounded away from zero on [0, 1]
        ratio = -math.expm1(a * math.log(t)) / (1.0 - t) if 0.0 < t < 1.0 else (a if t == 1.0 else 1.0)
        return ratio ** (b - 1.0)

    left = a - 1.0 if weighted else 0.0
    return reference_integral(smooth_part, 0.0, 1.0, weight="alg", wvar=(left, b - 1.0)).value


def _check_fbm_alpha(alpha: float, name: str) -> None:
    if not 0.0 < alpha < 2.0:
        raise DomainError(name, alpha, "fBm-sum asymptotics need alpha in (0, 2)")


def _equal_smooth_integrand(alpha: float) -> Callable[[np.ndarray], np.ndarray]:
    def integrand(t: np.ndarray) -> np.ndarray:
        gap = -np.expm1(alpha * np.log(t))  # 1 - t^alpha
        return (1.0 + t ** (alpha * (alpha - 1.0)) * gap ** (1.0 - alpha)) ** (1.0 / alpha)

    return integrand


def _cross_checked_beta(a: float, b: float, weighted: bool = False) -> float:
    exact = beta_reduced_integral(a, b, weighted)
    reference = beta_reduced_reference(a, b, weighted)
    if abs(reference - exact) > 1e-8 * abs(exact):
        logger.warning("beta reduction disagrees with quadrature", a=a, b=b, exact=exact, reference=reference)
    return exact


def fbm_sum_asymptote(alpha1: float, alpha2: float, provider: ConstantsProvider) -> TailAsymptote:
    """Asymptote of P(sup B1(s) + B2(t) > u) over {|s|^a1 + |t|^a2 <= 1}."""
    _check_fbm_alpha(alpha1, "alpha1")
    _check_fbm_alpha(alpha2, "alpha2")
    if alpha1 > alpha2:
        alpha1, alpha2 = alpha2, alpha1
    i1, i2 = 2 / as_fraction(alpha1), 2 / as_fraction(alpha2)
    pre = _Prefactor(provider)

    if as_fraction(alpha1) == as_fraction(alpha2):
        alpha = alpha1
        if alpha < 1.0:
            pre.times(2.0 ** (3.0 - 2.0 / alpha) / alpha * _cross_checked_beta(alpha, 1.0 / alpha))
            pre.constant(_pickands(alpha)).constant(_pickands(alpha))
            return pre.finish(CaseTag.FBM_SUM_EQUAL_ROUGH, 2 * i1 - 2)
        if alpha == 1.0:
            pre.times(2.0).constant(_gen_rate(1.0, 1.0, -1.0, True))
            return pre.finish(CaseTag.FBM_SUM_EQUAL_BROWNIAN, Fraction(2))
        result = gauss_legendre_integral(
            _equal_smooth_integrand(alpha),
            0.0,
            1.0,
            tol=get_settings().quad_tol,
            endpoint_exponents=(alpha * (alpha - 1.0), 1.0 / alpha - 1.0),
        )
        pre.integral(result.value, 0.0, result.converged)
        pre.times(2.0 ** (2.0 - 1.0 / alpha)).constant(_pickands(alpha))
        return pre.finish(CaseTag.FBM_SUM_EQUAL_SMOOTH, i1)

    if alpha2 < 1.0:
        pre.times(
            2.0 ** (3.0 - 1.0 / alpha1 - 1.0 / alpha2)
            / alpha1
            * _cross_checked_beta(alpha2, 1.0 / alpha1)
        )
        pre.constant(_pickands(alpha1)).constant(_pickands(alpha2))
        return pre.finish(CaseTag.FBM_SUM_ROUGH, i1 + i2 - 2)
    if alpha2 == 1.0:
        pre.times(2.0 ** (3.0 - 1.0 / alpha1)).constant(_pickands(alpha1))
        return pre.finish(CaseTag.FBM_SUM_BROWNIAN, i1)
    weighted = _cross_checked_beta(alpha2, 1.0 / alpha1, weighted=True)
    pre.times(2.0 ** (2.0 - 1.0 / alpha1) * alpha2 / alpha1 * weighted)
    pre.constant(_pickands(alpha1))
    return pre.finish(CaseTag.FBM_SUM_SMOOTH, i1)


def fbm_sum_curve_scenario(alpha1: float, alpha2: float, piece: int = 1) -> CurveScenario:
    """Boundary curve of the fBm-sum field, written as s = f(t) for t in [0, 1].

    Piece 1 is the arc s = (1 - t^a2)^(1/a1); piece 2 exchanges the coordinates.
    """
    _check_fbm_alpha(alpha1, "alpha1")
    _check_fbm_alpha(alpha2, "alpha2")
    if piece not in (1, 2):
        raise DomainError("piece", piece, "must be 1 or 2")
    a, c = (alpha1, alpha2) if piece == 1 else (alpha2, alpha1)

    def gap(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return -np.expm1(c * np.log(t))  # 1 - t^c

    def f(t: np.ndarray) -> np.ndarray:
        return gap(t) ** (1.0 / a)

    def f_prime(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return -(c / a) * t ** (c - 1.0) * gap(t) ** (1.0 / a - 1.0)

    def g(t: np.ndarray) -> np.ndarray:
        return (a / 2.0) * gap(t) ** (1.0 - 1.0 / a)

    if c > 1.0:
        left = c - 1.0
    elif c == 1.0:
        left = 0.0
    else:
        left = c
    scale = 2.0 ** -0.5
    return CurveScenario(
        T1=0.0,
        T2=1.0,
        f=f,
        f_prime=f_prime,
        g=g,
        rho1=PowerLaw.from_alpha(scale, a),
        rho2=PowerLaw.from_alpha(scale, c),
        v=PowerLaw(coeff=1.0, index=0.5),
        boundary=True,
        endpoint_exponents=(left, 1.0 / a - 1.0),
        label=f"fbm-sum piece {piece} (alpha1={alpha1:g}, alpha2={alpha2:g})",
    )
