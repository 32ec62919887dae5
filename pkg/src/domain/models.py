"""Domain models for Gaussian field extremes."""

import math
from collections.abc import Callable, Sequence
from enum import Enum
from fractions import Fraction
from typing import Any, Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Exponent arithmetic uses rationals with this denominator bound
EXPONENT_DENOMINATOR_LIMIT = 1_000_000


def as_fraction(value: float) -> Fraction:
    """Rational form of an index, so ties between exponents are exact."""
    return Fraction(value).limit_denominator(EXPONENT_DENOMINATOR_LIMIT)


class GridSpec(BaseModel):
    """Uniform grid on [start, end]."""
    model_config = ConfigDict(frozen=True)

    start: float = Field(..., description="Left end point")
    end: float = Field(..., description="Right end point")
    n_points: int = Field(..., ge=2, description="Number of grid points")

    @model_validator(mode="after")
    def _check_bounds(self) -> "GridSpec":
        if not self.end > self.start:
            raise ValueError("end must be greater than start")
        return self

    @property
    def spacing(self) -> float:
        return (self.end - self.start) / (self.n_points - 1)

    @property
    def starts_at_zero(self) -> bool:
        return self.start == 0.0

    def points(self) -> np.ndarray:
        """Grid points; a point within rounding of zero is snapped to zero."""
        pts = self.start + self.spacing * np.arange(self.n_points)
        pts[-1] = self.end
        pts[np.abs(pts) <= 1e-12 * (self.end - self.start)] = 0.0
        return pts


class FbmPath(BaseModel):
    """One fractional Brownian motion sample path on a grid."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    grid: GridSpec = Field(..., description="Sampling grid")
    values: np.ndarray = Field(..., description="Path value at every grid point")
    alpha: float = Field(..., gt=0.0, le=2.0, description="Index alpha (twice the Hurst index)")

    @model_validator(mode="after")
    def _check_shape(self) -> "FbmPath":
        if self.values.shape != (self.grid.n_points,):
            raise ValueError("values must have one entry per grid point")
        return self

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.grid.points(), "value": self.values})


class FieldSample(BaseModel):
    """A 2-D field sampled on the product of two grids."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    s_grid: GridSpec
    t_grid: GridSpec
    values: np.ndarray = Field(..., description="Matrix of shape (n_s, n_t)")

    @model_validator(mode="after")
    def _check_shape(self) -> "FieldSample":
        if self.values.shape != (self.s_grid.n_points, self.t_grid.n_points):
            raise ValueError("values must match the two grids")
        return self

    def to_frame(self) -> pd.DataFrame:
        """Long format with columns s, t, value."""
        s, t = np.meshgrid(self.s_grid.points(), self.t_grid.points(), indexing="ij")
        return pd.DataFrame({"s": s.ravel(), "t": t.ravel(), "value": self.values.ravel()})


class RegionKind(str, Enum):
    """Region over which a functional takes its supremum."""
    INTERVAL = "interval"
    STRIP = "strip"
    HALF_STRIP = "half_strip"


class DriftKind(str, Enum):
    """Extra drift subtracted from the drifted field."""
    PICKANDS = "pickands"  # nothing beyond W
    PITERBARG = "piterbarg"  # gamma * |s|^alpha1
    GENERALIZED = "generalized"  # gamma * |s + b t|^beta


class RegionSpec(BaseModel):
    """Interval [S1, S2], strip {|s+bt| <= S, 0 <= t <= S} or half-strip."""
    model_config = ConfigDict(frozen=True)

    kind: RegionKind
    S: float | None = Field(None, description="Strip size")
    S1: float | None = Field(None, description="Interval left end")
    S2: float | None = Field(None, description="Interval right end")
    b: float = Field(0.0, description="Strip tilt")

    @classmethod
    def interval(cls, S1: float, S2: float) -> "RegionSpec":
        return cls(kind=RegionKind.INTERVAL, S1=S1, S2=S2)

    @classmethod
    def strip(cls, S: float, b: float = 0.0, one_sided: bool = False) -> "RegionSpec":
        kind = RegionKind.HALF_STRIP if one_sided else RegionKind.STRIP
        return cls(kind=kind, S=S, b=b)

    @property
    def is_planar(self) -> bool:
        return self.kind != RegionKind.INTERVAL

    @property
    def size(self) -> float:
        """Extent used to judge degeneracy: S, or S2 - S1."""
        if self.kind == RegionKind.INTERVAL:
            return float((self.S2 or 0.0) - (self.S1 or 0.0))
        return float(self.S or 0.0)

    def label(self) -> str:
        if self.kind == RegionKind.INTERVAL:
            return f"[{self.S1:g},{self.S2:g}]"
        if self.kind == RegionKind.STRIP:
            return f"strip(S={self.S:g},b={self.b:g})"
        return f"half_strip(S={self.S:g},b={self.b:g})"


class DriftSpec(BaseModel):
    """Drift parameters; gamma = inf encodes the collapsed constant."""
    model_config = ConfigDict(frozen=True)

    kind: DriftKind = DriftKind.PICKANDS
    gamma: float = Field(0.0, description="Drift weight, inf allowed")
    b: float = Field(0.0, description="Tilt of the generalized drift")
    beta: float | None = Field(None, gt=0.0, description="Exponent of the generalized drift")

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.gamma) and self.kind != DriftKind.PICKANDS


class ConstantEstimate(BaseModel):
    """Monte Carlo (or symbolic) estimate of a Pickands-type constant."""

    constant_id: str = Field(..., description="Which constant, e.g. pickands or piterbarg_hat")
    value: float = Field(..., description="Reported (extrapolated when enabled) value")
    stderr: float = Field(..., ge=0.0, description="Standard error of value")
    raw_value: float = Field(..., description="Finest-grid value without extrapolation")
    raw_stderr: float = Field(..., ge=0.0)
    alpha1: float
    alpha2: float | None = None
    gamma: float = 0.0
    b: float = 0.0
    beta: float | None = None
    region: str = Field("", description="Region label")
    S: float | None = Field(None, description="Region size of the top rung")
    step: float | None = None
    reps: int = 0
    extrapolated: bool = False
    converged: bool | None = Field(None, description="None when a ladder is too short to judge")
    method: Literal["monte-carlo", "symbolic", "closed-form", "pinned"] = "monte-carlo"

    @property
    def rel_stderr(self) -> float:
        if self.value == 0.0:
            return 0.0
        return self.stderr / abs(self.value)

    def to_row(self) -> dict[str, Any]:
        return {
            "constant_id": self.constant_id,
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "gamma": self.gamma,
            "b": self.b,
            "beta": self.beta,
            "region": self.region,
            "S": self.S,
            "step": self.step,
            "reps": self.reps,
            "value": self.value,
            "stderr": self.stderr,
            "raw_value": self.raw_value,
            "raw_stderr": self.raw_stderr,
            "extrapolated": self.extrapolated,
            "converged": self.converged,
            "method": self.method,
        }


class ConstantKind(str, Enum):
    """Constants an asymptotic formula may request."""
    PICKANDS = "pickands"
    PITERBARG = "piterbarg"
    GEN_RATE = "gen_rate"


class ConstantRequest(BaseModel):
    """A request to a constants provider."""
    model_config = ConfigDict(frozen=True)

    kind: ConstantKind
    alpha: float = Field(..., gt=0.0, le=2.0)
    gamma: float = Field(0.0, ge=0.0)
    b: float = 0.0
    one_sided: bool = False

    def key(self, decimals: int = 12) -> tuple[Any, ...]:
        """Cache key with parameters rounded to ``decimals``."""
        gamma = self.gamma if math.isinf(self.gamma) else round(self.gamma, decimals)
        return (
            self.kind.value,
            round(self.alpha, decimals),
            gamma,
            round(self.b, decimals) + 0.0,
            self.one_sided,
        )

    def label(self) -> str:
        if self.kind == ConstantKind.PICKANDS:
            return f"H_{self.alpha:g}"
        hat = "hat_" if self.one_sided else ""
        if self.kind == ConstantKind.PITERBARG:
            return f"{hat}P_{self.alpha:g}^{self.gamma:g}"
        return f"{hat}H_{self.alpha:g}^({self.gamma:g},{self.b:g})"


class PowerLaw(BaseModel):
    """Pure power w(t) = coeff * t^index near zero."""
    model_config = ConfigDict(frozen=True)

    coeff: float = Field(..., gt=0.0)
    index: float = Field(..., gt=0.0)

    @classmethod
    def from_alpha(cls, coeff: float, alpha: float) -> "PowerLaw":
        """The correlation/variance convention: index alpha/2."""
        return cls(coeff=coeff, index=alpha / 2.0)

    @property
    def alpha(self) -> float:
        return 2.0 * self.index

    @property
    def alpha_exact(self) -> Fraction:
        return 2 * as_fraction(self.index)

    def __call__(self, t: float | np.ndarray) -> float | np.ndarray:
        return self.coeff * np.power(t, self.index)

    def inverse(self, x: float | np.ndarray) -> float | np.ndarray:
        return np.power(np.asarray(x) / self.coeff, 1.0 / self.index)

    def scaled(self, factor: float) -> "PowerLaw":
        return PowerLaw(coeff=self.coeff * factor, index=self.index)


class LineScenario(BaseModel):
    """Field with maximal variance on the line s + b t = 0."""
    model_config = ConfigDict(frozen=True)

    T1: float = Field(..., ge=0.0, description="Half-width of the s range")
    T2: float = Field(..., ge=0.0, description="Half-width of the t range")
    b: float = Field(0.0, description="Tilt of the maximizing line")
    rho1: PowerLaw = Field(..., description="Correlation decay along s")
    rho2: PowerLaw = Field(..., description="Correlation decay along t")
    v: PowerLaw = Field(..., description="Variance decay off the line")
    boundary: bool = Field(False, description="Maximizing line lies on the domain boundary")
    t1: float | None = Field(None, description="Start of the boundary segment")
    t2: float | None = Field(None, description="End of the boundary segment")

    @model_validator(mode="after")
    def _check_segment(self) -> "LineScenario":
        if self.boundary:
            if self.t1 is None or self.t2 is None:
                raise ValueError("boundary scenarios need the segment bounds t1, t2")
            if self.t2 < self.t1:
                raise ValueError("t2 must not be smaller than t1")
        return self

    @property
    def segment_length(self) -> float:
        return float((self.t2 or 0.0) - (self.t1 or 0.0))


class CurveScenario(BaseModel):
    """Field with maximal variance on the curve s = f(t), t in [T1, T2]."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    T1: float
    T2: float
    f: Callable[[np.ndarray], np.ndarray]
    f_prime: Callable[[np.ndarray], np.ndarray]
    g: Callable[[np.ndarray], np.ndarray]
    rho1: PowerLaw
    rho2: PowerLaw
    v: PowerLaw
    boundary: bool = False
    g_bounds: tuple[float, float] | None = Field(None, description="Declared bounds c1 <= g <= c2")
    endpoint_exponents: tuple[float, float] = Field(
        (0.0, 0.0), description="Power behaviour of integrands at T1 and T2, used by quadrature"
    )
    label: str = "curve"

    @model_validator(mode="after")
    def _check_interval(self) -> "CurveScenario":
        if not self.T2 > self.T1:
            raise ValueError("T2 must be greater than T1")
        return self


class CaseTag(str, Enum):
    """Which asymptotic formula applies."""
    # Maximum on a line, b = 0
    LINE_PRODUCT = "line/gamma1=0"
    LINE_PITERBARG = "line/gamma1=finite"
    LINE_PITERBARG_INF = "line/gamma1=inf"
    # Maximum on a tilted line, b != 0, eta finite
    TILTED_PRODUCT = "tilted/gamma1=0"
    TILTED_GENERALIZED = "tilted/gamma1=finite"
    TILTED_INF = "tilted/gamma1=inf"
    # Maximum on a curve
    CURVE_ETA0_PRODUCT = "curve/eta=0/gamma2=0"
    CURVE_ETA0_PITERBARG = "curve/eta=0/gamma2>0"
    CURVE_ETA_FINITE_PRODUCT = "curve/eta=finite/gamma1=0"
    CURVE_ETA_FINITE_GENERALIZED = "curve/eta=finite/gamma1=finite"
    CURVE_ETA_FINITE_INF = "curve/eta=finite/gamma1=inf"
    CURVE_ETA_INF_PRODUCT = "curve/eta=inf/gamma1=0"
    CURVE_ETA_INF_PITERBARG = "curve/eta=inf/gamma1>0"
    # Sum of two fBms over the unit ball
    FBM_SUM_ROUGH = "fbm-sum/alpha1<alpha2<1"
    FBM_SUM_BROWNIAN = "fbm-sum/alpha1<alpha2=1"
    FBM_SUM_SMOOTH = "fbm-sum/alpha1<alpha2,alpha2>1"
    FBM_SUM_EQUAL_ROUGH = "fbm-sum/alpha1=alpha2<1"
    FBM_SUM_EQUAL_BROWNIAN = "fbm-sum/alpha1=alpha2=1"
    FBM_SUM_EQUAL_SMOOTH = "fbm-sum/alpha1=alpha2>1"


class AsymptoteFlag(str, Enum):
    """Non-fatal conditions attached to an asymptote."""
    NON_CONVERGED = "non_converged"
    DEGENERATE_DOMAIN = "degenerate_domain"
    QUADRATURE_UNCONVERGED = "quadrature_unconverged"


class TailAsymptote(BaseModel):
    """Asymptote K * u^p * Psi(u) of an exceedance probability."""

    case: CaseTag
    K: float = Field(..., ge=0.0, description="Prefactor")
    K_stderr: float = Field(0.0, ge=0.0, description="Propagated Monte Carlo error of K")
    p: float = Field(..., description="Power of u")
    p_exact: str = Field(..., description="p as a reduced fraction")
    flags: list[AsymptoteFlag] = Field(default_factory=list)
    constants: dict[str, float] = Field(default_factory=dict, description="Constants used, by label")

    @field_validator("flags")
    @classmethod
    def _unique_flags(cls, value: list[AsymptoteFlag]) -> list[AsymptoteFlag]:
        return sorted(set(value), key=lambda flag: flag.value)

    def evaluate(self, u: float) -> float:
        """K * u^p * Psi(u) for u > 0."""
        from src.domain.asymptotics import gaussian_tail

        if math.isinf(u):
            return 0.0
        if u <= 0:
            raise ValueError("asymptotes are evaluated at u > 0")
        return float(self.K * u**self.p * gaussian_tail(u))

    def log_evaluate(self, u: float) -> float:
        """log of evaluate(u), stable for large u."""
        from scipy.special import log_ndtr

        if u <= 0:
            raise ValueError("asymptotes are evaluated at u > 0")
        if self.K == 0.0:
            return -math.inf
        return float(math.log(self.K) + self.p * math.log(u) + log_ndtr(-u))

    def evaluate_table(self, u_grid: Sequence[float]) -> pd.DataFrame:
        rows = []
        for u in u_grid:
            value = self.evaluate(u)
            rel = self.K_stderr / self.K if self.K > 0 else 0.0
            rows.append(
                {
                    "u": u,
                    "asymptote": value,
                    "log_asymptote": self.log_evaluate(u) if not math.isinf(u) else -math.inf,
                    "lower": value * max(1.0 - 2.0 * rel, 0.0),
                    "upper": value * (1.0 + 2.0 * rel),
                }
            )
        return pd.DataFrame(rows, columns=["u", "asymptote", "log_asymptote", "lower", "upper"])

    def to_row(self) -> dict[str, Any]:
        return {
            "case": self.case.value,
            "K": self.K,
            "K_stderr": self.K_stderr,
            "p": self.p,
            "p_exact": self.p_exact,
            "flags": ";".join(flag.value for flag in self.flags),
        }


class SupTailEstimate(BaseModel):
    """Plain Monte Carlo estimate of P(sup > u)."""

    u: float
    p_hat: float = Field(..., ge=0.0, le=1.0)
    stderr: float = Field(..., ge=0.0)
    grid_n: int = Field(..., description="Cells per axis")
    reps: int
    weak: bool = Field(False, description="Fewer than ten expected exceedances")


class ExpansionReport(BaseModel):
    """Maximum error of a local expansion along a ladder of distances."""

    name: str
    delta_ladder: list[float]
    max_rel_err: list[float]
    n_points: int = 0

    @model_validator(mode="after")
    def _check_lengths(self) -> "ExpansionReport":
        if len(self.delta_ladder) != len(self.max_rel_err):
            raise ValueError("one error per delta is required")
        return self

    @property
    def decreasing(self) -> bool:
        return all(b <= a for a, b in zip(self.max_rel_err, self.max_rel_err[1:], strict=False))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "expansion": [self.name] * len(self.delta_ladder),
                "delta": self.delta_ladder,
                "max_rel_err": self.max_rel_err,
            }
        )


class ComparisonRow(BaseModel):
    """One (u, grid) row of a Monte Carlo versus asymptote comparison."""

    u: float
    grid_n: int
    p_hat: float
    stderr: float
    asymptote: float
    ratio: float
    ratio_stderr: float
    weak: bool = False
    trend_flag: bool = Field(False, description="|ratio - 1| grew with u beyond the combined error")


class ComparisonTable(BaseModel):
    """Comparison of simulated exceedance probabilities with an asymptote."""

    alpha1: float
    alpha2: float
    case: CaseTag
    rows: list[ComparisonRow]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.model_dump() for row in self.rows])


class PipelineRun(BaseModel):
    """State of one command execution."""

    command: str
    status: Literal["pending", "running", "completed", "failed"] = Field(
        default="pending", description="Run status"
    )
    current_step: str | None = Field(None, description="Current pipeline step")
    run_dir: str | None = None
    artifacts: list[str] = Field(default_factory=list)
    warnings: list[str] = Field(default_factory=list)
    error_message: str | None = None
    exit_status: int = 0
