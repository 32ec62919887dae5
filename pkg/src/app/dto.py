"""Data Transfer Objects for run configuration."""

import math
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

Command = Literal["simulate", "constant", "asymptote", "fbm-sum", "compare", "check-expansions"]


class PowerLawConfig(BaseModel):
    """coeff * t^(alpha/2)."""
    model_config = ConfigDict(extra="forbid")

    coeff: float = Field(1.0, description="Coefficient")
    alpha: float = Field(..., description="Index alpha")


class ConstantsConfig(BaseModel):
    """Which constants provider the asymptotes use."""
    model_config = ConfigDict(extra="forbid")

    provider: Literal["mc", "pinned"] = Field("mc", description="Monte Carlo or pinned table")
    pinned: dict[str, float] = Field(default_factory=dict, description="Pinned values by label")
    closed_forms: bool = Field(True, description="Use exactly known constants when available")
    step: float | None = Field(None, description="Grid step of the Monte Carlo functionals")
    reps: int | None = Field(None, description="Replications per constant")
    ladder_1d: list[float] | None = None
    ladder_strip: list[float] | None = None
    extrapolate: bool = True


class SimulateParams(BaseModel):
    """Exact sample of an fBm path or a 2-D field."""
    model_config = ConfigDict(extra="forbid")

    target: Literal["fbm", "w-field", "fbm-sum-field"] = "fbm"
    alpha1: float = 1.0
    alpha2: float | None = Field(None, description="Second index, defaults to alpha1")
    T: float = Field(1.0, description="Grid end point; fbm-sum fields use [-T, T]")
    n: int = Field(256, description="Grid cells per axis")
    paths: int = Field(1, description="Number of fBm paths")


class ConstantParams(BaseModel):
    """One constant or finite functional."""
    model_config = ConfigDict(extra="forbid")

    kind: Literal[
        "pickands", "pickands-finite", "piterbarg", "piterbarg-finite", "gen-rate", "generalized"
    ] = "pickands"
    alpha: float = 1.0
    alpha2: float | None = Field(None, description="Second index of the generalized functional")
    gamma: float = 1.0
    b: float = 0.0
    beta: float | None = Field(None, description="Drift exponent, defaults to alpha")
    S: float | None = None
    S1: float | None = None
    S2: float | None = None
    ladder: list[float] | None = None
    one_sided: bool = False
    step: float | None = None
    reps: int | None = None
    extrapolate: bool = True

    @field_validator("gamma", mode="before")
    @classmethod
    def _parse_gamma(cls, value: Any) -> Any:
        if isinstance(value, str) and value.strip().lower() in ("inf", "infinity"):
            return math.inf
        return value


class AsymptoteParams(BaseModel):
    """A line scenario or an fBm-sum instance."""
    model_config = ConfigDict(extra="forbid")

    scenario: Literal["line", "fbm-sum", "fbm-sum-curve"] = "line"
    # line
    T1: float = 1.0
    T2: float = 1.0
    b: float = 0.0
    rho1: PowerLawConfig | None = None
    rho2: PowerLawConfig | None = None
    v: PowerLawConfig | None = None
    boundary: bool = False
    t1: float | None = None
    t2: float | None = None
    # fBm sum
    alpha1: float = 1.0
    alpha2: float = 1.0
    piece: int = 1
    u_grid: list[float] = Field(default_factory=lambda: [2.5, 3.0, 3.5, 4.0, 5.0])


class FbmSumParams(BaseModel):
    """Asymptote of the fBm sum, optionally checked against its curve form."""
    model_config = ConfigDict(extra="forbid")

    alpha1: float = 1.0
    alpha2: float = 1.0
    u_grid: list[float] = Field(default_factory=lambda: [2.5, 3.0, 3.5, 4.0, 5.0])
    cross_check: bool = Field(True, description="Compare with 4x the boundary-curve asymptote")


class CompareParams(BaseModel):
    """Monte Carlo exceedance probabilities against the asymptote."""
    model_config = ConfigDict(extra="forbid")

    alpha1: float = 1.0
    alpha2: float = 1.0
    u: list[float] = Field(default_factory=lambda: [2.5, 3.0, 3.5])
    grid_ladder: list[int] = Field(default_factory=lambda: [100, 200, 400])
    reps: int = 200_000


class ExpansionParams(BaseModel):
    """Local expansions of the fBm-sum variance and correlation."""
    model_config = ConfigDict(extra="forbid")

    alpha1: float = 1.0
    alpha2: float = 1.0
    delta_ladder: list[float] = Field(default_factory=lambda: [1e-2, 1e-3, 1e-4])
    n_points: int = Field(64, description="Low-discrepancy sample size")


PARAMS_BY_COMMAND: dict[str, type[BaseModel]] = {
    "simulate": SimulateParams,
    "constant": ConstantParams,
    "asymptote": AsymptoteParams,
    "fbm-sum": FbmSumParams,
    "compare": CompareParams,
    "check-expansions": ExpansionParams,
}


class RunConfig(BaseModel):
    """Fully resolved configuration of one command."""
    model_config = ConfigDict(extra="forbid")

    command: Command
    seed: int = Field(0, ge=0, description="Root seed")
    output_dir: str | None = Field(None, description="Parent of the run directory")
    run_dir: str | None = Field(None, description="Exact run directory")
    threads: int | Literal["auto"] | None = Field(None, description="Worker threads")
    plot: bool = False
    preset: str | None = None
    params: dict[str, Any] = Field(default_factory=dict)
    constants: ConstantsConfig = Field(default_factory=ConstantsConfig)

    def typed_params(self) -> BaseModel:
        """params parsed with the model of this command."""
        return PARAMS_BY_COMMAND[self.command](**self.params)

    def to_document(self) -> dict[str, Any]:
        """Plain document that reproduces this run."""
        document = self.model_dump(exclude_none=True)
        document["params"] = self.typed_params().model_dump(exclude_none=True)
        return _json_safe(document)


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, dict):
        return {key: _json_safe(item) for key, item in value.items()}
    if isinstance(value, list):
        return [_json_safe(item) for item in value]
    return value
