"""Validation of run configurations before any computation starts."""

import math
from typing import Any

import jsonschema
from pydantic import ValidationError as PydanticValidationError

from src.app.dto import (
    AsymptoteParams,
    CompareParams,
    ConstantParams,
    ExpansionParams,
    FbmSumParams,
    RunConfig,
    SimulateParams,
)
from src.app.exceptions import ConfigValidationError
from src.rules.schemas import RUN_CONFIG_SCHEMA


def _fail(field: str, value: Any, reason: str) -> None:
    raise ConfigValidationError(field=field, value=value, reason=reason)


def validate_alpha(value: float, field: str, upper_open: bool = False) -> float:
    """alpha must lie in (0, 2], or (0, 2) when ``upper_open``."""
    if upper_open and not 0.0 < value < 2.0:
        _fail(field, value, "must lie in (0, 2)")
    if not 0.0 < value <= 2.0:
        _fail(field, value, "must lie in (0, 2]")
    return value


def validate_positive(value: float | None, field: str) -> float | None:
    if value is not None and not value > 0:
        _fail(field, value, "must be positive")
    return value


def validate_ladder(ladder: list[float] | None, field: str) -> list[float] | None:
    """Ladders need two or more increasing positive rungs."""
    if ladder is None:
        return None
    if len(ladder) < 2:
        _fail(field, ladder, "needs at least two rungs")
    if ladder[0] <= 0 or any(b <= a for a, b in zip(ladder, ladder[1:], strict=False)):
        _fail(field, ladder, "must be positive and increasing")
    return ladder


def validate_grid_ladder(ladder: list[int], field: str = "params.grid_ladder") -> list[int]:
    for n in ladder:
        if n < 16 or n % 2:
            _fail(field, ladder, "grid sizes must be even and at least 16")
    finest = max(ladder)
    if any(finest % n for n in ladder):
        _fail(field, ladder, "every grid size must divide the finest one")
    return ladder


def _fail_from_pydantic(error: PydanticValidationError, prefix: str) -> None:
    first = error.errors()[0]
    field = prefix + ".".join(str(part) for part in first["loc"])
    _fail(field, first.get("input"), first["msg"])


def validate_document(document: dict[str, Any]) -> None:
    """Check a raw run-config document against RUN_CONFIG_SCHEMA."""
    try:
        jsonschema.validate(document, RUN_CONFIG_SCHEMA)
    except jsonschema.ValidationError as e:
        field = ".".join(str(part) for part in e.absolute_path) or "document"
        _fail(field, e.instance, e.message)


def _validate_simulate(p: SimulateParams) -> None:
    validate_alpha(p.alpha1, "params.alpha1")
    if p.alpha2 is not None:
        validate_alpha(p.alpha2, "params.alpha2")
    validate_positive(p.T, "params.T")
    if p.n < 2:
        _fail("params.n", p.n, "needs at least two cells")


def _validate_constant(p: ConstantParams) -> None:
    validate_alpha(p.alpha, "params.alpha")
    if p.alpha2 is not None:
        validate_alpha(p.alpha2, "params.alpha2")
    if math.isnan(p.gamma) or p.gamma < 0:
        _fail("params.gamma", p.gamma, "must be nonnegative")
    if p.kind in ("piterbarg", "gen-rate") and p.gamma == 0:
        _fail("params.gamma", p.gamma, "must be positive for limit constants")
    validate_positive(p.step, "params.step")
    validate_positive(p.beta, "params.beta")
    if p.reps is not None and p.reps < 100:
        _fail("params.reps", p.reps, "must be at least 100")
    validate_ladder(p.ladder, "params.ladder")
    if p.kind in ("pickands-finite", "generalized"):
        if p.S is None:
            _fail("params.S", None, f"{p.kind} needs S")
        validate_positive(p.S, "params.S")
    if p.kind == "piterbarg-finite":
        if p.S1 is None or p.S2 is None:
            _fail("params.S1", p.S1, "piterbarg-finite needs S1 and S2")
        if not p.S2 > p.S1:
            _fail("params.S2", p.S2, "must exceed S1")


def _validate_asymptote(p: AsymptoteParams) -> None:
    if p.scenario == "line":
        for name in ("rho1", "rho2", "v"):
            law = getattr(p, name)
            if law is None:
                _fail(f"params.{name}", None, "line scenarios need rho1, rho2 and v")
            validate_positive(law.coeff, f"params.{name}.coeff")
            validate_positive(law.alpha, f"params.{name}.alpha")
        validate_alpha(p.rho1.alpha, "params.rho1.alpha")
        validate_alpha(p.rho2.alpha, "params.rho2.alpha")
        if p.boundary and (p.t1 is None or p.t2 is None or p.t2 < p.t1):
            _fail("params.t1", p.t1, "boundary scenarios need t1 <= t2")
    else:
        validate_alpha(p.alpha1, "params.alpha1", upper_open=True)
        validate_alpha(p.alpha2, "params.alpha2", upper_open=True)
    for u in p.u_grid:
        validate_positive(u, "params.u_grid")


def _validate_fbm_sum(p: FbmSumParams) -> None:
    validate_alpha(p.alpha1, "params.alpha1", upper_open=True)
    validate_alpha(p.alpha2, "params.alpha2", upper_open=True)
    for u in p.u_grid:
        validate_positive(u, "params.u_grid")


def _validate_compare(p: CompareParams) -> None:
    validate_alpha(p.alpha1, "params.alpha1", upper_open=True)
    validate_alpha(p.alpha2, "params.alpha2", upper_open=True)
    for u in p.u:
        if not 0 < u < math.inf:
            _fail("params.u", p.u, "levels must be positive and finite")
    validate_grid_ladder(p.grid_ladder)
    if p.reps < 1:
        _fail("params.reps", p.reps, "must be positive")


def _validate_expansions(p: ExpansionParams) -> None:
    validate_alpha(p.alpha1, "params.alpha1")
    validate_alpha(p.alpha2, "params.alpha2")
    for delta in p.delta_ladder:
        validate_positive(delta, "params.delta_ladder")


_VALIDATORS = {
    "simulate": _validate_simulate,
    "constant": _validate_constant,
    "asymptote": _validate_asymptote,
    "fbm-sum": _validate_fbm_sum,
    "compare": _validate_compare,
    "check-expansions": _validate_expansions,
}


def validate_run_config(document: dict[str, Any]) -> RunConfig:
    """Schema check, model construction and command preconditions."""
    validate_document(document)
    try:
        config = RunConfig(**document)
    except PydanticValidationError as e:
        _fail_from_pydantic(e, "")
    try:
        params = config.typed_params()
    except PydanticValidationError as e:
        _fail_from_pydantic(e, "params.")
    _VALIDATORS[config.command](params)

    constants = config.constants
    validate_positive(constants.step, "constants.step")
    validate_ladder(constants.ladder_1d, "constants.ladder_1d")
    validate_ladder(constants.ladder_strip, "constants.ladder_strip")
    if constants.reps is not None and constants.reps < 100:
        _fail("constants.reps", constants.reps, "must be at least 100")
    return config
