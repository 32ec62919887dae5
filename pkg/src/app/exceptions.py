"""Custom exceptions for the curve-extremes toolkit."""

from typing import Any


class CurveExtremesError(Exception):
    """Base exception for the curve-extremes toolkit."""

    def __init__(
        self,
        message: str,
        error_code: str | None = None,
        details: dict[str, Any] | None = None,
    ):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)


class DomainError(CurveExtremesError):
    """Raised when a parameter lies outside an operation's domain."""

    def __init__(self, parameter: str, value: Any, reason: str):
        super().__init__(
            message=f"Parameter '{parameter}' out of domain: {reason}",
            error_code="DOMAIN_ERROR",
            details={"parameter": parameter, "value": str(value), "reason": reason},
        )


class CapacityError(CurveExtremesError):
    """Raised when an exact simulation would exceed its size limit."""

    def __init__(self, n_points: int, limit: int):
        super().__init__(
            message=f"Grid of {n_points} points exceeds the Cholesky limit of {limit}",
            error_code="CAPACITY_ERROR",
            details={"n_points": n_points, "limit": limit},
        )


class PreconditionError(CurveExtremesError):
    """Raised when an operation's precondition does not hold."""

    def __init__(self, operation: str, reason: str, **details: Any):
        super().__init__(
            message=f"Precondition of '{operation}' violated: {reason}",
            error_code="PRECONDITION_ERROR",
            details={"operation": operation, "reason": reason, **details},
        )


class ConfigValidationError(CurveExtremesError):
    """Raised when a run configuration fails validation."""

    def __init__(self, field: str, value: Any, reason: str):
        super().__init__(
            message=f"Validation failed for field '{field}': {reason}",
            error_code="CONFIG_VALIDATION_ERROR",
            details={"field": field, "value": str(value), "reason": reason},
        )


class PresetNotFoundError(CurveExtremesError):
    """Raised when a preset is not found."""

    def __init__(self, preset_id: str, available: list[str] | None = None):
        super().__init__(
            message=f"Preset {preset_id} not found",
            error_code="PRESET_NOT_FOUND",
            details={"preset_id": preset_id, "available": available or []},
        )


class ConstantUnavailableError(CurveExtremesError):
    """Raised when a constants provider cannot supply a constant."""

    def __init__(self, constant_id: str, reason: str):
        super().__init__(
            message=f"Constant {constant_id} unavailable: {reason}",
            error_code="CONSTANT_UNAVAILABLE",
            details={"constant_id": constant_id, "reason": reason},
        )


class ArtifactError(CurveExtremesError):
    """Raised when writing or reading run artifacts fails."""

    def __init__(self, operation: str, reason: str):
        super().__init__(
            message=f"Artifact operation '{operation}' failed: {reason}",
            error_code="ARTIFACT_ERROR",
            details={"operation": operation, "reason": reason},
        )


# Exit status mappings
EXCEPTION_TO_EXIT_STATUS: dict[type[CurveExtremesError], int] = {
    ConfigValidationError: 2,
    PresetNotFoundError: 2,
    DomainError: 3,
    PreconditionError: 3,
    CapacityError: 3,
    ConstantUnavailableError: 4,
    ArtifactError: 5,
}


def exit_status_for(exc: BaseException) -> int:
    """Map an exception to the process exit status."""
    if isinstance(exc, CurveExtremesError):
        return EXCEPTION_TO_EXIT_STATUS.get(type(exc), 1)
    return 1
