"""Conversion of exceptions into error records and exit statuses."""

import json
import sys
from pathlib import Path
from typing import Any, TextIO

import structlog

from src.adapters.storage import ArtifactStore
from src.app.exceptions import CurveExtremesError, exit_status_for

logger = structlog.get_logger(__name__)


def error_record(exc: BaseException) -> dict[str, Any]:
    """Machine-readable {"message", "error_code", "details"} record."""
    if isinstance(exc, CurveExtremesError):
        return {"message": exc.message, "error_code": exc.error_code, "details": exc.details}
    return {
        "message": str(exc) or type(exc).__name__,
        "error_code": "INTERNAL_ERROR",
        "details": {"type": type(exc).__name__},
    }


def handle_cli_error(
    exc: BaseException,
    run_dir: Path | None = None,
    store: ArtifactStore | None = None,
    stream: TextIO | None = None,
) -> int:
    """Report ``exc`` on stderr (and in the run directory) and return the exit status."""
    record = error_record(exc)
    status = exit_status_for(exc)
    if isinstance(exc, CurveExtremesError):
        logger.error(
            "run failed",
            error_code=exc.error_code,
            message=exc.message,
            details=exc.details,
            exit_status=status,
        )
    else:
        logger.exception("unexpected error", exit_status=status)

    out = stream or sys.stderr
    out.write(json.dumps(record, default=str) + "\n")
    if run_dir is not None and store is not None:
        store.write_error(run_dir, record)
    return status
