"""Artifact storage for run outputs on the local filesystem."""

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import pandas as pd
import structlog
import yaml

from src.app.exceptions import ArtifactError

UTC = timezone.utc

logger = structlog.get_logger(__name__)

MANIFEST_NAME = "manifest.yaml"
ERROR_NAME = "error.json"
CSV_FLOAT_FORMAT = "%.10g"


class ArtifactStore:
    """Writes CSV, SVG, manifest and error artifacts under one output directory."""

    def __init__(self, output_dir: str | Path):
        self.output_dir = Path(output_dir)

    def create_run_dir(self, command: str, seed: int, run_dir: str | Path | None = None) -> Path:
        """Fresh ``<command>-<timestamp>-<seed>`` directory, or ``run_dir`` when given."""
        try:
            if run_dir is not None:
                path = Path(run_dir)
                path.mkdir(parents=True, exist_ok=True)
                return path
            stamp = datetime.now(UTC).strftime("%Y%m%dT%H%M%S")
            base = self.output_dir / f"{command}-{stamp}-{seed}"
            path = base
            suffix = 1
            while path.exists():
                path = base.with_name(f"{base.name}-{suffix}")
                suffix += 1
            path.mkdir(parents=True)
        except OSError as e:
            raise ArtifactError("create_run_dir", str(e)) from e
        logger.info("run directory created", run_dir=str(path))
        return path

    def write_csv(self, run_dir: Path, name: str, frame: pd.DataFrame) -> Path:
        """CSV with a header row and a fixed float format."""
        path = Path(run_dir) / name
        try:
            frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
        except OSError as e:
            raise ArtifactError("write_csv", f"{path}: {e}") from e
        logger.info("artifact written", path=str(path), rows=len(frame))
        return path

    def write_svg(self, run_dir: Path, name: str, svg: str) -> Path:
        path = Path(run_dir) / name
        try:
            path.write_text(svg, encoding="utf-8")
        except OSError as e:
            raise ArtifactError("write_svg", f"{path}: {e}") from e
        logger.info("artifact written", path=str(path))
        return path

    def write_manifest(
        self,
        run_dir: Path,
        config: dict[str, Any],
        seed: int,
        version: str,
        artifacts: list[str],
        warnings: list[str] | None = None,
    ) -> Path:
        """Manifest recording everything needed to rerun the command."""
        manifest = {
            "version": version,
            "created_at": datetime.now(UTC).isoformat(),
            "seed": seed,
            "config": config,
            "artifacts": artifacts,
            "warnings": warnings or [],
        }
        path = Path(run_dir) / MANIFEST_NAME
        try:
            with path.open("w", encoding="utf-8") as handle:
                yaml.safe_dump(manifest, handle, sort_keys=False)
        except OSError as e:
            raise ArtifactError("write_manifest", f"{path}: {e}") from e
        logger.info("manifest written", path=str(path))
        return path

    def write_error(self, run_dir: Path, record: dict[str, Any]) -> Path | None:
        """Best effort; an error while reporting an error is only logged."""
        path = Path(run_dir) / ERROR_NAME
        try:
            path.write_text(json.dumps(record, indent=2, default=str), encoding="utf-8")
        except OSError as e:
            logger.error("could not write error record", path=str(path), error=str(e))
            return None
        return path


def load_document(path: str | Path) -> dict[str, Any]:
    """Read a YAML or JSON run-config document; manifests yield their ``config`` key."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ArtifactError("load_document", f"{path}: {e}") from e
    document = yaml.safe_load(text) or {}
    if not isinstance(document, dict):
        raise ArtifactError("load_document", f"{path}: expected a mapping")
    if "config" in document and "artifacts" in document:
        return dict(document["config"])
    return document
