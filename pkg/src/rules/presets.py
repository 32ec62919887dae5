"""Bundled run presets for the fBm-sum asymptotes."""

import json
from pathlib import Path
from typing import Any

import jsonschema
import structlog
from pydantic import BaseModel, Field

from src.app.exceptions import ConfigValidationError, PresetNotFoundError
from src.rules.schemas import PRESET_SCHEMA

logger = structlog.get_logger(__name__)

PRESETS_DIR = Path(__file__).parent / "presets"


class Preset(BaseModel):
    """A named run-config document."""
    id: str = Field(..., description="Preset identifier, e.g. cor42-alpha1")
    description: str = Field(..., description="What the preset computes")
    config: dict[str, Any] = Field(..., description="Run-config document")


class PresetLoader:
    """Loads and validates preset documents from a directory."""

    def __init__(self, presets_dir: Path | str | None = None):
        self.presets_dir = Path(presets_dir) if presets_dir else PRESETS_DIR
        self._presets: dict[str, Preset] | None = None

    def _load(self) -> dict[str, Preset]:
        presets: dict[str, Preset] = {}
        for path in sorted(self.presets_dir.glob("*.json")):
            with path.open(encoding="utf-8") as handle:
                document = json.load(handle)
            try:
                jsonschema.validate(document, PRESET_SCHEMA)
            except jsonschema.ValidationError as e:
                raise ConfigValidationError(f"preset {path.name}", document.get("id"), e.message)
            presets[document["id"]] = Preset(**document)
        logger.debug("presets loaded", count=len(presets), directory=str(self.presets_dir))
        return presets

    @property
    def presets(self) -> dict[str, Preset]:
        if self._presets is None:
            self._presets = self._load()
        return self._presets

    def available(self) -> list[str]:
        return sorted(self.presets)

    def get(self, preset_id: str) -> Preset:
        try:
            return self.presets[preset_id]
        except KeyError:
            raise PresetNotFoundError(preset_id, self.available()) from None
