"""Factories for the collaborators of a run."""

from functools import lru_cache

from src.adapters.storage import ArtifactStore
from src.app.dto import ConstantsConfig
from src.domain.services import ConstantsProvider, MonteCarloConstants, PinnedConstants
from src.infra.config import get_settings
from src.rules.presets import PresetLoader


@lru_cache
def get_artifact_store(output_dir: str | None = None) -> ArtifactStore:
    """Get artifact store instance."""
    return ArtifactStore(output_dir or get_settings().output_dir)


@lru_cache
def get_preset_loader() -> PresetLoader:
    """Get preset loader instance."""
    return PresetLoader()


def build_constants_provider(config: ConstantsConfig, seed: int) -> ConstantsProvider:
    """Constants provider described by the run config."""
    if config.provider == "pinned":
        return PinnedConstants(config.pinned, use_closed_forms=config.closed_forms)
    return MonteCarloConstants(
        step=config.step,
        reps=config.reps,
        seed=seed,
        ladder_1d=config.ladder_1d,
        ladder_strip=config.ladder_strip,
        extrapolate=config.extrapolate,
        use_closed_forms=config.closed_forms,
    )
