"""Command-line entry point."""

import sys
from collections.abc import Sequence

import structlog

from src import __version__
from src.app.cli import build_document, build_parser
from src.app.dependencies import (
    build_constants_provider,
    get_artifact_store,
    get_preset_loader,
)
from src.app.dto import RunConfig
from src.app.error_handlers import handle_cli_error
from src.app.validators import validate_run_config
from src.infra.config import get_settings
from src.infra.logging import configure_logging
from src.orchestrator.pipeline import ExperimentPipeline

logger = structlog.get_logger(__name__)


def _apply_threads(config: RunConfig) -> None:
    if config.threads is None:
        return
    settings = get_settings()
    settings.threads = 0 if config.threads == "auto" else config.threads


def main(argv: Sequence[str] | None = None) -> int:
    settings = get_settings()
    configure_logging(settings.log_level, settings.log_format)
    try:
        args = build_parser().parse_args(argv)
        document = build_document(args, get_preset_loader())
        config = validate_run_config(document)
    except Exception as e:
        return handle_cli_error(e)

    _apply_threads(config)
    logger.info("run starting", command=config.command, seed=config.seed, version=__version__)
    store = get_artifact_store(config.output_dir)
    run = ExperimentPipeline(store, __version__, build_constants_provider).run(config)
    if run.status == "completed":
        print(run.run_dir)
        logger.info("run finished", run_dir=run.run_dir, artifacts=run.artifacts, warnings=len(run.warnings))
    return run.exit_status


if __name__ == "__main__":
    sys.exit(main())
