"""Experiment pipeline: runs one command and writes its artifacts."""

from collections.abc import Callable
from pathlib import Path

import numpy as np
import pandas as pd
import structlog

from src.adapters.plots import render_loglog_svg
from src.adapters.storage import ArtifactStore
from src.app.dto import (
    AsymptoteParams,
    CompareParams,
    ConstantParams,
    ConstantsConfig,
    ExpansionParams,
    FbmSumParams,
    RunConfig,
    SimulateParams,
)
from src.app.error_handlers import handle_cli_error
from src.domain import constants
from src.domain.asymptotics import (
    curve_asymptote,
    fbm_sum_asymptote,
    fbm_sum_curve_scenario,
    line_asymptote,
)
from src.domain.harness import (
    check_correlation_expansion,
    check_variance_expansion,
    compare_run,
    halton_points,
)
from src.domain.models import (
    ConstantEstimate,
    GridSpec,
    LineScenario,
    PipelineRun,
    PowerLaw,
    TailAsymptote,
)
from src.domain.randfield import sample_fbm_paths, simulate_fbm_sum_field, simulate_w_field
from src.domain.services import ConstantsProvider

logger = structlog.get_logger(__name__)

# the CLI promises agreement to this relative tolerance
CROSS_CHECK_RTOL = 1e-6

ProviderFactory = Callable[[ConstantsConfig, int], ConstantsProvider]


class ExperimentPipeline:
    """Runs a validated RunConfig, tracking its steps in a PipelineRun."""

    def __init__(self, store: ArtifactStore, version: str, provider_factory: ProviderFactory):
        self.store = store
        self.version = version
        self.provider_factory = provider_factory
        self._handlers = {
            "simulate": self._simulate,
            "constant": self._constant,
            "asymptote": self._asymptote,
            "fbm-sum": self._fbm_sum,
            "compare": self._compare,
            "check-expansions": self._check_expansions,
        }

    def _step(self, run: PipelineRun, step: str) -> None:
        run.current_step = step
        logger.info("pipeline step", command=run.command, step=step)

    def run(self, config: RunConfig) -> PipelineRun:
        """Execute the command; failures are recorded, never raised."""
        run = PipelineRun(command=config.command, status="running")
        run_dir: Path | None = None
        try:
            self._step(run, "create_run_dir")
            run_dir = self.store.create_run_dir(config.command, config.seed, config.run_dir)
            run.run_dir = str(run_dir)

            self._step(run, "compute")
            self._handlers[config.command](config, run_dir, run)

            self._step(run, "write_manifest")
            self.store.write_manifest(
                run_dir,
                config.to_document(),
                config.seed,
                self.version,
                run.artifacts,
                run.warnings,
            )
            run.status = "completed"
            run.current_step = "completed"
        except Exception as e:
            run.status = "failed"
            run.error_message = str(e)
            run.exit_status = handle_cli_error(e, run_dir, self.store)
        return run

    def _csv(self, run: PipelineRun, run_dir: Path, name: str, frame: pd.DataFrame) -> None:
        self.store.write_csv(run_dir, name, frame)
        run.artifacts.append(name)

    def _svg(self, run: PipelineRun, run_dir: Path, name: str, svg: str) -> None:
        self.store.write_svg(run_dir, name, svg)
        run.artifacts.append(name)

    def _warn(self, run: PipelineRun, message: str) -> None:
        logger.warning("run warning", command=run.command, warning=message)
        run.warnings.append(message)

    # -- simulate ---------------------------------------------------------

    def _simulate(self, config: RunConfig, run_dir: Path, run: PipelineRun) -> None:
        p: SimulateParams = config.typed_params()
        alpha2 = p.alpha2 if p.alpha2 is not None else p.alpha1
        if p.target == "fbm":
            grid = GridSpec(start=0.0, end=p.T, n_points=p.n + 1)
            paths = sample_fbm_paths(grid, p.alpha1, p.paths, config.seed)
            t = grid.points()
            frame = pd.DataFrame(
                {
                    "path": np.repeat(np.arange(p.paths), t.size),
                    "t": np.tile(t, p.paths),
                    "value": paths.ravel(),
                }
            )
        elif p.target == "w-field":
            grid = GridSpec(start=0.0, end=p.T, n_points=p.n + 1)
            frame = simulate_w_field(p.alpha1, alpha2, grid, grid, config.seed).to_frame()
        else:
            grid = GridSpec(start=-p.T, end=p.T, n_points=p.n + 1)
            frame = simulate_fbm_sum_field(p.alpha1, alpha2, grid, grid, config.seed).to_frame()
        self._csv(run, run_dir, "samples.csv", frame)

    # -- constant ---------------------------------------------------------

    def _estimate_constant(self, p: ConstantParams, seed: int) -> ConstantEstimate:
        common = {"step": p.step, "reps": p.reps, "seed": seed, "extrapolate": p.extrapolate}
        if p.kind == "pickands":
            return constants.pickands(p.alpha, p.ladder, **common)
        if p.kind == "pickands-finite":
            return constants.pickands_finite(p.alpha, p.S, **common)
        if p.kind == "piterbarg":
            S = p.ladder if p.ladder else p.S
            return constants.piterbarg(p.alpha, p.gamma, S, p.one_sided, **common)
        if p.kind == "piterbarg-finite":
            return constants.piterbarg_finite(p.alpha, p.gamma, p.S1, p.S2, **common)
        if p.kind == "gen-rate":
            return constants.gen_pickands_rate(p.alpha, p.gamma, p.b, p.one_sided, p.ladder, **common)
        return constants.generalized_functional(
            p.alpha,
            p.alpha2 if p.alpha2 is not None else p.alpha,
            p.gamma,
            p.b,
            p.beta if p.beta is not None else p.alpha,
            p.S,
            p.one_sided,
            **common,
        )

    def _constant(self, config: RunConfig, run_dir: Path, run: PipelineRun) -> None:
        p: ConstantParams = config.typed_params()
        estimate = self._estimate_constant(p, config.seed)
        if estimate.converged is False:
            self._warn(run, f"{estimate.constant_id} ladder not converged")
        self._csv(run, run_dir, "constants.csv", pd.DataFrame([estimate.to_row()]))

    # -- asymptotes -------------------------------------------------------

    def _write_asymptote(
        self,
        run: PipelineRun,
        run_dir: Path,
        config: RunConfig,
        asymptote: TailAsymptote,
        u_grid: list[float],
    ) -> None:
        for flag in asymptote.flags:
            self._warn(run, f"asymptote flagged {flag.value}")
        row = asymptote.to_row()
        self._csv(run, run_dir, "asymptote.csv", pd.DataFrame([row]))
        used = pd.DataFrame(
            {"constant": list(asymptote.constants), "value": list(asymptote.constants.values())}
        )
        self._csv(run, run_dir, "constants_used.csv", used)
        table = asymptote.evaluate_table(u_grid)
        self._csv(run, run_dir, "asymptote_table.csv", table)
        if config.plot:
            svg = render_loglog_svg(
                [("K u^p Psi(u)", table["u"].tolist(), table["asymptote"].tolist())],
                f"Asymptote {asymptote.case.value}",
                "u",
                "probability",
            )
            self._svg(run, run_dir, "asymptote.svg", svg)

    def _asymptote(self, config: RunConfig, run_dir: Path, run: PipelineRun) -> None:
        p: AsymptoteParams = config.typed_params()
        provider = self.provider_factory(config.constants, config.seed)
        if p.scenario == "line":
            scenario = LineScenario(
                T1=p.T1,
                T2=p.T2,
                b=p.b,
                rho1=PowerLaw.from_alpha(p.rho1.coeff, p.rho1.alpha),
                rho2=PowerLaw.from_alpha(p.rho2.coeff, p.rho2.alpha),
                v=PowerLaw.from_alpha(p.v.coeff, p.v.alpha),
                boundary=p.boundary,
                t1=p.t1,
                t2=p.t2,
            )
            asymptote = line_asymptote(scenario, provider)
        elif p.scenario == "fbm-sum":
            asymptote = fbm_sum_asymptote(p.alpha1, p.alpha2, provider)
        else:
            asymptote = curve_asymptote(fbm_sum_curve_scenario(p.alpha1, p.alpha2, p.piece), provider)
        self._write_asymptote(run, run_dir, config, asymptote, p.u_grid)

    def _fbm_sum(self, config: RunConfig, run_dir: Path, run: PipelineRun) -> None:
        p: FbmSumParams = config.typed_params()
        provider = self.provider_factory(config.constants, config.seed)
        asymptote = fbm_sum_asymptote(p.alpha1, p.alpha2, provider)
        self._write_asymptote(run, run_dir, config, asymptote, p.u_grid)
        if not p.cross_check:
            return

        self._step(run, "cross_check")
        curve = curve_asymptote(fbm_sum_curve_scenario(p.alpha1, p.alpha2, 1), provider)
        curve_K = 4.0 * curve.K
        rel = abs(curve_K - asymptote.K) / asymptote.K if asymptote.K > 0 else abs(curve_K)
        agree = rel <= CROSS_CHECK_RTOL and curve.p_exact == asymptote.p_exact
        if not agree:
            self._warn(run, f"boundary-curve asymptote differs by {rel:.3g} relative")
        frame = pd.DataFrame(
            [
                {"source": "fbm-sum", **asymptote.to_row()},
                {
                    "source": "4x boundary curve",
                    **curve.to_row(),
                    "K": curve_K,
                    "K_stderr": 4.0 * curve.K_stderr,
                },
            ]
        )
        frame["rel_diff"] = [0.0, rel]
        self._csv(run, run_dir, "cross_check.csv", frame)

    # -- harness ----------------------------------------------------------

    def _compare(self, config: RunConfig, run_dir: Path, run: PipelineRun) -> None:
        p: CompareParams = config.typed_params()
        provider = self.provider_factory(config.constants, config.seed)
        table = compare_run(p.alpha1, p.alpha2, p.u, p.grid_ladder, p.reps, config.seed, provider)
        frame = table.to_frame()
        frame.insert(0, "case", table.case.value)
        self._csv(run, run_dir, "comparison.csv", frame)
        for row in table.rows:
            if row.weak:
                self._warn(run, f"weak estimate at u={row.u:g}, grid_n={row.grid_n}")
            if row.trend_flag:
                self._warn(run, f"ratio trend away from one at u={row.u:g}")
        if config.plot:
            series = []
            for grid_n in sorted({row.grid_n for row in table.rows}):
                rows = [row for row in table.rows if row.grid_n == grid_n]
                series.append((f"grid {grid_n}", [r.u for r in rows], [r.ratio for r in rows]))
            svg = render_loglog_svg(series, "Monte Carlo / asymptote", "u", "ratio")
            self._svg(run, run_dir, "comparison.svg", svg)

    def _check_expansions(self, config: RunConfig, run_dir: Path, run: PipelineRun) -> None:
        p: ExpansionParams = config.typed_params()
        points = halton_points(p.n_points, 1)[:, 0]
        reports = [
            check_variance_expansion(p.alpha1, p.alpha2, p.delta_ladder, points, axis="s"),
            check_variance_expansion(p.alpha1, p.alpha2, p.delta_ladder, points, axis="t"),
            check_correlation_expansion(
                p.alpha1, p.alpha2, p.delta_ladder, halton_points(p.n_points, 5)
            ),
        ]
        for report in reports:
            if not report.decreasing:
                self._warn(run, f"{report.name} error does not shrink along the delta ladder")
        frame = pd.concat([report.to_frame() for report in reports], ignore_index=True)
        self._csv(run, run_dir, "expansions.csv", frame)
        if config.plot:
            svg = render_loglog_svg(
                [(r.name, r.delta_ladder, r.max_rel_err) for r in reports],
                "Expansion error",
                "delta",
                "max relative error",
            )
            self._svg(run, run_dir, "expansions.svg", svg)
