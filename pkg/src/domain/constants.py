"""Monte Carlo estimation of Pickands, Piterbarg and generalized constants.

Every constant is built from one functional, E exp(sup over a region of W
minus a drift), where W(s,t) = sqrt2 B1(s) + sqrt2 B2(t) - |s|^a1 - |t|^a2.
All regions of one call are evaluated on the same simulated paths, so
nested regions and ladders are coupled replication by replication.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import structlog

from src.app.exceptions import DomainError, PreconditionError
from src.domain.models import (
    ConstantEstimate,
    DriftKind,
    DriftSpec,
    GridSpec,
    RegionKind,
    RegionSpec,
)
from src.domain.randfield import SQRT2, FbmSampler, check_alpha
from src.infra.config import get_settings
from src.infra.random import STREAM_PRIMARY, STREAM_SECONDARY, block_rng, run_blocks

logger = structlog.get_logger(__name__)

MIN_REPS = 100
# cells evaluated at once when reducing a planar region
_PLANAR_CHUNK_CELLS = 4_000_000
_MASK_TOL = 1e-9


def _half_steps(value: float, step: float, name: str) -> int:
    """value expressed in half-steps; value must be a multiple of step."""
    ratio = value / step
    if abs(ratio - round(ratio)) > 1e-9 * max(1.0, abs(ratio)):
        raise PreconditionError(
            "functional_expectation",
            f"step {step:g} does not divide {name}={value:g}",
            step=step,
        )
    return 2 * int(round(ratio))


def _check_common(step: float, reps: int) -> None:
    if step <= 0:
        raise DomainError("step", step, "must be positive")
    if reps < MIN_REPS:
        raise PreconditionError("functional_expectation", f"reps must be at least {MIN_REPS}", reps=reps)


def _check_drift(drift: DriftSpec) -> None:
    if drift.gamma < 0 or math.isnan(drift.gamma):
        raise DomainError("gamma", drift.gamma, "must be nonnegative")


def _check_region(region: RegionSpec) -> None:
    if region.kind == RegionKind.INTERVAL:
        if region.S1 is None or region.S2 is None:
            raise DomainError("region", region.label(), "intervals need S1 and S2")
    elif region.S is None:
        raise DomainError("region", region.kind.value, "strips need S")
    if not region.size > 0:
        raise DomainError("region", region.label(), "region is degenerate")


def _extra_drift(drift: DriftSpec, alpha1: float, s: np.ndarray, t: np.ndarray) -> np.ndarray:
    if drift.kind == DriftKind.PICKANDS or drift.gamma == 0:
        return np.zeros(np.broadcast(s, t).shape)
    if drift.kind == DriftKind.PITERBARG:
        return drift.gamma * np.abs(s + drift.b * t) ** alpha1
    beta = drift.beta if drift.beta is not None else alpha1
    return drift.gamma * np.abs(s + drift.b * t) ** beta


@dataclass
class _Plan:
    """Precomputed index sets and drift values of one target."""
    planar: bool
    s_slice: slice
    t_slice: slice
    s_coarse: np.ndarray
    t_coarse: np.ndarray
    drift_fine: np.ndarray
    drift_coarse: np.ndarray
    rate_exponent: float


class FunctionalEngine:
    """Evaluates several (region, drift) functionals on common random paths.

    Paths are simulated at half the requested step; the requested grid is
    every other point, which yields both values needed for extrapolation.
    """

    def __init__(
        self,
        alpha1: float,
        alpha2: float,
        targets: Sequence[tuple[RegionSpec, DriftSpec]],
        step: float,
    ):
        check_alpha(alpha1, "alpha1")
        check_alpha(alpha2, "alpha2")
        if not targets:
            raise PreconditionError("functional_expectation", "at least one region is required")
        self.alpha1 = alpha1
        self.alpha2 = alpha2
        self.step = step
        self.fine_step = step / 2.0

        bounds = [self._bounds(region) for region, drift in targets]
        ks_lo = min(b[0] for b in bounds)
        ks_hi = max(b[1] for b in bounds)
        kt_hi = max(b[2] for b in bounds)
        self.ks_lo = ks_lo
        self.s_grid = GridSpec(
            start=ks_lo * self.fine_step, end=ks_hi * self.fine_step, n_points=ks_hi - ks_lo + 1
        )
        self.s_sampler = FbmSampler(self.s_grid, alpha1)
        self.t_sampler: FbmSampler | None = None
        if kt_hi > 0:
            t_grid = GridSpec(start=0.0, end=kt_hi * self.fine_step, n_points=kt_hi + 1)
            self.t_sampler = FbmSampler(t_grid, alpha2)

        self.plans = [
            self._plan(region, drift, bound) for (region, drift), bound in zip(targets, bounds, strict=True)
        ]
        logger.debug(
            "functional engine prepared",
            targets=len(self.plans),
            s_points=self.s_grid.n_points,
            s_method=self.s_sampler.method,
            t_points=kt_hi + 1 if kt_hi else 0,
        )

    def _bounds(self, region: RegionSpec) -> tuple[int, int, int]:
        """Half-step index bounds (s_lo, s_hi, t_hi) of a region."""
        hf = self.fine_step
        if region.kind == RegionKind.INTERVAL:
            return (
                _half_steps(region.S1, self.step, "S1"),
                _half_steps(region.S2, self.step, "S2"),
                0,
            )
        S, b = region.S, region.b
        kt = _half_steps(S, self.step, "S")
        if region.kind == RegionKind.STRIP:
            lo, hi = -S - max(b, 0.0) * S, S - min(b, 0.0) * S
        else:
            lo, hi = -max(b, 0.0) * S, S - min(b, 0.0) * S
        return (
            math.floor(lo / hf + 1e-9),
            math.ceil(hi / hf - 1e-9),
            kt,
        )

    def _plan(self, region: RegionSpec, drift: DriftSpec, bound: tuple[int, int, int]) -> _Plan:
        k_lo, k_hi, kt = bound
        hf = self.fine_step
        s_slice = slice(k_lo - self.ks_lo, k_hi - self.ks_lo + 1)
        s_index = np.arange(k_lo, k_hi + 1)
        s = s_index * hf
        s_coarse = np.flatnonzero(s_index % 2 == 0)

        if region.kind == RegionKind.INTERVAL:
            d = np.abs(s) ** self.alpha1 + _extra_drift(drift, self.alpha1, s, np.zeros_like(s))
            return _Plan(
                planar=False,
                s_slice=s_slice,
                t_slice=slice(0, 1),
                s_coarse=s_coarse,
                t_coarse=np.zeros(1, dtype=int),
                drift_fine=d,
                drift_coarse=d[s_coarse],
                rate_exponent=self.alpha1 / 2.0,
            )

        t_index = np.arange(kt + 1)
        t = t_index * hf
        t_coarse = np.flatnonzero(t_index % 2 == 0)
        ss, tt = np.meshgrid(s, t, indexing="ij")
        d = np.abs(ss) ** self.alpha1 + np.abs(tt) ** self.alpha2
        d = d + _extra_drift(drift, self.alpha1, ss, tt)
        tilt = ss + region.b * tt
        tol = _MASK_TOL * max(region.S, 1.0)
        if region.kind == RegionKind.STRIP:
            inside = np.abs(tilt) <= region.S + tol
        else:
            inside = (tilt >= -tol) & (tilt <= region.S + tol)
        d[~inside] = np.inf
        return _Plan(
            planar=True,
            s_slice=s_slice,
            t_slice=slice(0, kt + 1),
            s_coarse=s_coarse,
            t_coarse=t_coarse,
            drift_fine=d,
            drift_coarse=d[np.ix_(s_coarse, t_coarse)],
            rate_exponent=min(self.alpha1, self.alpha2) / 2.0,
        )

    @staticmethod
    def _planar_sup(x: np.ndarray, y: np.ndarray, drift: np.ndarray) -> np.ndarray:
        chunk = max(1, _PLANAR_CHUNK_CELLS // drift.size)
        out = np.empty(x.shape[0])
        for start in range(0, x.shape[0], chunk):
            stop = start + chunk
            values = x[start:stop, :, None] + y[start:stop, None, :] - drift[None]
            out[start:stop] = values.max(axis=(1, 2))
        return out

    def _evaluate_block(self, seed: int, block: int, n: int) -> np.ndarray:
        x = SQRT2 * self.s_sampler.sample(block_rng(seed, STREAM_PRIMARY, block), n)
        y = None
        if self.t_sampler is not None:
            y = SQRT2 * self.t_sampler.sample(block_rng(seed, STREAM_SECONDARY, block), n)

        out = np.empty((len(self.plans), 2, n))
        for i, plan in enumerate(self.plans):
            xs = x[:, plan.s_slice]
            if plan.planar:
                yt = y[:, plan.t_slice]
                fine = self._planar_sup(xs, yt, plan.drift_fine)
                coarse = self._planar_sup(
                    xs[:, plan.s_coarse], yt[:, plan.t_coarse], plan.drift_coarse
                )
            else:
                fine = (xs - plan.drift_fine).max(axis=1)
                coarse = (xs[:, plan.s_coarse] - plan.drift_coarse).max(axis=1)
            out[i, 0] = fine
            out[i, 1] = coarse
        return np.exp(out)

    def run(self, reps: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
        """Per-replication exp(sup) on the fine and coarse grids, shape (targets, reps)."""
        settings = get_settings()
        blocks = run_blocks(
            lambda block, n: self._evaluate_block(seed, block, n),
            reps,
            settings.block_size,
            settings.worker_count,
        )
        values = np.concatenate(blocks, axis=2)
        return values[:, 0, :], values[:, 1, :]


def extrapolate_per_rep(fine: np.ndarray, coarse: np.ndarray, exponent: float) -> np.ndarray:
    """Remove the first-order grid bias, linear in step^exponent."""
    q = 2.0 ** (-exponent)
    return fine + (fine - coarse) * q / (1.0 - q)


def _mean_and_stderr(values: np.ndarray) -> tuple[float, float]:
    n = values.shape[-1]
    return float(np.mean(values)), float(np.std(values, ddof=1) / math.sqrt(n))


@dataclass
class _Sample:
    """Per-replication values of one target."""
    raw: np.ndarray
    extrapolated: np.ndarray


def _evaluate_targets(
    alpha1: float,
    alpha2: float,
    targets: Sequence[tuple[RegionSpec, DriftSpec]],
    step: float,
    reps: int,
    seed: int,
) -> list[_Sample]:
    engine = FunctionalEngine(alpha1, alpha2, targets, step)
    fine, coarse = engine.run(reps, seed)
    return [
        _Sample(raw=fine[i], extrapolated=extrapolate_per_rep(fine[i], coarse[i], plan.rate_exponent))
        for i, plan in enumerate(engine.plans)
    ]


def _resolve(step: float | None, reps: int | None) -> tuple[float, int]:
    settings = get_settings()
    step = settings.default_step if step is None else step
    reps = settings.default_reps if reps is None else reps
    _check_common(step, reps)
    return step, reps


def _check_ladder(ladder: Sequence[float], operation: str) -> list[float]:
    rungs = [float(S) for S in ladder]
    if len(rungs) < 2:
        raise PreconditionError(operation, "a ladder needs at least two rungs", ladder=rungs)
    if any(b <= a for a, b in zip(rungs, rungs[1:], strict=False)) or rungs[0] <= 0:
        raise PreconditionError(operation, "ladder must be positive and increasing", ladder=rungs)
    return rungs


def _functional_estimate(
    sample: _Sample,
    constant_id: str,
    alpha1: float,
    alpha2: float | None,
    region: RegionSpec,
    drift: DriftSpec,
    step: float,
    reps: int,
    extrapolate: bool,
) -> ConstantEstimate:
    raw, raw_se = _mean_and_stderr(sample.raw)
    value, se = _mean_and_stderr(sample.extrapolated) if extrapolate else (raw, raw_se)
    return ConstantEstimate(
        constant_id=constant_id,
        value=value,
        stderr=se,
        raw_value=raw,
        raw_stderr=raw_se,
        alpha1=alpha1,
        alpha2=alpha2,
        gamma=drift.gamma,
        b=drift.b if drift.kind == DriftKind.GENERALIZED else region.b,
        beta=drift.beta,
        region=region.label(),
        S=region.S if region.is_planar else region.S2,
        step=step,
        reps=reps,
        extrapolated=extrapolate,
    )


def _infinite_drift_estimate(
    alpha1: float,
    alpha2: float,
    region: RegionSpec,
    drift: DriftSpec,
    step: float,
    reps: int,
    seed: int,
    extrapolate: bool,
) -> ConstantEstimate:
    """gamma = inf: the constant collapses to 1 on intervals, to a Pickands functional on strips."""
    if not region.is_planar:
        return ConstantEstimate(
            constant_id="functional",
            value=1.0,
            stderr=0.0,
            raw_value=1.0,
            raw_stderr=0.0,
            alpha1=alpha1,
            gamma=math.inf,
            region=region.label(),
            S=region.S2,
            method="symbolic",
        )
    if alpha1 != alpha2:
        raise DomainError("gamma", drift.gamma, "infinite drift on strips needs alpha1 == alpha2")
    if drift.b != region.b:
        raise PreconditionError("functional_expectation", "infinite drift needs the strip tilt")
    # on s = -b t the field is a Pickands field in time scaled by (|b|^a + 1)^(1/a)
    scale = (abs(region.b) ** alpha1 + 1.0) ** (1.0 / alpha1)
    length = scale * region.S
    line_step = length / max(1, round(length / step))
    estimate = pickands_finite(alpha1, length, line_step, reps, seed, extrapolate=extrapolate)
    return estimate.model_copy(
        update={
            "constant_id": "functional",
            "alpha2": alpha2,
            "gamma": math.inf,
            "b": region.b,
            "region": region.label(),
            "S": region.S,
            "method": "symbolic",
        }
    )


def functional_expectations(
    alpha1: float,
    alpha2: float,
    targets: Sequence[tuple[RegionSpec, DriftSpec]],
    step: float | None = None,
    reps: int | None = None,
    seed: int = 0,
    extrapolate: bool = True,
) -> list[ConstantEstimate]:
    """Coupled estimates of several functionals, one per (region, drift) pair."""
    step, reps = _resolve(step, reps)
    for region, drift in targets:
        _check_region(region)
        _check_drift(drift)

    simulated = [(i, pair) for i, pair in enumerate(targets) if not pair[1].is_infinite]
    results: list[ConstantEstimate | None] = [None] * len(targets)
    if simulated:
        samples = _evaluate_targets(alpha1, alpha2, [pair for _, pair in simulated], step, reps, seed)
        for (i, (region, drift)), sample in zip(simulated, samples, strict=True):
            results[i] = _functional_estimate(
                sample,
                "functional",
                alpha1,
                alpha2 if region.is_planar else None,
                region,
                drift,
                step,
                reps,
                extrapolate,
            )
    for i, (region, drift) in enumerate(targets):
        if drift.is_infinite:
            results[i] = _infinite_drift_estimate(
                alpha1, alpha2, region, drift, step, reps, seed, extrapolate
            )
    return [r for r in results if r is not None]


def functional_expectation(
    alpha1: float,
    alpha2: float,
    region: RegionSpec,
    drift: DriftSpec,
    step: float | None = None,
    reps: int | None = None,
    seed: int = 0,
    extrapolate: bool = True,
) -> ConstantEstimate:
    """E exp(sup over region of W - drift); for intervals alpha2 is unused."""
    return functional_expectations(
        alpha1, alpha2, [(region, drift)], step, reps, seed, extrapolate
    )[0]


def pickands_finite(
    alpha: float,
    S: float,
    step: float | None = None,
    reps: int | None = None,
    seed: int = 0,
    extrapolate: bool = True,
) -> ConstantEstimate:
    """H_alpha[0, S]."""
    estimate = functional_expectation(
        alpha, alpha, RegionSpec.interval(0.0, S), DriftSpec(), step, reps, seed, extrapolate
    )
    return estimate.model_copy(update={"constant_id": "pickands_finite", "alpha2": None})


def piterbarg_finite(
    alpha: float,
    gamma: float,
    S1: float,
    S2: float,
    step: float | None = None,
    reps: int | None = None,
    seed: int = 0,
    extrapolate: bool = True,
) -> ConstantEstimate:
    """P_alpha^gamma[S1, S2]."""
    drift = DriftSpec(kind=DriftKind.PITERBARG, gamma=gamma)
    estimate = functional_expectation(
        alpha, alpha, RegionSpec.interval(S1, S2), drift, step, reps, seed, extrapolate
    )
    return estimate.model_copy(update={"constant_id": "piterbarg_finite", "alpha2": None})


def generalized_functional(
    alpha1: float,
    alpha2: float,
    gamma: float,
    b: float,
    beta: float,
    S: float,
    one_sided: bool = False,
    step: float | None = None,
    reps: int | None = None,
    seed: int = 0,
    extrapolate: bool = True,
) -> ConstantEstimate:
    """The strip functional H_{a1,a2}^{gamma,b,beta}(S), or its half-strip variant."""
    if beta <= 0:
        raise DomainError("beta", beta, "must be positive")
    drift = DriftSpec(kind=DriftKind.GENERALIZED, gamma=gamma, b=b, beta=beta)
    estimate = functional_expectation(
        alpha1, alpha2, RegionSpec.strip(S, b, one_sided), drift, step, reps, seed, extrapolate
    )
    constant_id = "generalized_hat" if one_sided else "generalized"
    return estimate.model_copy(update={"constant_id": constant_id})


def _ladder_rate(
    samples: list[_Sample],
    rungs: list[float],
    extrapolate: bool,
) -> tuple[float, float, float, float, bool | None]:
    """Slope between the top two rungs, with the convergence verdict."""
    tol = get_settings().convergence_rel_tol

    def slope(values: list[np.ndarray], k: int) -> np.ndarray:
        return (values[k] - values[k - 1]) / (rungs[k] - rungs[k - 1])

    raw = [s.raw for s in samples]
    ext = [s.extrapolated for s in samples] if extrapolate else raw
    top = len(rungs) - 1
    raw_value, raw_se = _mean_and_stderr(slope(raw, top))
    per_rep = slope(ext, top)
    value, se = _mean_and_stderr(per_rep)

    converged: bool | None = None
    if len(rungs) >= 3:
        diff_mean, diff_se = _mean_and_stderr(per_rep - slope(ext, top - 1))
        converged = abs(diff_mean) <= max(2.0 * diff_se, tol * abs(value))
    # rates of nondecreasing functionals are nonnegative
    if value < 0.0 or raw_value < 0.0:
        logger.warning(
            "ladder rate clamped at zero",
            value=value,
            raw_value=raw_value,
            stderr=se,
            rungs=list(rungs),
        )
        converged = False
    return max(value, 0.0), se, max(raw_value, 0.0), raw_se, converged


def pickands(
    alpha: float,
    S_ladder: Sequence[float] | None = None,
    step: float | None = None,
    reps: int | None = None,
    seed: int = 0,
    extrapolate: bool = True,
) -> ConstantEstimate:
    """H_alpha as the slope of H_alpha[0, S] between the top two ladder rungs."""
    rungs = _check_ladder(S_ladder or get_settings().default_ladder_1d, "pickands")
    step, reps = _resolve(step, reps)
    targets = [(RegionSpec.interval(0.0, S), DriftSpec()) for S in rungs]
    samples = _evaluate_targets(alpha, alpha, targets, step, reps, seed)
    value, se, raw, raw_se, converged = _ladder_rate(samples, rungs, extrapolate)
    estimate = ConstantEstimate(
        constant_id="pickands",
        value=value,
        stderr=se,
        raw_value=raw,
        raw_stderr=raw_se,
        alpha1=alpha,
        region=f"[0,S] S={','.join(f'{S:g}' for S in rungs)}",
        S=rungs[-1],
        step=step,
        reps=reps,
        extrapolated=extrapolate,
        converged=converged,
    )
    logger.info(
        "constant estimated",
        constant_id=estimate.constant_id,
        alpha=alpha,
        value=estimate.value,
        stderr=estimate.stderr,
        reps=reps,
    )
    return estimate


def piterbarg(
    alpha: float,
    gamma: float,
    S: float | Sequence[float] | None = None,
    one_sided: bool = False,
    step: float | None = None,
    reps: int | None = None,
    seed: int = 0,
    extrapolate: bool = True,
) -> ConstantEstimate:
    """P_alpha^gamma (two-sided) or its one-sided variant, at the top of an S ladder.

    A single S is read as the ladder (S/2, S).
    """
    constant_id = "piterbarg_hat" if one_sided else "piterbarg"
    check_alpha(alpha)
    if gamma < 0 or math.isnan(gamma):
        raise DomainError("gamma", gamma, "must be nonnegative")
    if math.isinf(gamma):
        return ConstantEstimate(
            constant_id=constant_id,
            value=1.0,
            stderr=0.0,
            raw_value=1.0,
            raw_stderr=0.0,
            alpha1=alpha,
            gamma=gamma,
            converged=True,
            method="symbolic",
        )
    if gamma == 0:
        raise DomainError("gamma", gamma, "must be positive; gamma = 0 diverges")

    if S is None:
        S = get_settings().default_ladder_1d
    ladder = [S / 2.0, S] if isinstance(S, (int, float)) else S
    rungs = _check_ladder(ladder, "piterbarg")
    step, reps = _resolve(step, reps)
    drift = DriftSpec(kind=DriftKind.PITERBARG, gamma=gamma)
    regions = [RegionSpec.interval(0.0 if one_sided else -r, r) for r in rungs]
    samples = _evaluate_targets(alpha, alpha, [(r, drift) for r in regions], step, reps, seed)

    values = [s.extrapolated if extrapolate else s.raw for s in samples]
    value, se = _mean_and_stderr(values[-1])
    raw, raw_se = _mean_and_stderr(samples[-1].raw)
    previous, _ = _mean_and_stderr(values[-2])
    tol = get_settings().convergence_rel_tol
    converged = abs(value - previous) < max(2.0 * se, tol * value)
    if not converged:
        logger.warning(
            "piterbarg ladder not converged",
            alpha=alpha,
            gamma=gamma,
            top=value,
            previous=previous,
            stderr=se,
        )
    estimate = ConstantEstimate(
        constant_id=constant_id,
        value=value,
        stderr=se,
        raw_value=raw,
        raw_stderr=raw_se,
        alpha1=alpha,
        gamma=gamma,
        region=regions[-1].label(),
        S=rungs[-1],
        step=step,
        reps=reps,
        extrapolated=extrapolate,
        converged=converged,
    )
    logger.info(
        "constant estimated",
        constant_id=constant_id,
        alpha=alpha,
        gamma=gamma,
        value=value,
        stderr=se,
        reps=reps,
    )
    return estimate


def gen_pickands_rate(
    alpha: float,
    gamma: float,
    b: float,
    one_sided: bool = False,
    S_ladder: Sequence[float] | None = None,
    step: float | None = None,
    reps: int | None = None,
    seed: int = 0,
    extrapolate: bool = True,
) -> ConstantEstimate:
    """H_alpha^{gamma,b} = lim H^{gamma,b}(S)/S, as a slope over strip ladders."""
    constant_id = "gen_rate_hat" if one_sided else "gen_rate"
    check_alpha(alpha)
    if math.isnan(gamma) or gamma <= 0:
        raise DomainError("gamma", gamma, "must be positive")
    if math.isinf(gamma):
        # the strip collapses onto s = -b t
        scale = (abs(b) ** alpha + 1.0) ** (1.0 / alpha)
        base = pickands(alpha, S_ladder, step, reps, seed, extrapolate)
        return base.model_copy(
            update={
                "constant_id": constant_id,
                "value": scale * base.value,
                "stderr": scale * base.stderr,
                "raw_value": scale * base.raw_value,
                "raw_stderr": scale * base.raw_stderr,
                "alpha2": alpha,
                "gamma": gamma,
                "b": b,
                "method": "symbolic",
            }
        )

    rungs = _check_ladder(S_ladder or get_settings().default_ladder_strip, "gen_pickands_rate")
    step, reps = _resolve(step, reps)
    drift = DriftSpec(kind=DriftKind.GENERALIZED, gamma=gamma, b=b, beta=alpha)
    regions = [RegionSpec.strip(S, b, one_sided) for S in rungs]
    samples = _evaluate_targets(alpha, alpha, [(r, drift) for r in regions], step, reps, seed)
    value, se, raw, raw_se, converged = _ladder_rate(samples, rungs, extrapolate)
    if converged is False:
        logger.warning("generalized rate ladder not converged", alpha=alpha, gamma=gamma, b=b)
    estimate = ConstantEstimate(
        constant_id=constant_id,
        value=value,
        stderr=se,
        raw_value=raw,
        raw_stderr=raw_se,
        alpha1=alpha,
        alpha2=alpha,
        gamma=gamma,
        b=b,
        beta=alpha,
        region=regions[-1].label(),
        S=rungs[-1],
        step=step,
        reps=reps,
        extrapolated=extrapolate,
        converged=converged,
    )
    logger.info(
        "constant estimated",
        constant_id=constant_id,
        alpha=alpha,
        gamma=gamma,
        b=b,
        value=value,
        stderr=se,
        reps=reps,
    )
    return estimate
