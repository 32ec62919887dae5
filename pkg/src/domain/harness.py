"""Empirical validation for the sum of two independent fBms over the unit ball.

The field is X(s,t) = B1(s) + B2(t) on E = {|s|^a1 + |t|^a2 <= 1}. The module
estimates P(sup_E X > u) by plain Monte Carlo on nested grids, checks the local
expansions of the standard deviation and correlation near the boundary of E,
and compares simulated probabilities with the exact asymptote.
"""

import math
from collections.abc import Sequence

import numpy as np
import structlog
from scipy.stats import qmc

from src.app.exceptions import DomainError, PreconditionError
from src.domain.asymptotics import fbm_sum_asymptote
from src.domain.models import (
    ComparisonRow,
    ComparisonTable,
    ExpansionReport,
    GridSpec,
    SupTailEstimate,
)
from src.domain.randfield import FbmSampler, check_alpha
from src.domain.services import ConstantsProvider
from src.infra.config import get_settings
from src.infra.random import STREAM_PRIMARY, STREAM_SECONDARY, block_rng, run_blocks

logger = structlog.get_logger(__name__)

MIN_GRID_N = 16
WEAK_EXCEEDANCES = 10
DEFAULT_DELTA_LADDER = (1e-2, 1e-3, 1e-4)
SAMPLE_CAP = 0.9
DEFAULT_SAMPLE_SIZE = 64


def _check_grid_ladder(grid_ladder: Sequence[int]) -> list[int]:
    ladder = sorted({int(n) for n in grid_ladder})
    if not ladder:
        raise PreconditionError("mc_sup_tail", "at least one grid size is required")
    for n in ladder:
        if n < MIN_GRID_N or n % 2:
            raise PreconditionError(
                "mc_sup_tail", f"grid_n must be even and at least {MIN_GRID_N}", grid_n=n
            )
    finest = ladder[-1]
    if any(finest % n for n in ladder):
        raise PreconditionError(
            "mc_sup_tail", "every grid size must divide the finest one", grid_ladder=ladder
        )
    return ladder


class _BallSupremum:
    """Masked suprema of B1(s) + B2(t) on nested symmetric grids over [-1, 1]^2."""

    def __init__(self, alpha1: float, alpha2: float, grid_ladder: list[int]):
        self.alpha1 = alpha1
        self.alpha2 = alpha2
        finest = grid_ladder[-1]
        grid = GridSpec(start=-1.0, end=1.0, n_points=finest + 1)
        self.s_sampler = FbmSampler(grid, alpha1)
        self.t_sampler = FbmSampler(grid, alpha2)
        self.levels = [self._level(finest, n) for n in grid_ladder]

    def _level(self, finest: int, grid_n: int) -> tuple[np.ndarray, np.ndarray]:
        stride = finest // grid_n
        half = grid_n // 2
        k = np.arange(-half, half + 1)
        # exact symmetric points k / half
        s = k / half
        room = 1.0 - np.abs(s) ** self.alpha1
        t_powered = (np.arange(half + 1) / half) ** self.alpha2
        reach = np.searchsorted(t_powered, room, side="right") - 1
        index = (k + half) * stride
        return index, reach

    def evaluate(self, seed: int, block: int, n: int) -> np.ndarray:
        """Suprema for every level, shape (levels, n)."""
        x = self.s_sampler.sample(block_rng(seed, STREAM_PRIMARY, block), n)
        y = self.t_sampler.sample(block_rng(seed, STREAM_SECONDARY, block), n)
        out = np.empty((len(self.levels), n))
        for i, (index, reach) in enumerate(self.levels):
            xl = x[:, index]
            yl = y[:, index]
            centre = yl.shape[1] // 2
            # running max of Y over |t| <= k / half
            window = np.maximum.accumulate(
                np.maximum(yl[:, centre:], yl[:, centre::-1]), axis=1
            )
            out[i] = (xl + window[:, reach]).max(axis=1)
        return out


def _simulate_suprema(
    alpha1: float, alpha2: float, ladder: list[int], reps: int, seed: int
) -> np.ndarray:
    settings = get_settings()
    field = _BallSupremum(alpha1, alpha2, ladder)
    blocks = run_blocks(
        lambda block, n: field.evaluate(seed, block, n),
        reps,
        settings.block_size,
        settings.worker_count,
    )
    return np.concatenate(blocks, axis=1)


def _estimate(u: float, exceed: np.ndarray | None, grid_n: int, reps: int) -> SupTailEstimate:
    if u <= 0.0:
        return SupTailEstimate(u=u, p_hat=1.0, stderr=0.0, grid_n=grid_n, reps=reps)
    if math.isinf(u) or exceed is None:
        return SupTailEstimate(u=u, p_hat=0.0, stderr=0.0, grid_n=grid_n, reps=reps)
    p_hat = float(exceed.mean())
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / reps)
    weak = reps * p_hat < WEAK_EXCEEDANCES
    if weak:
        logger.warning("exceedance estimate is weak", u=u, grid_n=grid_n, reps=reps, p_hat=p_hat)
    return SupTailEstimate(u=u, p_hat=p_hat, stderr=stderr, grid_n=grid_n, reps=reps, weak=weak)


def sup_tail_table(
    alpha1: float,
    alpha2: float,
    u_list: Sequence[float],
    grid_ladder: Sequence[int],
    reps: int,
    seed: int = 0,
) -> list[SupTailEstimate]:
    """P(sup_E X > u) for every (grid_n, u), all levels sharing one set of paths."""
    check_alpha(alpha1, "alpha1")
    check_alpha(alpha2, "alpha2")
    if reps < 1:
        raise PreconditionError("mc_sup_tail", "reps must be positive", reps=reps)
    if any(math.isnan(u) for u in u_list):
        raise DomainError("u", "nan", "must be a number")
    ladder = _check_grid_ladder(grid_ladder)

    finite = [u for u in u_list if 0.0 < u < math.inf]
    suprema = _simulate_suprema(alpha1, alpha2, ladder, reps, seed) if finite else None

    estimates = []
    for level, grid_n in enumerate(ladder):
        for u in u_list:
            exceed = None
            if suprema is not None and 0.0 < u < math.inf:
                exceed = suprema[level] > u
            estimates.append(_estimate(float(u), exceed, grid_n, reps))
    logger.info(
        "exceedance table simulated",
        alpha1=alpha1,
        alpha2=alpha2,
        grids=ladder,
        u_count=len(u_list),
        reps=reps,
    )
    return estimates


def mc_sup_tail(
    alpha1: float,
    alpha2: float,
    u: float,
    grid_n: int,
    reps: int,
    seed: int = 0,
) -> SupTailEstimate:
    """Plain Monte Carlo estimate of P(sup_E (B1(s) + B2(t)) > u) on a grid_n x grid_n grid."""
    return sup_tail_table(alpha1, alpha2, [u], [grid_n], reps, seed)[0]


def halton_points(n: int, dim: int) -> np.ndarray:
    """Deterministic low-discrepancy points in [-SAMPLE_CAP, SAMPLE_CAP]^dim."""
    sample = qmc.Halton(d=dim, scramble=False).random(n + 1)[1:]
    return SAMPLE_CAP * (2.0 * sample - 1.0)


def check_variance_expansion(
    alpha1: float,
    alpha2: float,
    delta_ladder: Sequence[float] | None = None,
    sample_points: Sequence[float] | None = None,
    axis: str = "s",
) -> ExpansionReport:
    """Max |(1 - sigma) / expansion - 1| at distance delta inside the boundary of E.

    ``axis="s"`` samples s and moves t towards the origin; ``axis="t"`` swaps roles.
    """
    check_alpha(alpha1, "alpha1")
    check_alpha(alpha2, "alpha2")
    if axis not in ("s", "t"):
        raise DomainError("axis", axis, "must be 's' or 't'")
    deltas = [float(d) for d in (delta_ladder or DEFAULT_DELTA_LADDER)]
    if any(d <= 0 for d in deltas):
        raise DomainError("delta", deltas, "distances must be positive")
    points = (
        np.asarray(sample_points, dtype=float)
        if sample_points is not None
        else halton_points(DEFAULT_SAMPLE_SIZE, 1)[:, 0]
    )
    if np.any(np.abs(points) > SAMPLE_CAP + 1e-12):
        raise PreconditionError("check_variance_expansion", f"sample points must satisfy |x| <= {SAMPLE_CAP}")

    # fixed coordinate x, moving coordinate y; a_x applies to x and a_y to y
    a_x, a_y = (alpha1, alpha2) if axis == "s" else (alpha2, alpha1)
    room = 1.0 - np.abs(points) ** a_x
    edge = room ** (1.0 / a_y)
    slope = 0.5 * a_y * room ** (1.0 - 1.0 / a_y)

    errors = []
    used = 0
    for delta in deltas:
        keep = edge > delta
        y = edge[keep] - delta
        sigma = np.sqrt(np.abs(points[keep]) ** a_x + y**a_y)
        ratio = (1.0 - sigma) / (slope[keep] * delta) - 1.0
        errors.append(float(np.max(np.abs(ratio))) if ratio.size else 0.0)
        used = max(used, int(keep.sum()))
    report = ExpansionReport(
        name=f"variance-{axis}", delta_ladder=deltas, max_rel_err=errors, n_points=used
    )
    logger.info("variance expansion checked", axis=axis, max_rel_err=errors)
    return report


def _correlation_points(
    alpha1: float, alpha2: float, delta: float, pairs: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Point pairs below the upper boundary of E, t offsets pointing inwards."""

    def below_edge(s: np.ndarray, dt: np.ndarray) -> np.ndarray:
        room = np.maximum(1.0 - np.abs(s) ** alpha1, 0.0)
        return room ** (1.0 / alpha2) - delta * np.abs(dt)

    s = pairs[:, 0] + delta * pairs[:, 1]
    s1 = pairs[:, 0] + delta * pairs[:, 3]
    return s, below_edge(s, pairs[:, 2]), s1, below_edge(s1, pairs[:, 4])


def check_correlation_expansion(
    alpha1: float,
    alpha2: float,
    delta_ladder: Sequence[float] | None = None,
    sample_pairs: np.ndarray | None = None,
) -> ExpansionReport:
    """Max |2(1 - r) / (|s - s1|^a1 + |t - t1|^a2) - 1| over pairs near the boundary.

    ``sample_pairs`` rows are (s, ds, dt, ds1, dt1): a base abscissa with
    |s| <= SAMPLE_CAP and four offsets in [-1, 1] scaled by delta. The default
    Halton rows keep the offsets within [-SAMPLE_CAP, SAMPLE_CAP]. Each point
    sits |dt| * delta below the boundary at its own abscissa; pairs with a
    point outside E or with coincident points are skipped.
    """
    check_alpha(alpha1, "alpha1")
    check_alpha(alpha2, "alpha2")
    deltas = [float(d) for d in (delta_ladder or DEFAULT_DELTA_LADDER)]
    if any(d <= 0 for d in deltas):
        raise DomainError("delta", deltas, "distances must be positive")
    pairs = (
        np.asarray(sample_pairs, dtype=float)
        if sample_pairs is not None
        else halton_points(DEFAULT_SAMPLE_SIZE, 5)
    )
    if pairs.ndim != 2 or pairs.shape[1] != 5:
        raise PreconditionError("check_correlation_expansion", "sample pairs need five columns")
    if np.any(np.abs(pairs[:, 0]) > SAMPLE_CAP + 1e-12) or np.any(np.abs(pairs[:, 1:]) > 1.0):
        raise PreconditionError(
            "check_correlation_expansion", f"need |s| <= {SAMPLE_CAP} and offsets in [-1, 1]"
        )

    errors = []
    used = 0
    for delta in deltas:
        s, t, s1, t1 = _correlation_points(alpha1, alpha2, delta, pairs)
        var = np.abs(s) ** alpha1 + np.abs(t) ** alpha2
        var1 = np.abs(s1) ** alpha1 + np.abs(t1) ** alpha2
        spread = np.abs(s - s1) ** alpha1 + np.abs(t - t1) ** alpha2
        keep = (spread > 0.0) & (var <= 1.0 + 1e-12) & (var1 <= 1.0 + 1e-12)
        sigma, sigma1 = np.sqrt(var[keep]), np.sqrt(var1[keep])
        gap = (var[keep] - var1[keep]) / (sigma + sigma1)
        # 2(1 - r) = (Var(X - X1) - (sigma - sigma1)^2) / (sigma sigma1)
        two_one_minus_r = (spread[keep] - gap**2) / (sigma * sigma1)
        ratio = two_one_minus_r / spread[keep] - 1.0
        errors.append(float(np.max(np.abs(ratio))) if ratio.size else 0.0)
        used = max(used, int(keep.sum()))
    report = ExpansionReport(name="correlation", delta_ladder=deltas, max_rel_err=errors, n_points=used)
    logger.info("correlation expansion checked", max_rel_err=errors, n_points=used)
    return report


def compare_run(
    alpha1: float,
    alpha2: float,
    u_list: Sequence[float],
    grid_ladder: Sequence[int],
    reps: int,
    seed: int,
    constants_provider: ConstantsProvider,
) -> ComparisonTable:
    """Simulated exceedance probabilities against the exact asymptote."""
    if any(not 0.0 < u < math.inf for u in u_list):
        raise PreconditionError("compare_run", "levels u must be positive and finite", u_list=list(u_list))
    asymptote = fbm_sum_asymptote(alpha1, alpha2, constants_provider)
    u_sorted = sorted(float(u) for u in u_list)
    estimates = sup_tail_table(alpha1, alpha2, u_sorted, grid_ladder, reps, seed)
    rel_k = asymptote.K_stderr / asymptote.K if asymptote.K > 0 else 0.0

    rows = []
    for est in estimates:
        reference = asymptote.evaluate(est.u)
        ratio = est.p_hat / reference if reference > 0 else math.inf
        ratio_se = math.sqrt((est.stderr / reference) ** 2 + (ratio * rel_k) ** 2) if reference > 0 else math.inf
        rows.append(
            ComparisonRow(
                u=est.u,
                grid_n=est.grid_n,
                p_hat=est.p_hat,
                stderr=est.stderr,
                asymptote=reference,
                ratio=ratio,
                ratio_stderr=ratio_se,
                weak=est.weak,
            )
        )

    finest = max(row.grid_n for row in rows)
    fine_rows = [row for row in rows if row.grid_n == finest]
    for previous, current in zip(fine_rows, fine_rows[1:], strict=False):
        bound = abs(previous.ratio - 1.0) + 2.0 * math.hypot(previous.ratio_stderr, current.ratio_stderr)
        if abs(current.ratio - 1.0) > bound:
            current.trend_flag = True
            logger.warning(
                "ratio moves away from one as u grows",
                u=current.u,
                ratio=current.ratio,
                previous_ratio=previous.ratio,
            )
    return ComparisonTable(alpha1=alpha1, alpha2=alpha2, case=asymptote.case, rows=rows)
