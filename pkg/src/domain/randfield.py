"""Exact simulation of fractional Brownian motion and separable 2-D fields."""

import numpy as np
import structlog
from scipy import linalg

from src.app.exceptions import CapacityError, DomainError
from src.domain.models import FbmPath, FieldSample, GridSpec
from src.infra.config import get_settings
from src.infra.random import STREAM_PRIMARY, STREAM_SECONDARY, block_rng, run_blocks

logger = structlog.get_logger(__name__)

SQRT2 = float(np.sqrt(2.0))


def check_alpha(alpha: float, name: str = "alpha") -> None:
    """Raise DomainError unless alpha lies in (0, 2]."""
    if not 0.0 < alpha <= 2.0:
        raise DomainError(name, alpha, "must lie in (0, 2]")


def fbm_cov(s: float | np.ndarray, t: float | np.ndarray, alpha: float) -> float | np.ndarray:
    """Cov(B(s), B(t)) = (|s|^a + |t|^a - |t - s|^a) / 2."""
    check_alpha(alpha)
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    cov = 0.5 * (np.abs(s) ** alpha + np.abs(t) ** alpha - np.abs(t - s) ** alpha)
    return float(cov) if cov.ndim == 0 else cov


def fbm_covariance_matrix(points: np.ndarray, alpha: float) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    return fbm_cov(points[:, None], points[None, :], alpha)


def increment_autocovariance(n: int, step: float, alpha: float) -> np.ndarray:
    """Autocovariance of fractional Gaussian noise at lags 0..n."""
    k = np.arange(n + 1, dtype=float)
    return 0.5 * step**alpha * (
        np.abs(k + 1) ** alpha + np.abs(k - 1) ** alpha - 2.0 * np.abs(k) ** alpha
    )


class FbmSampler:
    """Draws batches of exact fBm paths on one fixed grid.

    Grids starting at 0 use circulant embedding of the increment covariance;
    other grids, and embeddings with significantly negative eigenvalues, use
    the Cholesky factor of the path covariance. alpha = 2 uses B(t) = t N.
    """

    def __init__(
        self,
        grid: GridSpec,
        alpha: float,
        eigen_clamp_tol: float | None = None,
        cholesky_max_points: int | None = None,
    ):
        check_alpha(alpha)
        settings = get_settings()
        self.grid = grid
        self.alpha = alpha
        self.points = grid.points()
        self._clamp_tol = eigen_clamp_tol if eigen_clamp_tol is not None else settings.eigen_clamp_tol
        self._max_points = (
            cholesky_max_points if cholesky_max_points is not None else settings.cholesky_max_points
        )
        self._sqrt_eigs: np.ndarray | None = None
        self._factor: np.ndarray | None = None
        self._active: np.ndarray | None = None

        if alpha == 2.0:
            self.method = "linear"
        elif grid.starts_at_zero and self._prepare_circulant():
            self.method = "circulant"
        else:
            self._prepare_cholesky()
            self.method = "cholesky"

    def _prepare_circulant(self) -> bool:
        n = self.grid.n_points - 1
        gamma = increment_autocovariance(n, self.grid.spacing, self.alpha)
        row = np.concatenate([gamma, gamma[n - 1:0:-1]])
        eigs = np.fft.fft(row).real
        largest = eigs.max()
        smallest = eigs.min()
        if smallest < 0:
            if -smallest > self._clamp_tol * largest:
                logger.warning(
                    "circulant embedding not nonnegative, using cholesky",
                    alpha=self.alpha,
                    n_points=self.grid.n_points,
                    min_eigenvalue=float(smallest),
                )
                return False
            logger.debug("clamping tiny negative eigenvalues", min_eigenvalue=float(smallest))
            eigs = np.clip(eigs, 0.0, None)
        self._sqrt_eigs = np.sqrt(eigs / row.size)
        return True

    def _prepare_cholesky(self) -> None:
        if self.grid.n_points > self._max_points:
            raise CapacityError(self.grid.n_points, self._max_points)
        active = self.points != 0.0
        cov = fbm_covariance_matrix(self.points[active], self.alpha)
        try:
            factor = linalg.cholesky(cov, lower=True)
        except linalg.LinAlgError:
            logger.warning(
                "path covariance not positive definite, using clamped eigendecomposition",
                alpha=self.alpha,
                n_points=int(active.sum()),
            )
            eigvals, eigvecs = linalg.eigh(cov)
            factor = eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))
        self._active = active
        self._factor = factor

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Array of shape (n, n_points), one path per row."""
        if self.method == "linear":
            return rng.standard_normal((n, 1)) * self.points[None, :]
        if self.method == "circulant":
            return self._sample_circulant(rng, n)
        return self._sample_cholesky(rng, n)

    def _sample_circulant(self, rng: np.random.Generator, n: int) -> np.ndarray:
        m = self.grid.n_points - 1
        pairs = (n + 1) // 2
        size = self._sqrt_eigs.size
        z = rng.standard_normal((pairs, size)) + 1j * rng.standard_normal((pairs, size))
        # real and imaginary parts are independent noise samples
        noise = np.fft.fft(self._sqrt_eigs * z, axis=1)[:, :m]
        increments = np.concatenate([noise.real, noise.imag])[:n]
        paths = np.zeros((n, m + 1))
        np.cumsum(increments, axis=1, out=paths[:, 1:])
        return paths

    def _sample_cholesky(self, rng: np.random.Generator, n: int) -> np.ndarray:
        z = rng.standard_normal((n, self._factor.shape[1]))
        paths = np.zeros((n, self.grid.n_points))
        paths[:, self._active] = z @ self._factor.T
        return paths


def sample_fbm_paths(
    grid: GridSpec,
    alpha: float,
    n_paths: int,
    seed: int,
    stream: int = STREAM_PRIMARY,
) -> np.ndarray:
    """Batch of independent paths, identical for any worker count."""
    settings = get_settings()
    sampler = FbmSampler(grid, alpha)

    def draw(block: int, n: int) -> np.ndarray:
        return sampler.sample(block_rng(seed, stream, block), n)

    blocks = run_blocks(draw, n_paths, settings.block_size, settings.worker_count)
    return np.concatenate(blocks, axis=0)


def simulate_fbm(grid: GridSpec, alpha: float, seed: int) -> FbmPath:
    """One exact fBm path on a grid starting at 0."""
    check_alpha(alpha)
    if not grid.starts_at_zero:
        raise DomainError("grid.start", grid.start, "fBm paths are simulated on grids starting at 0")
    values = sample_fbm_paths(grid, alpha, 1, seed)[0]
    return FbmPath(grid=grid, values=values, alpha=alpha)


def _field_paths(
    alpha1: float,
    alpha2: float,
    s_grid: GridSpec,
    t_grid: GridSpec,
    seed: int,
) -> tuple[np.ndarray, np.ndarray]:
    check_alpha(alpha1, "alpha1")
    check_alpha(alpha2, "alpha2")
    x = sample_fbm_paths(s_grid, alpha1, 1, seed, STREAM_PRIMARY)[0]
    y = sample_fbm_paths(t_grid, alpha2, 1, seed, STREAM_SECONDARY)[0]
    return x, y


def simulate_w_field(
    alpha1: float,
    alpha2: float,
    s_grid: GridSpec,
    t_grid: GridSpec,
    seed: int,
) -> FieldSample:
    """W(s,t) = sqrt2 B1(s) + sqrt2 B2(t) - |s|^a1 - |t|^a2 with independent B1, B2."""
    x, y = _field_paths(alpha1, alpha2, s_grid, t_grid, seed)
    s = s_grid.points()
    t = t_grid.points()
    drift = np.abs(s)[:, None] ** alpha1 + np.abs(t)[None, :] ** alpha2
    values = SQRT2 * (x[:, None] + y[None, :]) - drift
    return FieldSample(s_grid=s_grid, t_grid=t_grid, values=values)


def simulate_fbm_sum_field(
    alpha1: float,
    alpha2: float,
    s_grid: GridSpec,
    t_grid: GridSpec,
    seed: int,
) -> FieldSample:
    """B1(s) + B2(t), one path per axis broadcast to the product grid."""
    x, y = _field_paths(alpha1, alpha2, s_grid, t_grid, seed)
    return FieldSample(s_grid=s_grid, t_grid=t_grid, values=x[:, None] + y[None, :])


def fbm_sum_std(s: np.ndarray, t: np.ndarray, alpha1: float, alpha2: float) -> np.ndarray:
    """Standard deviation of B1(s) + B2(t)."""
    return np.sqrt(np.abs(s) ** alpha1 + np.abs(t) ** alpha2)
