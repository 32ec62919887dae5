"""Constants providers used by the asymptotic formulas."""

import math
import threading
from collections.abc import Mapping, Sequence
from typing import Protocol

import structlog

from src.app.exceptions import ConstantUnavailableError
from src.domain import constants, oracles
from src.domain.models import ConstantEstimate, ConstantKind, ConstantRequest
from src.infra.config import get_settings

logger = structlog.get_logger(__name__)

PICKANDS_ALPHA2 = 1.0 / math.sqrt(math.pi)


class ConstantsProvider(Protocol):
    """Source of Pickands, Piterbarg and generalized rate constants."""

    def get(self, request: ConstantRequest) -> ConstantEstimate: ...

    def get_many(self, requests: Sequence[ConstantRequest]) -> list[ConstantEstimate]: ...


def _exact(request: ConstantRequest, value: float, method: str = "closed-form") -> ConstantEstimate:
    return ConstantEstimate(
        constant_id=request.kind.value + ("_hat" if request.one_sided else ""),
        value=value,
        stderr=0.0,
        raw_value=value,
        raw_stderr=0.0,
        alpha1=request.alpha,
        gamma=request.gamma,
        b=request.b,
        converged=True,
        method=method,
    )


def closed_form(request: ConstantRequest) -> ConstantEstimate | None:
    """Exactly known constants, or None."""
    alpha, gamma = request.alpha, request.gamma
    if request.kind == ConstantKind.PICKANDS:
        if alpha == 1.0:
            return _exact(request, 1.0)
        if alpha == 2.0:
            return _exact(request, PICKANDS_ALPHA2)
        return None
    if request.kind == ConstantKind.PITERBARG:
        if math.isinf(gamma):
            return _exact(request, 1.0, "symbolic")
        if gamma > 0 and alpha == 1.0:
            return _exact(request, oracles.brownian_piterbarg(gamma, request.one_sided))
        if gamma > 0 and alpha == 2.0:
            return _exact(request, oracles.gaussian_piterbarg(gamma, request.one_sided))
        return None
    if math.isinf(gamma):
        pickands = closed_form(ConstantRequest(kind=ConstantKind.PICKANDS, alpha=alpha))
        if pickands is None:
            return None
        scale = (abs(request.b) ** alpha + 1.0) ** (1.0 / alpha)
        return _exact(request, scale * pickands.value, "symbolic")
    return None


class MonteCarloConstants:
    """Estimates constants by simulation, memoized by rounded parameters.

    Every request is simulated with the same seed, so constants requested
    at different quadrature nodes share their random numbers.
    """

    def __init__(
        self,
        step: float | None = None,
        reps: int | None = None,
        seed: int = 0,
        ladder_1d: Sequence[float] | None = None,
        ladder_strip: Sequence[float] | None = None,
        extrapolate: bool = True,
        use_closed_forms: bool = True,
    ):
        settings = get_settings()
        self.step = step
        self.reps = reps
        self.seed = seed
        self.ladder_1d = list(ladder_1d) if ladder_1d else list(settings.default_ladder_1d)
        self.ladder_strip = list(ladder_strip) if ladder_strip else list(settings.default_ladder_strip)
        self.extrapolate = extrapolate
        self.use_closed_forms = use_closed_forms
        self._decimals = settings.constant_cache_decimals
        self._cache: dict[tuple, ConstantEstimate] = {}
        self._lock = threading.Lock()

    def _estimate(self, request: ConstantRequest) -> ConstantEstimate:
        if self.use_closed_forms:
            exact = closed_form(request)
            if exact is not None:
                return exact
        if request.kind == ConstantKind.PICKANDS:
            return constants.pickands(
                request.alpha, self.ladder_1d, self.step, self.reps, self.seed, self.extrapolate
            )
        if request.kind == ConstantKind.PITERBARG:
            return constants.piterbarg(
                request.alpha,
                request.gamma,
                self.ladder_1d,
                request.one_sided,
                self.step,
                self.reps,
                self.seed,
                self.extrapolate,
            )
        return constants.gen_pickands_rate(
            request.alpha,
            request.gamma,
            request.b,
            request.one_sided,
            self.ladder_strip,
            self.step,
            self.reps,
            self.seed,
            self.extrapolate,
        )

    def get(self, request: ConstantRequest) -> ConstantEstimate:
        key = request.key(self._decimals)
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached
        estimate = self._estimate(request)
        with self._lock:
            self._cache.setdefault(key, estimate)
            return self._cache[key]

    def get_many(self, requests: Sequence[ConstantRequest]) -> list[ConstantEstimate]:
        return [self.get(request) for request in requests]

    @property
    def cache_size(self) -> int:
        with self._lock:
            return len(self._cache)


class PinnedConstants:
    """Fixed table of constants keyed by ConstantRequest.label().

    Exactly known constants are filled in unless the table overrides them;
    anything else missing raises ConstantUnavailableError.
    """

    def __init__(self, values: Mapping[str, float] | None = None, use_closed_forms: bool = True):
        self.values = dict(values or {})
        self.use_closed_forms = use_closed_forms

    def get(self, request: ConstantRequest) -> ConstantEstimate:
        label = request.label()
        if label in self.values:
            return _exact(request, float(self.values[label]), "pinned")
        if self.use_closed_forms:
            exact = closed_form(request)
            if exact is not None:
                return exact
        logger.warning("constant not pinned", constant=label)
        raise ConstantUnavailableError(label, "not in the pinned table and no closed form is known")

    def get_many(self, requests: Sequence[ConstantRequest]) -> list[ConstantEstimate]:
        return [self.get(request) for request in requests]
