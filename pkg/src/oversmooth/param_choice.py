"""A priori power rule and the sequential discrepancy principle."""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

from .model import NoisySample, ProblemSpec
from .solver import RegResult, minimize_tikhonov


class NoCrossingError(RuntimeError):
    """The discrepancy level was not crossed within the allowed grid steps."""


class BorderlineWarning(UserWarning):
    pass


@dataclass(frozen=True)
class APriori:
    c0: float = 1.0
    kappa: float = 2.0

    def __post_init__(self):
        if not (self.c0 > 0 and self.kappa > 0):
            raise ValueError("c0 and kappa must be positive")


@dataclass(frozen=True)
class Discrepancy:
    b: float = 4.0
    theta: float = 10.0
    alpha0: float = 1.0
    max_steps: int = 60

    def __post_init__(self):
        if not self.b > 1:
            raise ValueError("b must exceed 1")
        if not self.theta > 1:
            raise ValueError("theta must exceed 1")
        if not self.alpha0 > 0:
            raise ValueError("alpha0 must be positive")


def kappa_regime(kappa: float, a: float) -> str:
    """Classify ``alpha ~ delta^kappa``.

    ``"A"``: ``0 < kappa < 2`` (delta^2/alpha -> 0); ``"B"``: ``kappa == 2``
    (delta^2/alpha bounded); ``"C"``: ``2 < kappa < 2 + 2/a``
    (delta^2/alpha -> inf, still convergent); ``"borderline"`` at
    ``kappa == 2 + 2/a``; ``"divergent"`` beyond.
    """
    limit = 2 + 2 / a
    if kappa < 2:
        return "A"
    if kappa == 2:
        return "B"
    if kappa < limit:
        return "C"
    if math.isclose(kappa, limit):
        return "borderline"
    return "divergent"


def choose_apriori(delta: float, rule: APriori, a: float = 1.0) -> float:
    """``alpha = c0 delta^kappa``; warns when ``kappa`` leaves the convergent range."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    regime = kappa_regime(rule.kappa, a)
    if regime in ("borderline", "divergent"):
        warnings.warn(f"kappa={rule.kappa} is {regime} for a={a}; convergence is not guaranteed",
                      BorderlineWarning, stacklevel=2)
    return rule.c0 * delta**rule.kappa


class Branch(enum.Enum):
    INFINITE_ALPHA = "infinite"
    DESCENDING = "descending"
    ASCENDING = "ascending"


@dataclass
class ChoiceOutcome:
    alpha_selected: float
    result: RegResult
    iterations: int
    branch: Branch
    alpha_partner: float
    c: float
    probes: list[tuple[float, float]] = field(default_factory=list)


def choose_discrepancy(p: ProblemSpec, sample: NoisySample, rule: Discrepancy,
                       solver=minimize_tikhonov) -> ChoiceOutcome:
    """Sequential discrepancy principle on the grid ``alpha0 * theta^k``.

    The selected ``alpha`` and its partner ``alpha'`` in
    ``[alpha, theta alpha]`` satisfy
    ``misfit(alpha) <= b delta <= misfit(alpha')``.
    """
    delta = sample.delta
    if not delta > 0:
        raise ValueError("the discrepancy principle needs delta > 0")
    level = rule.b * delta
    cache: dict[int, RegResult] = {}
    probes: list[tuple[float, float]] = []

    def at(k: int) -> RegResult:
        # k indexes alpha0 * theta^k
        if k not in cache:
            alpha = rule.alpha0 * rule.theta**k
            cache[k] = solver(p, sample.data, alpha)
            probes.append((alpha, cache[k].misfit))
        return cache[k]

    top = solver(p, sample.data, math.inf)
    if top.misfit <= level:
        return ChoiceOutcome(math.inf, top, 0, Branch.INFINITE_ALPHA, math.inf, rule.theta, probes)

    if at(0).misfit >= level:
        for step in range(1, rule.max_steps + 1):
            if at(-step).misfit <= level <= at(-step + 1).misfit:
                r = at(-step)
                return ChoiceOutcome(r.alpha, r, step, Branch.DESCENDING,
                                     cache[-step + 1].alpha, rule.theta, probes)
    else:
        for step in range(1, rule.max_steps + 1):
            if at(step - 1).misfit <= level <= at(step).misfit:
                r = at(step - 1)
                return ChoiceOutcome(r.alpha, r, step, Branch.ASCENDING,
                                     cache[step].alpha, rule.theta, probes)
    raise NoCrossingError(f"no crossing of b*delta={level:.3e} within {rule.max_steps} steps")
