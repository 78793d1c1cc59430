"""Logarithmic index functions and the low-order rate calculus."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hilbert_scale import DiagonalScale


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class LogIndexFunction:
    """``phi(t) = (-ln t)^{-kappa}`` on ``(0, cutoff]``."""

    kappa: float
    cutoff: float = 0.9

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")
        if not 0 < self.cutoff < 1:
            raise ValueError("cutoff must lie in (0, 1)")

    def __call__(self, t):
        return phi_eval(self, t)


def phi_eval(f: LogIndexFunction, t):
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0) or np.any(t_arr > f.cutoff):
        raise DomainError(f"phi is only defined on (0, {f.cutoff}]")
    out = (-np.log(t_arr)) ** (-f.kappa)
    return float(out) if out.ndim == 0 else out


@dataclass
class QualificationReport:
    theta: float
    C: float
    alphas: list[float]
    ratios: list[float]
    passed: list[bool] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.passed)

    @property
    def worst_ratio(self) -> float:
        return max(self.ratios)


def qualification_check(f: LogIndexFunction, scale: DiagonalScale, theta: float,
                        alpha_grid, C: float) -> QualificationReport:
    """Check ``sup_lam alpha lam^theta phi(lam) / (lam + alpha) <= C alpha^theta phi(alpha)``.

    The supremum runs over the eigenvalues of ``G`` inside the domain of
    ``phi``. The reported ratio is the left side divided by
    ``alpha^theta phi(alpha)``, so a pass means ``ratio <= C``.
    """
    if not 0 <= theta < 1:
        raise ValueError("theta must lie in [0, 1)")
    g = scale.g_eigenvalues()
    lam = g[g <= f.cutoff]
    phi_lam = phi_eval(f, lam)
    alphas, ratios, passed = [], [], []
    for alpha in alpha_grid:
        alpha = float(alpha)
        lhs = np.max(alpha * lam**theta * phi_lam / (lam + alpha))
        ratio = float(lhs / (alpha**theta * phi_eval(f, alpha)))
        alphas.append(alpha)
        ratios.append(ratio)
        passed.append(ratio <= C)
    return QualificationReport(theta=theta, C=C, alphas=alphas, ratios=ratios, passed=passed)


def psi(f: LogIndexFunction, a: float, alpha: float) -> float:
    """``phi(alpha) alpha^{a/(2a+2)}``."""
    return phi_eval(f, alpha) * alpha ** (a / (2 * a + 2))


def psi_inverse(f: LogIndexFunction, a: float, delta: float, rtol: float = 1e-12,
                max_iter: int = 200) -> float:
    """Solve ``psi(alpha) = delta`` by bisection in ``log(alpha)``."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    top = psi(f, a, f.cutoff)
    if delta > top:
        raise DomainError(f"delta={delta} exceeds psi(cutoff)={top}")
    lo, hi = math.log(1e-300), math.log(f.cutoff)
    if psi(f, a, math.exp(lo)) > delta:
        raise DomainError(f"delta={delta} is below the representable range of psi")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        alpha = math.exp(mid)
        value = psi(f, a, alpha)
        if abs(value - delta) <= rtol * delta:
            return alpha
        if value < delta:
            lo = mid
        else:
            hi = mid
    raise RuntimeError("bisection did not reach the requested tolerance")


def rate_ratio(errors, f: LogIndexFunction) -> list[float]:
    """``error / phi(delta)`` for each ``(delta, error)`` pair."""
    return [float(err / phi_eval(f, delta)) for delta, err in errors]
