"""Exact Tikhonov minimization for diagonal problems.

For the diagonal quadratic operator the functional
``||F(u) - f||^2 + alpha ||u - u0||_1^2`` splits into independent scalar
quartics

    h_n(u) = (a_n (c u + u^2) - f_n)^2 + alpha b_n^2 (u - u0_n)^2 + lam u^2,

whose global minimum sits at one of the (at most three) real roots of the
cubic ``h_n'``. ``lam`` is a Lagrange multiplier that is only switched on
when the unconstrained minimizer leaves the domain ball.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cubic import real_cubic_roots
from .hilbert_scale import SeqVector, norm_tau
from .model import Kind, NoisySample, ProblemSpec, forward

BALL_TOL = 1e-10


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class RegResult:
    """A regularized solution and its diagnostics.

    ``alpha = inf`` stands for the initial guess itself.
    """

    u: np.ndarray
    alpha: float
    misfit: float
    penalty: float
    tikhonov_value: float
    multiplier: float = 0.0

    def error_norms(self, p: ProblemSpec) -> dict[str, float]:
        """Distance to the exact solution in ``||.||``, ``||.||_{-a}`` and ``||.||_1``."""
        e = self.u - p.exact_solution
        return {
            "l2": float(np.linalg.norm(e)),
            "minus_a": norm_tau(p.scale, e, -p.degree_a),
            "one": norm_tau(p.scale, e, 1.0),
        }


def _result(p: ProblemSpec, f_delta, u, alpha, multiplier=0.0) -> RegResult:
    misfit = float(np.linalg.norm(forward(p, u) - f_delta))
    penalty = norm_tau(p.scale, u - p.initial_guess, 1.0)
    reg = 0.0 if math.isinf(alpha) else alpha * penalty**2
    return RegResult(u=u, alpha=alpha, misfit=misfit, penalty=penalty,
                     tikhonov_value=misfit**2 + reg, multiplier=multiplier)


def quartic_value(a, c, f, weight, u0, lam, u):
    """``(a(cu + u^2) - f)^2 + weight (u - u0)^2 + lam u^2``, broadcasting."""
    r = a * (c * u + u * u) - f
    return r * r + weight * (u - u0) ** 2 + lam * u * u


def minimize_quartics(a, c, f, weight, u0, lam=0.0) -> np.ndarray:
    """Global minimizers of the scalar quartics, one per coordinate.

    ``weight`` is ``alpha b_n^2``. Ties between stationary points go to the
    one closer to ``u0``.
    """
    a, f, weight, u0 = (np.asarray(x, dtype=float) for x in (a, f, weight, u0))
    if np.any(a == 0):
        raise SolverError("zero forward multiplier makes the quartic degenerate")
    two_a2 = 2.0 * a * a
    mu = weight + lam
    c2 = np.full(a.shape, 1.5 * c)
    c1 = 0.5 * c * c + (mu - 2.0 * a * f) / two_a2
    c0 = -(a * c * f + weight * u0) / two_a2
    roots = real_cubic_roots(c2, c1, c0)
    if np.any(np.all(np.isnan(roots), axis=1)):
        raise SolverError("cubic without a real root")
    vals = quartic_value(a[:, None], c, f[:, None], weight[:, None], u0[:, None], lam, roots)
    vals = np.where(np.isnan(roots), np.inf, vals)
    best = vals.min(axis=1, keepdims=True)
    dist = np.where(vals == best, np.abs(roots - u0[:, None]), np.inf)
    pick = np.argmin(dist, axis=1)
    return roots[np.arange(roots.shape[0]), pick]


def _unconstrained(p: ProblemSpec, f_delta, alpha, lam):
    weight = alpha * p.scale.power(2.0)
    a = p.forward_multipliers
    if p.kind is Kind.DIAGONAL_QUADRATIC:
        return minimize_quartics(a, p.linear_coefficient, f_delta, weight, p.initial_guess, lam)
    # scalar quadratic (a^2 + weight + lam) u^2 - 2 (a f + weight u0) u + const
    lead = a * a + weight + lam
    lin = -2.0 * (a * f_delta + weight * p.initial_guess)
    return -lin / (2.0 * lead)


def minimize_tikhonov(p: ProblemSpec, f_delta: SeqVector, alpha: float) -> RegResult:
    """Global minimizer of the Tikhonov functional over the domain ball."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    f_delta = np.asarray(f_delta, dtype=float)
    if math.isinf(alpha):
        return _result(p, f_delta, p.initial_guess.copy(), alpha)
    u = _unconstrained(p, f_delta, alpha, 0.0)
    rho = p.domain_radius
    if np.linalg.norm(u) <= rho:
        return _result(p, f_delta, u, alpha)

    # ||u(lam)|| is non-increasing in lam; bracket, then bisect onto the sphere
    lo, hi = 0.0, 1.0
    u_hi = _unconstrained(p, f_delta, alpha, hi)
    while np.linalg.norm(u_hi) > rho:
        lo, hi = hi, 2.0 * hi
        if hi > 1e300:
            raise SolverError("could not bracket the ball constraint")
        u_hi = _unconstrained(p, f_delta, alpha, hi)
    for _ in range(400):
        if abs(np.linalg.norm(u_hi) - rho) <= BALL_TOL or hi - lo <= 1e-15 * hi:
            break
        mid = 0.5 * (lo + hi)
        u_mid = _unconstrained(p, f_delta, alpha, mid)
        if np.linalg.norm(u_mid) > rho:
            lo = mid
        else:
            hi, u_hi = mid, u_mid
    return _result(p, f_delta, u_hi, alpha, multiplier=hi)


def solve_linear_fractional(p: ProblemSpec, f_delta: SeqVector, alpha: float) -> RegResult:
    """Solve the normal equation ``(A*A + alpha B^2) u = A* f + alpha B^2 u0``.

    With ``B = (A*A)^{-q/2}`` this is fractional Tikhonov regularization.
    """
    if p.kind is not Kind.DIAGONAL_LINEAR:
        raise ValueError("solve_linear_fractional needs a DIAGONAL_LINEAR problem")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    f_delta = np.asarray(f_delta, dtype=float)
    a = p.forward_multipliers
    b2 = p.scale.power(2.0)
    operator = a * a + alpha * b2
    rhs = a * f_delta + alpha * b2 * p.initial_guess
    return _result(p, f_delta, rhs / operator, alpha)


def normal_equation_residual(p: ProblemSpec, f_delta: SeqVector, alpha: float, u: SeqVector) -> float:
    """Relative residual of the linear normal equation at ``u``."""
    a = p.forward_multipliers
    b2 = p.scale.power(2.0)
    rhs = a * f_delta + alpha * b2 * p.initial_guess
    lhs = a * (a * u) + alpha * b2 * u
    return float(np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs))


def misfit_at(p: ProblemSpec, sample: NoisySample, alpha: float, solver=minimize_tikhonov) -> float:
    """``||F(u_alpha) - f_delta||`` for a freshly computed minimizer."""
    return solver(p, sample.data, alpha).misfit
