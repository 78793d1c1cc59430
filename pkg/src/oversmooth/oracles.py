"""Brute-force reference computations used by the checks and the tests.

Nothing here shares code with the solvers it is meant to check.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np


def grid_minimize(func, lo: float, hi: float, points: int = 200001, tol: float = 1e-11,
                  zoom: int = 41, exact=None):
    """Global minimizer of a scalar function by dense sampling plus zooming.

    ``func`` must accept arrays. Near a minimum float values are flat to
    ``sqrt(eps)`` in the argument, so if ``exact`` (a scalar function
    returning a :class:`~fractions.Fraction`) is given it drives the zoom
    stages. Returns ``(argmin, min_value)``.
    """
    x = np.linspace(lo, hi, points)
    v = func(x)
    i = int(np.argmin(v))
    step = (hi - lo) / (points - 1)
    best_x = float(x[i])
    while step > tol:
        xs = np.linspace(best_x - step, best_x + step, zoom)
        if exact is None:
            best_x = float(xs[int(np.argmin(func(xs)))])
        else:
            best_x = float(min(xs, key=lambda t: exact(float(t))))
        step = 2 * step / (zoom - 1)
    return best_x, float(func(np.array([best_x]))[0])


def scalar_tikhonov(a: float, c: float, f: float, alpha: float, b: float, u0: float):
    """The one-coordinate functional ``u -> (a(cu + u^2) - f)^2 + alpha b^2 (u - u0)^2``."""
    def h(u):
        return (a * (c * u + u**2) - f) ** 2 + alpha * b**2 * (u - u0) ** 2
    return h


def scalar_tikhonov_exact(a: float, c: float, f: float, alpha: float, b: float, u0: float):
    """Rational-arithmetic twin of :func:`scalar_tikhonov` for float arguments."""
    a, c, f, u0 = Fraction(a), Fraction(c), Fraction(f), Fraction(u0)
    w = Fraction(alpha) * Fraction(b) ** 2

    def h(u):
        u = Fraction(u)
        return (a * (c * u + u * u) - f) ** 2 + w * (u - u0) ** 2
    return h


def quadratic_minimizer(weight_fit, target, weight_pen, center):
    """Minimizer of ``weight_fit (u - target)^2 + weight_pen (u - center)^2``."""
    return (weight_fit * target + weight_pen * center) / (weight_fit + weight_pen)
