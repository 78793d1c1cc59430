"""Auxiliary elements and the rate functions of the error analysis.

The auxiliary element ``u_alpha = u0 + G (G + alpha)^{-1} (u_exact - u0)``
minimizes ``||u - u_exact||_{-a}^2 + alpha ||u - u0||_1^2`` and acts as a
smooth proxy for the exact solution. The functions ``f1 .. f9`` below
follow their defining diagonal sums; only ``f4`` has a second branch for
``alpha`` so large that ``u_alpha`` leaves the domain.
"""
from __future__ import annotations

import csv
from dataclasses import asdict, dataclass

import numpy as np

from .model import ProblemSpec, forward
from .hilbert_scale import filter_factors


@dataclass(frozen=True)
class AuxDiagnostics:
    alpha: float
    f1: float
    f2: float
    f3: float
    f4: float
    f5: float
    f6: float
    f7: float
    f8: float
    f9: float
    K1: float
    K2: float
    in_domain: bool

    @property
    def bound_f9(self) -> float:
        return self.f9


def auxiliary_element(p: ProblemSpec, alpha: float) -> np.ndarray:
    return p.initial_guess + filter_factors(p.scale, alpha) * (p.exact_solution - p.initial_guess)


def auxiliary_element_residual_form(p: ProblemSpec, alpha: float) -> np.ndarray:
    """Same element written as ``u_exact - alpha (G + alpha)^{-1} (u_exact - u0)``."""
    g = p.scale.g_eigenvalues()
    return p.exact_solution - alpha / (g + alpha) * (p.exact_solution - p.initial_guess)


def _damped_source(p: ProblemSpec, alpha: float) -> np.ndarray:
    # alpha (G + alpha)^{-1} (u_exact - u0)
    g = p.scale.g_eigenvalues()
    return alpha / (g + alpha) * (p.exact_solution - p.initial_guess)


def rate_functions(p: ProblemSpec, alpha: float) -> AuxDiagnostics:
    """Evaluate ``f1 .. f9`` and the constants ``K1``, ``K2`` at ``alpha``."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    a = p.degree_a
    s = 2 * a + 2
    v = _damped_source(p, alpha)
    f1 = float(np.linalg.norm(v))
    f2 = alpha ** (-a / s) * float(np.linalg.norm(p.scale.g_power(a / s) * v))
    f3 = alpha ** (-(2 * a + 1) / s) * float(np.linalg.norm(p.scale.g_power((2 * a + 1) / s) * v))

    in_domain = p.in_domain(auxiliary_element(p, alpha))
    if in_domain:
        f4 = p.c_b * f2 + f3
    else:
        f4 = float(np.linalg.norm(forward(p, p.initial_guess) - p.exact_data)) / alpha ** (a / s)
    f5 = f4 / p.c_a
    f6 = f2 + f5
    f7 = f3 + f4
    f8 = max(f6, f7)
    K1 = 2.0 / p.c_a
    return AuxDiagnostics(alpha=alpha, f1=f1, f2=f2, f3=f3, f4=f4, f5=f5, f6=f6, f7=f7,
                          f8=f8, f9=f1 + f8, K1=K1, K2=max(K1, 1.0), in_domain=in_domain)


def error_bound(p: ProblemSpec, alpha: float, delta: float) -> float:
    """``f9(alpha) + K2 delta / alpha^{a/(2a+2)}``."""
    if not delta >= 0:
        raise ValueError("delta must be nonnegative")
    d = rate_functions(p, alpha)
    return d.f9 + d.K2 * delta / alpha ** p.rate_exponent


def misfit_bound(p: ProblemSpec, alpha: float, delta: float) -> float:
    """Bound on ``max(misfit, sqrt(alpha) penalty)``: ``f4 alpha^{a/(2a+2)} + delta``."""
    return rate_functions(p, alpha).f4 * alpha ** p.rate_exponent + delta


def minus_a_bound(p: ProblemSpec, alpha: float, delta: float) -> float:
    """Bound on ``||u_alpha^delta - u_exact||_{-a}``: ``f5 alpha^{a/(2a+2)} + K1 delta``."""
    d = rate_functions(p, alpha)
    return d.f5 * alpha ** p.rate_exponent + d.K1 * delta


CSV_COLUMNS = ["alpha", "f1", "f2", "f3", "f4", "f9", "bound", "measured_error"]


def write_diagnostics_csv(rows, path) -> None:
    """Rows are dicts keyed by :data:`CSV_COLUMNS`."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in rows:
            w.writerow(["%.6e" % row[c] for c in CSV_COLUMNS])


def diagnostics_row(diag: AuxDiagnostics, bound: float, measured: float) -> dict:
    row = {k: v for k, v in asdict(diag).items() if k in CSV_COLUMNS}
    row.update(bound=bound, measured_error=measured)
    return row
