"""Invariant suite: every structural property, checked numerically.

Each check receives a :class:`SuiteContext` and returns ``(passed, detail)``.
Failures are data; :func:`run_invariant_suite` never raises on them.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import auxiliary
from .experiments import TABLE1_LADDER, TABLE2_LADDER, ExperimentConfig, row_seed
from .hilbert_scale import filter_factors, norm_tau
from .model import (Kind, build_linear_problem, forward, generate_noise, log_source_element,
                    random_ball_point, structural_ratio)
from .oracles import grid_minimize, scalar_tikhonov, scalar_tikhonov_exact
from .param_choice import APriori, Discrepancy, choose_apriori, choose_discrepancy
from .rates import LogIndexFunction, phi_eval, psi, psi_inverse, qualification_check
from .solver import minimize_quartics, minimize_tikhonov, normal_equation_residual, solve_linear_fractional

ALPHA_GRID_14 = tuple(10.0**-k for k in range(14))
SMALL_ALPHAS = tuple(10.0**-k for k in range(2, 11))


@dataclass
class SuiteContext:
    cfg: ExperimentConfig
    solver: object = minimize_tikhonov
    seed: int = 0
    _problem: object = None

    @property
    def problem(self):
        if self._problem is None:
            self._problem = self.cfg.problem()
        return self._problem

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


@dataclass
class CheckResult:
    name: str
    module: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def to_json(self) -> str:
        return json.dumps({
            "passed": self.ok,
            "failed": self.failed,
            "checks": [r.__dict__ for r in self.results],
        }, indent=2)


CHECKS = []


def check(module):
    def register(fn):
        CHECKS.append((module, fn))
        return fn
    return register


# hilbert_scale -------------------------------------------------------------

@check("hilbert_scale")
def interpolation_inequality(ctx):
    p = ctx.problem
    a = p.degree_a
    rng = ctx.rng(1)
    worst = 0.0
    for _ in range(100):
        v = rng.standard_normal(p.size) * p.scale.power(-rng.uniform(0.6, 2.0))
        lhs = np.linalg.norm(v)
        rhs = norm_tau(p.scale, v, -a) ** (1 / (a + 1)) * norm_tau(p.scale, v, 1.0) ** (a / (a + 1))
        worst = max(worst, lhs / rhs)
    return worst <= 1 + 1e-12, f"max lhs/rhs = {worst:.6f}"


@check("hilbert_scale")
def spectral_filter_bounds(ctx):
    scale = ctx.problem.scale
    g = scale.g_eigenvalues()
    bad = 0
    for alpha in ALPHA_GRID_14:
        bad += int(np.sum(filter_factors(scale, alpha) > 1))
        bad += int(np.sum(1 / (g + alpha) > 1 / alpha))
        for theta in (0, 0.25, 0.5, 0.75, 1):
            bad += int(np.sum(g**theta / (g + alpha) > alpha ** (theta - 1) * (1 + 1e-14)))
    return bad == 0, f"{bad} violations"


@check("hilbert_scale")
def norm_monotone_in_tau(ctx):
    p = ctx.problem
    rng = ctx.rng(2)
    taus = np.linspace(-3, 1, 9)
    bad = 0
    for _ in range(20):
        u = rng.standard_normal(p.size) * p.scale.power(-1.5)
        vals = [norm_tau(p.scale, u, t) for t in taus]
        bad += sum(x > y * (1 + 1e-14) for x, y in zip(vals, vals[1:]))
    return bad == 0, f"{bad} violations"


# model ---------------------------------------------------------------------

@check("model")
def forward_exact_on_solution(ctx):
    p = ctx.problem
    err = float(np.linalg.norm(forward(p, p.exact_solution) - p.exact_data))
    return err == 0.0, f"||F(u_exact) - f|| = {err:.3e}"


@check("model")
def noise_bound(ctx):
    p = ctx.problem
    rng = ctx.rng(3)
    worst = 0.0
    for _ in range(100):
        delta = 10 ** rng.uniform(-7, -1)
        sample = generate_noise(p, delta, int(rng.integers(2**31)))
        worst = max(worst, np.linalg.norm(sample.data - p.exact_data) / delta)
    return worst <= 1.0, f"max ||f_delta - f|| / delta = {worst:.6f}"


@check("model")
def structural_constants(ctx):
    p = ctx.problem
    rng = ctx.rng(4)
    ratios = [structural_ratio(p, random_ball_point(p, rng)) for _ in range(100)]
    lo, hi = min(ratios), max(ratios)
    return p.c_a <= lo and hi <= p.c_b, f"ratios in [{lo:.4f}, {hi:.4f}]"


@check("model")
def source_condition_identity(ctx):
    p, cfg = ctx.problem, ctx.cfg
    phi = LogIndexFunction(cfg.kappa)
    w = log_source_element(p.size, cfg.q, cfg.kappa, p.scale.smoothing_exponent)
    g = p.scale.g_eigenvalues()[1:]
    diff = float(np.max(np.abs(p.exact_solution[1:] - phi_eval(phi, g) * w[1:])))
    return diff <= 1e-12, f"max deviation {diff:.3e}"


# solver --------------------------------------------------------------------

@check("solver")
def global_optimality(ctx):
    rng = ctx.rng(5)
    worst_arg = worst_val = 0.0
    for _ in range(50):
        a = rng.uniform(0.05, 1.0)
        b = rng.uniform(1.0, 20.0)
        f = rng.uniform(-5.0, 15.0)
        alpha = 10 ** rng.uniform(-8, 0)
        u0 = rng.uniform(-1.0, 1.0)
        u = minimize_quartics(np.array([a]), 7.0, np.array([f]), np.array([alpha * b * b]),
                              np.array([u0]))[0]
        h = scalar_tikhonov(a, 7.0, f, alpha, b, u0)
        x_ref, v_ref = grid_minimize(h, -40.0, 40.0,
                                     exact=scalar_tikhonov_exact(a, 7.0, f, alpha, b, u0))
        worst_arg = max(worst_arg, abs(u - x_ref))
        worst_val = max(worst_val, (h(u) - v_ref) / max(abs(v_ref), 1e-300))
    return worst_arg <= 1e-8 and worst_val <= 1e-12, \
        f"max |u - u_grid| = {worst_arg:.2e}, max rel value excess = {worst_val:.2e}"


@check("solver")
def minimizer_property(ctx):
    p = ctx.problem
    rng = ctx.rng(6)
    sample = generate_noise(p, 1e-3, row_seed(ctx.seed, 0))
    bad = 0
    for alpha in (1e-2, 1e-5, 1e-8):
        res = ctx.solver(p, sample.data, alpha)

        def T(v):
            mis = np.linalg.norm(forward(p, v) - sample.data)
            return mis**2 + alpha * norm_tau(p.scale, v - p.initial_guess, 1.0) ** 2

        tv = T(res.u)
        competitors = [p.initial_guess, p.exact_solution] + [random_ball_point(p, rng) for _ in range(20)]
        bad += sum(tv > T(v) * (1 + 1e-12) for v in competitors)
    return bad == 0, f"{bad} competitors beat the minimizer"


@check("solver")
def misfit_penalty_monotone(ctx):
    p = ctx.problem
    bad = 0
    for s in range(3):
        sample = generate_noise(p, 1e-3, row_seed(ctx.seed + s, 0))
        res = [ctx.solver(p, sample.data, alpha) for alpha in ALPHA_GRID_14]
        # ALPHA_GRID_14 is decreasing: misfit must not grow, penalty must not shrink
        bad += sum(r2.misfit > r1.misfit for r1, r2 in zip(res, res[1:]))
        bad += sum(r2.penalty < r1.penalty for r1, r2 in zip(res, res[1:]))
    return bad == 0, f"{bad} violations"


@check("solver")
def misfit_penalty_bound(ctx):
    p = ctx.problem
    worst = 0.0
    for i, delta in enumerate((1e-3, 1e-5)):
        sample = generate_noise(p, delta, row_seed(ctx.seed, i))
        for alpha in SMALL_ALPHAS:
            r = ctx.solver(p, sample.data, alpha)
            lhs = max(r.misfit, math.sqrt(alpha) * r.penalty)
            worst = max(worst, lhs / auxiliary.misfit_bound(p, alpha, delta))
    return worst <= 1.0, f"max lhs/bound = {worst:.4f}"


@check("solver")
def linear_paths_agree(ctx):
    n = min(ctx.cfg.N, 500)
    from .hilbert_scale import DiagonalScale
    scale = DiagonalScale.natural(n, 1.0)
    rng = ctx.rng(7)
    u_true = rng.standard_normal(n) / np.arange(1, n + 1)
    lp = build_linear_problem(scale.power(-1.0), scale, u_true)
    f = forward(lp, u_true) + 1e-4 * rng.standard_normal(n) / math.sqrt(n)
    worst_diff = worst_res = 0.0
    for alpha in (1e-2, 1e-6, 1e-10):
        r1 = solve_linear_fractional(lp, f, alpha)
        r2 = minimize_tikhonov(lp, f, alpha)
        worst_diff = max(worst_diff, np.max(np.abs(r1.u - r2.u)) / np.max(np.abs(r1.u)))
        worst_res = max(worst_res, normal_equation_residual(lp, f, alpha, r1.u))
    return worst_diff <= 1e-12 and worst_res <= 1e-12, \
        f"path difference {worst_diff:.2e}, normal residual {worst_res:.2e}"


# auxiliary -----------------------------------------------------------------

@check("auxiliary")
def rate_function_identities(ctx):
    p = ctx.problem
    worst = 0.0
    for alpha in (10.0**-k for k in range(1, 11)):
        d = auxiliary.rate_functions(p, alpha)
        ua = auxiliary.auxiliary_element(p, alpha)
        e = ua - p.exact_solution
        pairs = [
            (np.linalg.norm(e), d.f1),
            (norm_tau(p.scale, e, -p.degree_a), d.f2 * alpha**p.rate_exponent),
            (norm_tau(p.scale, ua - p.initial_guess, 1.0), d.f3 * alpha ** (-1 / (2 * p.degree_a + 2))),
        ]
        for direct, via_f in pairs:
            worst = max(worst, abs(direct - via_f) / max(abs(direct), 1e-300))
    return worst <= 1e-10, f"max relative deviation {worst:.2e}"


@check("auxiliary")
def auxiliary_forms_agree(ctx):
    p = ctx.problem
    worst = 0.0
    for alpha in ALPHA_GRID_14:
        u1 = auxiliary.auxiliary_element(p, alpha)
        u2 = auxiliary.auxiliary_element_residual_form(p, alpha)
        worst = max(worst, np.linalg.norm(u1 - u2) / np.linalg.norm(u1))
    return worst <= 1e-12, f"max relative deviation {worst:.2e}"


@check("auxiliary")
def vanishing_limits(ctx):
    p = ctx.problem
    grid = [10.0**-k for k in range(1, 11)]
    diags = [auxiliary.rate_functions(p, a) for a in grid]
    fracs = {name: getattr(diags[-1], name) / getattr(diags[0], name) for name in ("f1", "f2", "f3")}
    return all(v < 0.1 for v in fracs.values()), \
        ", ".join(f"{k}: end/start = {v:.3f}" for k, v in fracs.items())


@check("auxiliary")
def error_bound_dominates(ctx):
    p = ctx.problem
    worst = 0.0
    for i, delta in enumerate((1e-3, 1e-4, 1e-5)):
        alpha = delta**2
        sample = generate_noise(p, delta, row_seed(ctx.seed, i))
        r = ctx.solver(p, sample.data, alpha)
        err = np.linalg.norm(r.u - p.exact_solution)
        worst = max(worst, err / auxiliary.error_bound(p, alpha, delta))
    return worst <= 1.0, f"max error/bound = {worst:.4f}"


@check("auxiliary")
def minus_a_error_bound(ctx):
    p = ctx.problem
    worst = 0.0
    for i, delta in enumerate((1e-3, 1e-5)):
        sample = generate_noise(p, delta, row_seed(ctx.seed, i))
        for alpha in SMALL_ALPHAS:
            r = ctx.solver(p, sample.data, alpha)
            lhs = norm_tau(p.scale, r.u - p.exact_solution, -p.degree_a)
            worst = max(worst, lhs / auxiliary.minus_a_bound(p, alpha, delta))
    return worst <= 1.0, f"max lhs/bound = {worst:.4f}"


# param_choice --------------------------------------------------------------

@check("param_choice")
def discrepancy_bracket(ctx):
    p = ctx.problem
    rule = Discrepancy()
    bad = 0
    for i, delta in enumerate(TABLE2_LADDER[:4]):
        sample = generate_noise(p, delta, row_seed(ctx.seed, i))
        out = choose_discrepancy(p, sample, rule, solver=ctx.solver)
        partner = dict(out.probes).get(out.alpha_partner)
        ok = (out.result.misfit <= rule.b * delta <= partner
              and out.alpha_selected <= out.alpha_partner <= rule.theta * out.alpha_selected * (1 + 1e-12))
        bad += not ok
    return bad == 0, f"{bad} rows violate the bracket"


@check("param_choice")
def apriori_error_decreases(ctx):
    p = ctx.problem
    errs = []
    for i, delta in enumerate(TABLE1_LADDER):
        sample = generate_noise(p, delta, row_seed(ctx.seed, i))
        r = ctx.solver(p, sample.data, choose_apriori(delta, APriori(1.0, 2.0)))
        errs.append(np.linalg.norm(r.u - p.exact_solution))
    return errs[-1] < errs[0], f"first {errs[0]:.3e}, last {errs[-1]:.3e}"


@check("param_choice")
def kappa_interval_trends(ctx):
    ladder = [1e-2 / 4**k for k in range(5)]
    trends = {}
    for kappa in (1.5, 2.0, 3.0):
        q = [d**2 / choose_apriori(d, APriori(1.0, kappa)) for d in ladder]
        trends[kappa] = q
    ok = (trends[1.5][-1] < trends[1.5][0]
          and all(math.isclose(x, 1.0) for x in trends[2.0])
          and trends[3.0][-1] > trends[3.0][0])
    return ok, "delta^2/alpha: " + ", ".join(f"kappa={k}: {v[0]:.2e}->{v[-1]:.2e}" for k, v in trends.items())


@check("param_choice")
def discrepancy_trend(ctx):
    p = ctx.problem
    a = p.degree_a
    errs, noise_terms = [], []
    for i, delta in enumerate(TABLE2_LADDER):
        sample = generate_noise(p, delta, row_seed(ctx.seed, i))
        out = choose_discrepancy(p, sample, Discrepancy(), solver=ctx.solver)
        errs.append(np.linalg.norm(out.result.u - p.exact_solution))
        noise_terms.append(delta / out.alpha_selected ** (a / (2 * a + 2)))
    ok = errs[-1] < errs[0] and noise_terms[-1] < noise_terms[0]
    return ok, f"error {errs[0]:.3e}->{errs[-1]:.3e}, delta/alpha^(1/4) {noise_terms[0]:.3e}->{noise_terms[-1]:.3e}"


# rates ---------------------------------------------------------------------

@check("rates")
def qualification(ctx):
    """C = 1 must hold for all grid alphas below some threshold alpha_bar.

    For theta = 0.75 the threshold sits below 1e-2 on this spectrum, since
    t^(theta-1) phi(t) only decreases for t < exp(-kappa/(1-theta)).
    """
    phi = LogIndexFunction(ctx.cfg.kappa)
    grid = [10.0**-k for k in range(2, 13)]
    found = {}
    for theta in (0.0, 0.25, 0.5, 0.75):
        rep = qualification_check(phi, ctx.problem.scale, theta, grid, 1.0)
        bar = None
        for alpha, ok in zip(reversed(rep.alphas), reversed(rep.passed)):
            if not ok:
                break
            bar = alpha
        found[theta] = (bar, rep.worst_ratio)
    ok = all(bar is not None for bar, _ in found.values()) and found[0.0][0] == found[0.5][0] == 1e-2
    return ok, ", ".join(f"theta={k}: alpha_bar={v[0]}, worst={v[1]:.4f}" for k, v in found.items())


@check("rates")
def psi_roundtrip(ctx):
    phi = LogIndexFunction(ctx.cfg.kappa)
    a = ctx.problem.degree_a
    worst = 0.0
    for delta in np.logspace(-12, -2, 20):
        alpha = psi_inverse(phi, a, delta)
        worst = max(worst, abs(psi(phi, a, alpha) - delta) / delta)
    return worst <= 1e-12, f"max relative round-trip error {worst:.2e}"


@check("rates")
def low_order_rate_bound(ctx):
    p = ctx.problem
    phi = LogIndexFunction(ctx.cfg.kappa)
    calib = [10.0**-k for k in range(2, 11)]
    k0 = max(auxiliary.rate_functions(p, a).f9 / phi_eval(phi, a) for a in calib)
    k2 = auxiliary.rate_functions(p, 1e-2).K2
    worst = 0.0
    for i, delta in enumerate((1e-3, 1e-5)):
        sample = generate_noise(p, delta, row_seed(ctx.seed, i))
        for alpha in (10.0 ** -(k + 0.5) for k in range(2, 10)):
            r = ctx.solver(p, sample.data, alpha)
            err = np.linalg.norm(r.u - p.exact_solution)
            worst = max(worst, err / (k0 * phi_eval(phi, alpha) + k2 * delta / alpha**p.rate_exponent))
    return worst <= 1.0, f"K0 = {k0:.4f}, max error/bound = {worst:.4f}"


def run_invariant_suite(cfg: ExperimentConfig, solver=minimize_tikhonov, seed: int = 0,
                        only=None) -> SuiteReport:
    ctx = SuiteContext(cfg=cfg, solver=solver, seed=seed)
    report = SuiteReport()
    for module, fn in CHECKS:
        if only is not None and fn.__name__ not in only:
            continue
        try:
            passed, detail = fn(ctx)
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        report.results.append(CheckResult(fn.__name__, module, bool(passed), detail))
    return report
