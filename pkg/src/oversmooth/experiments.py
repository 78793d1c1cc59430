"""Table reproductions for the l2 model problem and report emission."""
from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .model import (NOISE_DISTRIBUTIONS, MODEL_COEFFICIENT, MODEL_KAPPA, MODEL_N, MODEL_Q,
                    MODEL_RHO, build_model_problem, generate_noise)
from .param_choice import APriori, Discrepancy, NoCrossingError, choose_apriori, choose_discrepancy
from .rates import LogIndexFunction, rate_ratio
from .solver import SolverError, minimize_tikhonov

TABLE1_LADDER = tuple(8e-3 / 2**k for k in range(13))
TABLE2_LADDER = tuple(1e-3 / 2**k for k in range(10))

TABLE1_COLUMNS = ["delta", "noise_percent", "error", "ratio"]
TABLE2_COLUMNS = ["delta", "noise_percent", "error", "alpha", "delta_over_alpha_quarter",
                  "delta2_over_alpha"]


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    N: int = MODEL_N
    delta_ladder: tuple = TABLE1_LADDER
    rule: APriori | Discrepancy = field(default_factory=APriori)
    seeds: tuple = (0, 1, 2, 3, 4)
    output_format: str = "csv"
    output_path: str | None = None
    q: float = MODEL_Q
    kappa: float = MODEL_KAPPA
    rho: float = MODEL_RHO
    coefficient: float = MODEL_COEFFICIENT
    # table runs default to equal-magnitude noise; "uniform" is the alternative
    noise: str = "signs"

    def __post_init__(self):
        self.delta_ladder = tuple(float(d) for d in self.delta_ladder)
        self.seeds = tuple(int(s) for s in self.seeds)
        if self.N < 2:
            raise ConfigError("N must be at least 2")
        if not self.seeds:
            raise ConfigError("at least one seed is required")
        if not self.delta_ladder or any(d <= 0 for d in self.delta_ladder):
            raise ConfigError("delta ladder must be non-empty and positive")
        if any(x <= y for x, y in zip(self.delta_ladder, self.delta_ladder[1:])):
            raise ConfigError("delta ladder must be strictly decreasing")
        if self.output_format not in ("csv", "markdown"):
            raise ConfigError(f"unknown output format {self.output_format!r}")
        if self.noise not in NOISE_DISTRIBUTIONS:
            raise ConfigError(f"unknown noise distribution {self.noise!r}")

    def problem(self):
        try:
            return build_model_problem(self.N, q=self.q, rho=self.rho, coefficient=self.coefficient)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


def row_seed(seed: int, row: int) -> int:
    """Independent noise per (seed, ladder row)."""
    return 1000 * seed + row


@dataclass
class Table:
    columns: list[str]
    rows: list[dict]
    title: str = ""

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns + ["status"])
        for row in self.rows:
            w.writerow([_fmt(row[c]) for c in self.columns] + [row.get("status", "ok")])
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = []
        if self.title:
            lines += [f"### {self.title}", ""]
        lines.append("| " + " | ".join(self.columns) + " |")
        lines.append("|" + "---|" * len(self.columns))
        for row in self.rows:
            lines.append("| " + " | ".join(_fmt(row[c]) for c in self.columns) + " |")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_csv() if fmt == "csv" else self.to_markdown()


def _fmt(x) -> str:
    return "%.6e" % x


def read_csv_table(text: str) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    return [{k: (v if k == "status" else float(v)) for k, v in row.items()} for row in reader]


def run_table1(cfg: ExperimentConfig) -> Table:
    """A priori choice ``alpha = c0 delta^kappa``, seed-averaged errors."""
    rule = cfg.rule
    if not isinstance(rule, APriori):
        raise ConfigError("table1 needs an a priori rule")
    p = cfg.problem()
    fnorm = float(np.linalg.norm(p.exact_data))
    phi = LogIndexFunction(cfg.kappa)
    rows = []
    for i, delta in enumerate(cfg.delta_ladder):
        alpha = choose_apriori(delta, rule, p.degree_a)
        errors = []
        try:
            for s in cfg.seeds:
                sample = generate_noise(p, delta, row_seed(s, i), cfg.noise)
                res = minimize_tikhonov(p, sample.data, alpha)
                errors.append(float(np.linalg.norm(res.u - p.exact_solution)))
            error = float(np.mean(errors))
            status = "ok"
        except SolverError:
            error, status = math.nan, "failed"
        rows.append({
            "delta": delta,
            "noise_percent": 100 * delta / fnorm,
            "error": error,
            "ratio": rate_ratio([(delta, error)], phi)[0],
            "alpha": alpha,
            "seed_errors": errors,
            "status": status,
        })
    return Table(TABLE1_COLUMNS, rows, "A priori parameter choice")


def _mode_alpha(alphas):
    counts = Counter(alphas)
    top = max(counts.values())
    return max(a for a, n in counts.items() if n == top)


def run_table2(cfg: ExperimentConfig) -> Table:
    """Sequential discrepancy principle, seed-averaged errors.

    The reported ``alpha`` is the most frequent selection over seeds.
    """
    rule = cfg.rule
    if not isinstance(rule, Discrepancy):
        raise ConfigError("table2 needs a discrepancy rule")
    p = cfg.problem()
    fnorm = float(np.linalg.norm(p.exact_data))
    a = p.degree_a
    rows = []
    for i, delta in enumerate(cfg.delta_ladder):
        errors, alphas = [], []
        try:
            for s in cfg.seeds:
                sample = generate_noise(p, delta, row_seed(s, i), cfg.noise)
                out = choose_discrepancy(p, sample, rule)
                errors.append(float(np.linalg.norm(out.result.u - p.exact_solution)))
                alphas.append(out.alpha_selected)
            alpha = _mode_alpha(alphas)
            error = float(np.mean(errors))
            status = "ok"
        except (NoCrossingError, SolverError):
            alpha, error, status = math.nan, math.nan, "failed"
        rows.append({
            "delta": delta,
            "noise_percent": 100 * delta / fnorm,
            "error": error,
            "alpha": alpha,
            "delta_over_alpha_quarter": delta / alpha ** (a / (2 * a + 2)),
            "delta2_over_alpha": delta**2 / alpha,
            "seed_errors": errors,
            "seed_alphas": alphas,
            "status": status,
        })
    return Table(TABLE2_COLUMNS, rows, "Sequential discrepancy principle")


def plot_data(table: Table) -> Table:
    """``(delta, error)`` pairs for external plotting."""
    return Table(["delta", "error"], [{"delta": r["delta"], "error": r["error"]} for r in table.rows])
