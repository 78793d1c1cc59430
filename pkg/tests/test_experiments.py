import json
import time

import numpy as np
import pytest

from oversmooth import checks
from oversmooth.experiments import (TABLE1_COLUMNS, TABLE1_LADDER, TABLE2_LADDER, ConfigError,
                                    ExperimentConfig, plot_data, read_csv_table, row_seed, run_table1,
                                    run_table2)
from oversmooth.param_choice import APriori, Discrepancy
from oversmooth.solver import minimize_tikhonov


def test_ladders_are_halvings():
    assert len(TABLE1_LADDER) == 13 and len(TABLE2_LADDER) == 10
    assert TABLE1_LADDER[0] == 8e-3 and TABLE2_LADDER[0] == 1e-3
    assert all(a == 2 * b for a, b in zip(TABLE1_LADDER, TABLE1_LADDER[1:]))


def test_row_seeds_distinct():
    seeds = {row_seed(s, r) for s in range(5) for r in range(13)}
    assert len(seeds) == 65


@pytest.mark.parametrize("kwargs", [
    {"N": 1}, {"seeds": ()}, {"delta_ladder": (1e-3, 2e-3)}, {"delta_ladder": (0.0,)},
    {"output_format": "xml"}, {"noise": "gaussian"},
])
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        ExperimentConfig(**kwargs)


def test_rule_mismatch():
    with pytest.raises(ConfigError):
        run_table1(ExperimentConfig(N=50, rule=Discrepancy()))
    with pytest.raises(ConfigError):
        run_table2(ExperimentConfig(N=50, rule=APriori()))


def test_csv_round_trip():
    table = run_table1(ExperimentConfig(N=200, seeds=(0, 1)))
    rows = read_csv_table(table.to_csv())
    assert len(rows) == 13
    for got, want in zip(rows, table.rows):
        for c in TABLE1_COLUMNS:
            assert got[c] == pytest.approx(want[c], rel=1e-6)
        assert got["status"] == "ok"


def test_markdown_render():
    text = run_table1(ExperimentConfig(N=50, delta_ladder=(1e-3,), seeds=(0,))).render("markdown")
    assert text.splitlines()[2].startswith("| delta |")


def test_deterministic():
    cfg = ExperimentConfig(N=300, rule=Discrepancy(), delta_ladder=TABLE2_LADDER[:3])
    assert run_table2(cfg).to_csv() == run_table2(cfg).to_csv()


def test_noise_free_row_beats_last_ladder_row(problem):
    last = run_table1(ExperimentConfig(delta_ladder=TABLE1_LADDER[-1:])).rows[0]["error"]
    # noise-free data at the alpha floor 1e-12
    res = minimize_tikhonov(problem, problem.exact_data, 1e-12)
    assert np.linalg.norm(res.u - problem.exact_solution) < last


def test_plot_data_columns():
    t = plot_data(run_table1(ExperimentConfig(N=50, seeds=(0,))))
    assert t.columns == ["delta", "error"] and len(t.rows) == 13


def test_suite_passes_default_quick():
    report = checks.run_invariant_suite(ExperimentConfig(N=50))
    assert report.ok, report.failed
    assert json.loads(report.to_json())["passed"] is True


def test_quick_suite_is_fast():
    t0 = time.perf_counter()
    checks.run_invariant_suite(ExperimentConfig(N=50))
    assert time.perf_counter() - t0 < 5.0


def test_fault_injection_is_named():
    def reversed_alpha(p, f, alpha):
        return minimize_tikhonov(p, f, 1.0 / alpha)

    report = checks.run_invariant_suite(ExperimentConfig(N=50), solver=reversed_alpha,
                                        only={"misfit_penalty_monotone"})
    assert report.failed == ["misfit_penalty_monotone"]


def test_crashing_check_counts_as_failure():
    def broken(p, f, alpha):
        raise RuntimeError("boom")

    report = checks.run_invariant_suite(ExperimentConfig(N=50), solver=broken,
                                        only={"minimizer_property"})
    assert not report.ok and "boom" in report.results[0].detail
