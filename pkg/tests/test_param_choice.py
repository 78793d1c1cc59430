import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oversmooth.model import NoisySample, build_model_problem, forward, generate_noise
from oversmooth.param_choice import (APriori, BorderlineWarning, Branch, Discrepancy, NoCrossingError,
                                     choose_apriori, choose_discrepancy, kappa_regime)
from oversmooth.solver import minimize_tikhonov


def test_apriori_power_rule():
    assert choose_apriori(0.01, APriori(1.0, 1.0)) == 0.01
    assert choose_apriori(1e-3, APriori()) == pytest.approx(1e-6)


@pytest.mark.parametrize("kappa, regime", [(1.0, "A"), (2.0, "B"), (3.0, "C"), (4.0, "borderline"),
                                           (5.0, "divergent")])
def test_regimes(kappa, regime):
    assert kappa_regime(kappa, 1.0) == regime


def test_borderline_warns():
    with pytest.warns(BorderlineWarning):
        choose_apriori(1e-3, APriori(1.0, 4.0))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        choose_apriori(1e-3, APriori(1.0, 2.0))


def test_rule_validation():
    with pytest.raises(ValueError):
        APriori(0.0, 2.0)
    with pytest.raises(ValueError):
        Discrepancy(b=1.0)
    with pytest.raises(ValueError):
        Discrepancy(theta=1.0)
    with pytest.raises(ValueError):
        Discrepancy(alpha0=0.0)
    with pytest.raises(ValueError):
        choose_apriori(0.0, APriori())


def test_data_at_initial_guess_gives_infinite_alpha(small_problem):
    p = small_problem
    f = forward(p, p.initial_guess)
    out = choose_discrepancy(p, NoisySample(f, 1e-3, 0), Discrepancy())
    assert out.branch is Branch.INFINITE_ALPHA
    assert math.isinf(out.alpha_selected)
    assert np.array_equal(out.result.u, p.initial_guess)


def test_descending_branch_bracket(problem):
    rule = Discrepancy()
    s = generate_noise(problem, 1e-3, 0, "signs")
    out = choose_discrepancy(problem, s, rule)
    assert out.branch is Branch.DESCENDING
    partner = dict(out.probes)[out.alpha_partner]
    assert out.result.misfit <= rule.b * s.delta <= partner
    assert out.alpha_partner == pytest.approx(rule.theta * out.alpha_selected)


def test_ascending_branch(problem):
    rule = Discrepancy(alpha0=1e-12)
    s = generate_noise(problem, 1e-3, 0, "signs")
    out = choose_discrepancy(problem, s, rule)
    assert out.branch is Branch.ASCENDING
    assert out.result.misfit <= rule.b * s.delta <= dict(out.probes)[out.alpha_partner]
    # both directions land on the same grid point
    assert out.alpha_selected == pytest.approx(choose_discrepancy(problem, s, Discrepancy()).alpha_selected)


def test_repeated_alpha_in_ladder(problem):
    # two adjacent ladder rows select the same alpha
    rule = Discrepancy()
    sel = [choose_discrepancy(problem, generate_noise(problem, d, r, "signs"), rule).alpha_selected
           for r, d in ((5, 1e-3 / 32), (6, 1e-3 / 64))]
    assert sel[0] == pytest.approx(1e-10) and sel[1] == pytest.approx(1e-10)


def test_no_crossing_raises(small_problem):
    s = generate_noise(small_problem, 1e-3, 0)
    with pytest.raises(NoCrossingError):
        choose_discrepancy(small_problem, s, Discrepancy(max_steps=2))


def test_results_are_memoized(small_problem):
    calls = []

    def counting(p, f, alpha):
        calls.append(alpha)
        return minimize_tikhonov(p, f, alpha)

    s = generate_noise(small_problem, 1e-3, 0)
    out = choose_discrepancy(small_problem, s, Discrepancy(), solver=counting)
    assert len(calls) == len(set(calls))
    assert len(out.probes) == len(calls) - 1  # the alpha = inf probe is not on the grid


@settings(max_examples=30, deadline=None)
@given(st.floats(-6, -2), st.integers(0, 10_000))
def test_bracket_property(log_delta, seed):
    p = _small()
    rule = Discrepancy()
    s = generate_noise(p, 10.0**log_delta, seed)
    out = choose_discrepancy(p, s, rule)
    if out.branch is Branch.INFINITE_ALPHA:
        assert out.result.misfit <= rule.b * s.delta
    else:
        assert out.result.misfit <= rule.b * s.delta <= dict(out.probes)[out.alpha_partner]


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-12, 1e-1), st.floats(1e-12, 1e-1))
def test_apriori_monotone_in_delta(d1, d2):
    rule = APriori()
    lo, hi = sorted((d1, d2))
    assert choose_apriori(lo, rule) <= choose_apriori(hi, rule)


_cache = {}


def _small():
    if "p" not in _cache:
        _cache["p"] = build_model_problem(50)
    return _cache["p"]
