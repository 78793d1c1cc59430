import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oversmooth.hilbert_scale import DiagonalScale
from oversmooth.model import (build_linear_problem, build_model_problem, forward, generate_noise,
                              log_source_element, log_source_solution, structural_ratio,
                              verify_norm_equivalence)
from oversmooth.rates import LogIndexFunction, phi_eval


def test_exact_data_first_coordinate(problem):
    assert problem.exact_data[0] == 8.0


def test_exact_data_norm(problem):
    u = log_source_solution(6000)
    ref = math.sqrt(math.fsum(((7 * x + x * x) / n) ** 2 for n, x in enumerate(u, 1)))
    value = float(np.linalg.norm(problem.exact_data))
    assert value == pytest.approx(ref, rel=1e-13)
    assert abs(value - 10.796) <= 0.01
    assert round(100 * 8e-3 / value, 4) == pytest.approx(7.41e-2, abs=5e-5)


def test_forward_of_zero(problem):
    assert not np.any(forward(problem, np.zeros(problem.size)))
    lp = build_linear_problem(np.ones(5), DiagonalScale.natural(5), np.zeros(5))
    assert not np.any(forward(lp, np.zeros(5)))


def test_second_coordinate_of_solution():
    u = log_source_solution(10)
    assert u[0] == 1.0
    assert u[1] == pytest.approx(1 / (math.sqrt(2) * math.log(2) ** 2.31), rel=1e-15)
    assert u[1] == pytest.approx(1.649, abs=5e-4)


def test_structural_constants(problem):
    assert (problem.c_a, problem.c_b) == (1.0, 13.0)


def test_source_condition_holds(problem):
    w = log_source_element(6000)
    assert w[1] == pytest.approx(4**1.8 / (math.sqrt(2) * math.log(2) ** 0.51))
    phi = LogIndexFunction(1.8)
    g = problem.scale.g_eigenvalues()[1:]
    np.testing.assert_allclose(phi_eval(phi, g) * w[1:], problem.exact_solution[1:], rtol=1e-12)


def test_noise_zero_delta(problem):
    assert np.array_equal(generate_noise(problem, 0.0, 3).data, problem.exact_data)


@pytest.mark.parametrize("dist", ["uniform", "signs"])
def test_noise_deterministic(problem, dist):
    a = generate_noise(problem, 1e-3, 7, dist).data
    b = generate_noise(problem, 1e-3, 7, dist).data
    assert a.tobytes() == b.tobytes()


def test_signs_noise_has_full_norm(problem):
    s = generate_noise(problem, 1e-3, 1, "signs")
    assert np.linalg.norm(s.data - problem.exact_data) == pytest.approx(1e-3, rel=1e-9)


def test_noise_rejects_bad_arguments(problem):
    with pytest.raises(ValueError):
        generate_noise(problem, -1.0, 0)
    with pytest.raises(ValueError):
        generate_noise(problem, 1e-3, 0, "gaussian")


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-8, 1e-1), st.integers(0, 2**31), st.sampled_from(["uniform", "signs"]))
def test_noise_bound(delta, seed, dist):
    p = _small()
    s = generate_noise(p, delta, seed, dist)
    # f + Delta - f loses up to one ulp of f + Delta
    slack = 2 * np.finfo(float).eps * (np.abs(p.exact_data) + delta)
    assert np.linalg.norm(s.data - p.exact_data) <= delta + np.linalg.norm(slack)
    assert np.all(np.abs(s.data - p.exact_data) <= delta / math.sqrt(p.size) + slack)


_cache = {}


def _small():
    if "p" not in _cache:
        _cache["p"] = build_model_problem(50)
    return _cache["p"]


def test_norm_equivalence_range(problem):
    lo, hi = verify_norm_equivalence(problem, 100, seed=0)
    assert 1.0 <= lo and hi <= 13.0


@pytest.mark.parametrize("n", [1, 2, 10, 500])
def test_first_order_ratio(problem, n):
    eps = 1e-7
    u = problem.exact_solution.copy()
    u[n - 1] += eps
    assert structural_ratio(problem, u) == pytest.approx(7 + 2 * problem.exact_solution[n - 1], rel=1e-6)


def test_isometric_linear_problem(rng):
    scale = DiagonalScale.natural(30, 1.0)
    lp = build_linear_problem(scale.power(-1.0), scale, np.zeros(30))
    assert lp.c_a == pytest.approx(1.0) and lp.c_b == pytest.approx(1.0)
    for _ in range(10):
        assert structural_ratio(lp, rng.standard_normal(30)) == pytest.approx(1.0, rel=1e-12)


def test_problem_validation():
    with pytest.raises(ValueError):
        build_model_problem(1)
    with pytest.raises(ValueError):
        build_model_problem(50, rho=4.0)
    with pytest.raises(ValueError):
        # exact solution outside the ball
        build_model_problem(50, rho=0.5, coefficient=7.0)
