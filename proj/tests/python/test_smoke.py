import math

import numpy as np
import pytest

import hypermat


def test_gamma_at_half_identity_is_sqrt_pi():
    g = hypermat.gamma(0.5 * np.eye(2, dtype=complex))
    assert np.allclose(g, math.sqrt(math.pi) * np.eye(2), rtol=0, atol=1e-12)


def test_gamma_recurrence_on_non_normal_matrix():
    p = np.array([[1.3, 0.4], [0.0, 0.7 + 0.2j]])
    lhs = hypermat.gamma(p + np.eye(2))
    rhs = p @ hypermat.gamma(p)
    assert np.linalg.norm(lhs - rhs) <= 1e-11 * np.linalg.norm(rhs)


def test_beta_routes_agree():
    p = np.diag([0.8, 1.4 + 0.1j])
    q = np.diag([1.2, 0.9])
    a = hypermat.beta(p, q)
    b = hypermat.beta(p, q, route="integral")
    assert np.linalg.norm(a - b) <= 1e-8 * np.linalg.norm(a)


def test_pochhammer_counts_factors():
    p = np.array([[2.0]])
    assert hypermat.pochhammer(p, 3)[0, 0] == pytest.approx(2 * 3 * 4)


def test_pfq_log_series():
    one = np.eye(1, dtype=complex)
    r = hypermat.pfq([one, one], [2 * one], 0.5)
    assert r["converged"]
    assert r["value"][0, 0].real == pytest.approx(2 * math.log(2), abs=1e-12)


def test_euler_integral_matches_series():
    p = np.diag([0.4, 0.6])
    q = np.diag([1.1, 1.3])
    r = np.diag([2.5, 2.9])
    series = hypermat.pfq([p, q / 2, (q + np.eye(2)) / 2], [r / 2, (r + np.eye(2)) / 2], 0.25)
    integral = hypermat.euler_integral(p, q, r, 0.25)
    assert np.linalg.norm(series["value"] - integral["value"]) <= 1e-10


def test_errors_map_to_python_exceptions():
    with pytest.raises(hypermat.PreconditionError):
        hypermat.pfq([np.diag([1.0, 2.0])], [np.array([[1.0, 1.0], [0.0, 1.0]])], 0.5)
    with pytest.raises(hypermat.DomainError):
        hypermat.pfq([np.eye(1), np.eye(1)], [np.eye(1)], 2.0)


def test_generated_cases_verify_and_are_deterministic():
    cases = hypermat.generate_cases(seed=7, dims=[2], cases=1, identities=["T1", "T3", "T7_proof"])
    assert len(cases["cases"]) == 3
    first = hypermat.verify(cases)
    second = hypermat.verify(cases)
    assert first == second
    assert first["summary"]["all_passed"]
    for report in first["reports"]:
        assert report["passed"], report


def test_matrix_json_round_trip():
    a = np.array([[1 + 2j, 0.5], [-1, 3j]])
    assert np.array_equal(hypermat.matrix_from_json(hypermat.matrix_to_json(a)), a)
