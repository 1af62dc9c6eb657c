import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gravbounds.bounds import gaussian_objective
from gravbounds.errors import NoMinimumError
from gravbounds.minimize import MU_CEILING, Bracket, bracket_minimum, minimize, minimize_scalar


def test_bracket_quadratic():
    lo, mid, hi = bracket_minimum(lambda m: (m - 2.0) ** 2, 1.0)
    assert lo < 2.0 < hi
    f = lambda m: (m - 2.0) ** 2
    assert f(mid) < f(lo) and f(mid) < f(hi)


def test_bracket_walks_down():
    br = bracket_minimum(lambda m: (m - 1e-3) ** 2, 10.0)
    assert br.lo < 1e-3 < br.hi


def test_bracket_gaussian_objective_with_interior_minimum():
    f = lambda mu: gaussian_objective(mu, 1.5)
    br = bracket_minimum(f, 1.0)
    # Dense scan confirms the minimum lies inside.
    mus = np.linspace(br.lo, br.hi, 20001)
    vals = gaussian_objective(mus, 1.5)
    assert br.lo < mus[np.argmin(vals)] < br.hi


def test_no_minimum_at_infinity():
    f = lambda mu: gaussian_objective(mu, 0.0)
    mus = np.geomspace(1e-3, 1e3, 2000)
    assert np.all(np.diff(gaussian_objective(mus, 0.0)) < 0)
    with pytest.raises(NoMinimumError):
        bracket_minimum(f, 1.0)


def test_no_minimum_at_zero():
    with pytest.raises(NoMinimumError):
        bracket_minimum(lambda mu: gaussian_objective(mu, 2.5), 1.0)


def test_flat_function():
    with pytest.raises(NoMinimumError):
        bracket_minimum(lambda mu: 1.0, 1.0)


def test_ceiling_respected():
    with pytest.raises(NoMinimumError, match="infinity"):
        bracket_minimum(lambda mu: -mu, 1.0, ceiling=1e3)
    assert MU_CEILING >= 1e7  # covers the μ* ≈ 3.8e6 needed at a = 1e-6


def test_quadratic_converges_tightly():
    res = minimize_scalar(lambda m: (m - 2.0) ** 2, (0.5, 1.5, 5.0), tol=1e-10)
    assert res.converged
    assert abs(res.mu_star - 2.0) <= 1e-9
    assert res.iterations <= 200


def test_cosh():
    res = minimize_scalar(lambda m: math.cosh(m - 3.0), (1.0, 2.5, 6.0), tol=1e-6)
    assert res.converged
    assert abs(res.mu_star - 3.0) <= 1e-6 * (1 + res.mu_star)


def test_result_invariants():
    f = lambda m: (m - 2.0) ** 2 + 0.5
    res = minimize(f, 7.0)
    lo, _, hi = res.bracket
    assert lo < res.mu_star < hi
    assert res.f_star <= f(lo) and res.f_star <= f(hi)


def test_iteration_cap_flags_nonconvergence():
    res = minimize_scalar(lambda m: (m - 2.0) ** 2, (0.5, 1.5, 5.0), tol=1e-10, max_iter=5)
    assert not res.converged
    assert res.iterations == 5


def test_invalid_bracket():
    with pytest.raises(ValueError):
        minimize_scalar(lambda m: m, Bracket(1.0, 0.5, 2.0))


def test_deterministic():
    f = lambda mu: gaussian_objective(mu, 0.8)
    assert minimize(f) == minimize(f)


@settings(max_examples=60, deadline=None)
@given(center=st.floats(0.01, 1e4), width=st.floats(0.1, 10.0), start=st.floats(0.05, 100.0))
def test_unimodal_beats_grid(center, width, start):
    f = lambda m: math.log(m / center) ** 2 * width + 1.0
    res = minimize(f, start)
    grid = np.geomspace(center / 10, center * 10, 4001)
    best = min(f(m) for m in grid)
    assert res.f_star <= best + 1e-10 * (1 + abs(res.f_star))
