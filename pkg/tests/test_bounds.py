import math
import random
from fractions import Fraction

import pytest

from cubicthue import bounds
from cubicthue.bounds import (MatveevInput, check_height_bounds,
                              contradiction_threshold, derive_t_max,
                              lambda_upper_bound, lambda_value,
                              matveev_C, matveev_C0, matveev_bound,
                              matveev_family_coefficient, matveev_for_family,
                              siegel_residual, w0_prefactor)
from cubicthue.roots import isolate_roots


def test_siegel_residual_examples():
    r10 = isolate_roots(10)
    res = siegel_residual(10, 10, 1, r10)
    assert res.contains_zero()
    assert res.width < Fraction(1, 10 ** 20)
    assert siegel_residual(50, 0, 1).contains_zero()
    assert siegel_residual(10, -999, 99700300, r10).contains_zero()


def test_siegel_residual_arbitrary_pairs():
    rng = random.Random(41)
    for t in (2, 10, 97):
        roots = isolate_roots(t)
        for _ in range(50):
            x = rng.randrange(-10 ** 6, 10 ** 6)
            y = rng.randrange(-10 ** 6, 10 ** 6)
            assert siegel_residual(t, x, y, roots).contains_zero()


def test_lambda_values_at_special_solutions():
    roots = isolate_roots(10, 500)
    # type II special (t,1): Lambda_2 at (n,m)=(1,0) is tiny
    L2 = lambda_value(2, 10, 1, 0, roots)
    hi = max(abs(L2.value.lower), abs(L2.value.upper))
    assert hi < Fraction(1, 10 ** 5)
    # type I special at (n,m)=(-1,-4): the pre-exclusion bound chain gives
    # |Lambda_1| < 2 (t^3-3)^(1-n) (t^9-4t^6)^m
    L1 = lambda_value(1, 10, -1, -4, roots)
    hi = max(abs(L1.value.lower), abs(L1.value.upper))
    cap = 2 * Fraction(997) ** 2 * Fraction(10 ** 9 - 4 * 10 ** 6) ** -4
    assert hi < cap
    # type III special at (n,m)=(-1,1) obeys the displayed decay bound
    L3 = lambda_value(3, 10, -1, 1, roots)
    hi = max(abs(L3.value.lower), abs(L3.value.upper))
    assert float(hi) < 2 * 10 ** -8.9


def test_lambda_log_of_one_plus_tau():
    # |Lambda| <= 2|tau| with tau built directly from the solution
    for t in (10, 50):
        roots = isolate_roots(t, 500)
        th1, th2, th3 = roots.thetas
        x, y = t, 1
        tau2 = ((th3 - th1) * (x - y * th2)) / ((th2 - th1) * (x - y * th3))
        L2 = lambda_value(2, t, 1, 0, roots)
        lam_hi = max(abs(L2.value.lower), abs(L2.value.upper))
        assert abs(tau2).upper < Fraction(1, 2)
        assert lam_hi <= 2 * abs(tau2).upper


def test_lambda_upper_bound_formula():
    assert abs(lambda_upper_bound(2, 10, 8060) - (math.log(2) - 7.9 * 8060 * math.log(10))) < 1e-6
    assert abs(lambda_upper_bound(1, 10, 1) - (math.log(2) - 7.7 * math.log(10))) < 1e-12
    assert abs(lambda_upper_bound(3, 10, 1) - (math.log(2) - 8.9 * math.log(10))) < 1e-12


def test_matveev_constants():
    C = matveev_C(3, 1)
    assert abs(C - (16 / 6) * math.e ** 3 * 9 * 5 * 16 ** 4 * (3 * math.e / 2)) < 1e-3
    assert abs(C / 6.44e8 - 1) < 0.01
    C0 = matveev_C0(3, 6)
    assert abs(C0 - 30.9) < 0.1


def test_matveev_bound_direct():
    inp = MatveevInput(nlogs=3, D=6, chi=1, A=(1.0, 1.0, 1.0), B=2.0)
    val = matveev_bound(inp)
    assert val < 0
    assert abs(val + matveev_C(3, 1) * matveev_C0(3, 6)
               * bounds.matveev_W0(2.0, 6) * 36) < 1e-3


def test_matveev_input_validation():
    with pytest.raises(ValueError):
        MatveevInput(nlogs=3, D=6, chi=3, A=(1, 1, 1), B=1)
    with pytest.raises(ValueError):
        MatveevInput(nlogs=3, D=6, chi=1, A=(1, 1), B=1)
    with pytest.raises(ValueError):
        MatveevInput(nlogs=3, D=6, chi=1, A=(1, -1, 1), B=1)


def test_family_coefficient_window():
    coef = matveev_family_coefficient()
    assert 8.30e15 <= coef <= 8.40e15
    # provenance of the 1.07e15 cap: the published rounded 8.4e15 over 7.9
    assert abs(8.4e15 / 7.9 - 1.07e15) / 1.07e15 < 0.01


def test_w0_prefactor_below_35():
    assert w0_prefactor() < 35


def test_matveev_for_family():
    res10 = matveev_for_family(2, 10)
    assert all(res10.height_checks)
    assert res10.coefficient == matveev_family_coefficient()
    res_big = matveev_for_family(2, 576241)
    assert res_big.coefficient == res10.coefficient
    assert res_big.bound_ln(576241, 10 ** 18) < 0
    assert "Lambda_2" in res_big.describe()
    with pytest.raises(ValueError):
        matveev_for_family(2, 9)


def test_height_checks_sampled():
    for t in (10, 100, 10 ** 5):
        assert check_height_bounds(isolate_roots(t)) == (True, True, True)


def test_derive_t_max():
    t_max, n_max = derive_t_max()
    assert t_max == 576241
    assert 8.8e18 <= n_max <= 9.0e18
    with pytest.raises(ValueError):
        derive_t_max(which=1)


def test_feasibility_flips_once():
    t_max = 576241
    samples = [10, 1000, 100000, t_max - 1, t_max, t_max + 1,
               t_max + 1000, 10 ** 7]
    flags = [bounds._growth_feasible(t) for t in samples]
    assert flags == [True, True, True, True, True, False, False, False]


def test_contradiction_threshold_values():
    # which=2 at t=10: -27.65 * 1000 * ln(10)^2
    want = -27.65 * 1000 * math.log(10) ** 2
    assert abs(contradiction_threshold(2, 10) - want) < 1e-6
    assert contradiction_threshold(1, 10) == pytest.approx(
        -7.7 * 8.6 * 10 ** 6 * math.log(10) ** 2)
    assert contradiction_threshold(3, 10) == pytest.approx(
        -8.9 * 9.8 * 10 ** 3 * math.log(10) ** 2)


def test_lambda_coefficients_recorded():
    roots = isolate_roots(10)
    L = lambda_value(2, 10, 5, 3, roots)
    assert L.coefficients == (3, 5, 1)
    assert L.which == 2 and L.t == 10
    with pytest.raises(ValueError):
        bounds.lambda_log_arguments(4, roots)
