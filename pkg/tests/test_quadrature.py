import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jackson_approx.errors import DomainError, NumericalError
from jackson_approx.jackson import jackson_eval, make_jackson
from jackson_approx.quadrature import build_rule, integrate, recommend_panels
from jackson_approx.spaces import space_params, weight_alpha


def test_two_point_rule_exact_for_cubics():
    rule = build_rule(1, 2)
    assert len(rule) == 2
    # int_0^pi t^3 - 2 t^2 + t dt
    exact = math.pi**4 / 4 - 2 * math.pi**3 / 3 + math.pi**2 / 2
    assert integrate(lambda t: t**3 - 2 * t**2 + t, rule) == pytest.approx(exact, rel=1e-14)


def test_sine_integral():
    assert integrate(np.sin, build_rule(8, 16)) == pytest.approx(2.0, abs=1e-13)


def test_quadratic_integral():
    assert integrate(lambda t: t**2, build_rule(4, 8)) == pytest.approx(math.pi**3 / 3, abs=1e-12)


def test_constant():
    assert integrate(np.ones_like, build_rule(3, 5)) == pytest.approx(math.pi, abs=1e-12)


def test_weight_integral_s2():
    s2 = space_params("sphere", 2)
    assert integrate(lambda t: weight_alpha(s2, t), build_rule(8, 16)) == pytest.approx(2.0, abs=1e-12)


def test_jackson_mass_via_integrate():
    s2 = space_params("sphere", 2)
    jp = make_jackson(s2, 2, 8)
    rule = build_rule(recommend_panels(8, 2) * 2, 24)
    value = integrate(lambda t: jackson_eval(jp, t) * weight_alpha(s2, t), rule)
    assert value == pytest.approx(1.0, abs=1e-10)


@given(panels=st.integers(1, 50), order=st.integers(2, 64))
def test_rule_invariants(panels, order):
    rule = build_rule(panels, order)
    assert np.all(np.diff(rule.nodes) > 0)
    assert rule.nodes[0] > 0 and rule.nodes[-1] < math.pi
    assert np.all(rule.weights > 0)
    assert abs(rule.weights.sum() - math.pi) < 1e-12


@pytest.mark.parametrize("order", [0, 1, 65])
def test_order_range(order):
    with pytest.raises(DomainError):
        build_rule(4, order)


@pytest.mark.parametrize("args,floor", [((2, 1, 0), 8), ((64, 4, 0), 256), ((16, 2, 40), 72)])
def test_recommend_panels(args, floor):
    assert recommend_panels(*args) >= floor


def test_non_finite_integrand_names_node():
    rule = build_rule(2, 4)
    bad = rule.nodes[5]
    with pytest.raises(NumericalError) as info:
        integrate(lambda t: np.where(t == bad, np.nan, 1.0), rule)
    assert info.value.node == bad


@given(st.integers(1, 10))
def test_positivity(k):
    assert integrate(lambda t: np.sin(k * t) ** 2, build_rule(8, 8)) >= 0


@pytest.mark.parametrize("f", [np.sin, lambda t: np.exp(np.cos(3 * t)), lambda t: t**2.5 * np.sin(t / 2)])
def test_refinement_stability(f):
    coarse = integrate(f, build_rule(16, 16))
    fine = integrate(f, build_rule(32, 16))
    assert abs(coarse - fine) < 1e-9 * abs(fine)
