import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from jackson_approx.errors import DomainError
from jackson_approx.jackson import (
    jackson_eval,
    lemma51_constant,
    make_jackson,
    moment,
    multipliers,
    normalization,
    normalizer_lower_bound,
)
from jackson_approx.quadrature import build_rule, integrate_values, recommend_panels
from jackson_approx.spaces import smallest_spaces, space_params

S1 = space_params("sphere", 1)
S2 = space_params("sphere", 2)
S3 = space_params("sphere", 3)


def fejer_integral(mu):
    """int_0^pi (sin(mu t/2)/sin(t/2))^2 dt, symbolically after t = 2s."""
    s = sympy.symbols("s")
    integrand = sympy.simplify(sympy.expand_trig((sympy.sin(mu * s) / sympy.sin(s)) ** 2))
    return sympy.integrate(2 * integrand, (s, 0, sympy.pi / 2))


@pytest.mark.parametrize("mu", [1, 2, 3])
def test_fejer_closed_form_symbolic(mu):
    assert sympy.simplify(fejer_integral(mu) - mu * sympy.pi) == 0
    assert make_jackson(S1, 1, mu).k_nu == pytest.approx(mu * math.pi, abs=1e-10)


@pytest.mark.parametrize("mu", [4, 9, 17, 40])
def test_fejer_closed_form_numeric(mu):
    assert make_jackson(S1, 1, mu).k_nu == pytest.approx(mu * math.pi, abs=1e-10)


@pytest.mark.parametrize("space", smallest_spaces(), ids=lambda s: s.label())
def test_mu_one_is_constant(space):
    jp = make_jackson(space, space.m, 1)
    assert jp.nu == 0
    rule = build_rule(16, 16)
    mass = integrate_values(np.sin(rule.nodes / 2) ** space.a * np.sin(rule.nodes) ** space.b, rule)
    assert jp.k_nu == pytest.approx(mass, rel=1e-12)
    np.testing.assert_allclose(jackson_eval(jp, np.linspace(0.1, math.pi, 7)), 1 / jp.k_nu, rtol=1e-14)


def test_jackson_limit_at_zero():
    jp = make_jackson(S2, 3, 5)
    assert jackson_eval(jp, 1e-13) == pytest.approx(5**6 / jp.k_nu, rel=1e-12)
    assert jackson_eval(jp, 1e-6) == pytest.approx(5**6 / jp.k_nu, rel=1e-8)


def test_jackson_direct_value():
    jp = make_jackson(S2, 1, 2)
    assert jackson_eval(jp, math.pi / 2) == pytest.approx(2 / jp.k_nu, rel=1e-14)


def test_jackson_domain():
    jp = make_jackson(S2, 1, 2)
    with pytest.raises(DomainError):
        jackson_eval(jp, 0.0)
    with pytest.raises(DomainError):
        jackson_eval(jp, 3.5)


@pytest.mark.parametrize("space", smallest_spaces() + [S3], ids=lambda s: s.label())
@pytest.mark.parametrize("mu", [2, 3, 8, 21])
def test_normalization_under_refinement(space, mu):
    for l in (space.m, 2 * space.m):
        jp = make_jackson(space, l, mu)
        fine = build_rule(2 * recommend_panels(mu, l), 24)
        assert abs(normalization(jp, fine) - 1) < 1e-10


def test_normalizer_lower_bound_example():
    jp = make_jackson(S2, 2, 8)
    bound = 2**5 / (2 * math.pi**3) * 8**2
    assert normalizer_lower_bound(S2, 2, 8) == pytest.approx(bound)
    assert jp.k_nu >= bound


@pytest.mark.parametrize("space", smallest_spaces() + [S2, S3], ids=lambda s: s.label())
def test_normalizer_lower_bound_sweep(space):
    for l in (space.m, space.m + 1, 2 * space.m):
        for mu in (2, 3, 5, 8, 16, 32):
            jp = make_jackson(space, l, mu)
            assert jp.k_nu >= jp.lower_bound()


def test_lemma51_constant_example():
    assert lemma51_constant(2, 1, 2) == pytest.approx(math.pi**7 / 48)
    assert lemma51_constant(2, 1, 2) == pytest.approx(62.92, abs=5e-3)


def test_lemma51_constant_quarter():
    expected = 2 * math.pi**7 / 2 ** (8 - 0.25) * (1 / 2.25 + 1 / 1.75)
    assert lemma51_constant(2, 0.25, 2) == pytest.approx(expected)


def test_lemma51_constant_blows_up_at_pole():
    gammas = [1.9, 1.99, 1.999, 1.9999]
    values = [lemma51_constant(2, g, 2) for g in gammas]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert values[-1] > 1e3 * values[0] / 10


@pytest.mark.parametrize("m,gamma,l", [(2, 2, 2), (3, 1, 2), (2, 0, 2)])
def test_lemma51_constant_hypothesis(m, gamma, l):
    with pytest.raises(DomainError):
        lemma51_constant(m, gamma, l)


def test_moment_hypothesis_error():
    with pytest.raises(DomainError, match="2l > gamma \\+ m"):
        moment(make_jackson(S2, 1, 4), 1.0)


def test_moment_small_gamma_is_normalization():
    jp = make_jackson(S2, 2, 10)
    assert moment(jp, 1e-12) == pytest.approx(1.0, abs=1e-9)


def test_moment_mu_one():
    jp = make_jackson(S2, 2, 1)
    rule = build_rule(32, 16)
    t = rule.nodes
    expected = integrate_values(t * np.sin(t), rule) / integrate_values(np.sin(t), rule)
    assert moment(jp, 1.0) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("space,l,gamma", [(S2, 2, 1.0), (S2, 2, 0.25), (S2, 3, 1.5), (S3, 3, 1.0),
                                           (space_params("real_projective", 2), 2, 1.0),
                                           (space_params("complex_projective", 4), 3, 1.0)],
                         ids=["s2-l2-g1", "s2-l2-g.25", "s2-l3-g1.5", "s3-l3-g1", "rp2", "cp4"])
def test_moment_decay_bound(space, l, gamma):
    c = lemma51_constant(space.m, gamma, l)
    mus = np.arange(2, 65)
    J = np.array([moment(make_jackson(space, l, int(mu)), gamma) for mu in mus])
    assert np.all(J * mus**gamma <= c)
    tail = mus >= 4
    slope = np.polyfit(np.log(mus[tail]), np.log(J[tail]), 1)[0]
    assert abs(slope + gamma) <= 0.15


def test_multipliers_example():
    jp = make_jackson(S2, 2, 6)
    mv = multipliers(jp, 30)
    assert mv.values[0] == pytest.approx(1.0, abs=1e-10)
    assert np.max(np.abs(mv.values[jp.nu + 1:])) < 1e-8
    assert np.max(np.abs(mv.values)) <= 1 + 1e-10


@pytest.mark.parametrize("space", smallest_spaces() + [S2, S3], ids=lambda s: s.label())
def test_multipliers_mu_one_orthogonality(space):
    mv = multipliers(make_jackson(space, space.m, 1), 12)
    assert mv.values[0] == pytest.approx(1.0, abs=1e-12)
    assert np.max(np.abs(mv.values[1:])) < 1e-10


@pytest.mark.parametrize("space", smallest_spaces(), ids=lambda s: s.label())
def test_multiplier_rank_property_all_families(space):
    for mu in (2, 4, 7):
        jp = make_jackson(space, space.m, mu)
        mv = multipliers(jp, jp.nu + 15)
        assert mv.values[0] == pytest.approx(1.0, abs=1e-10)
        assert np.max(np.abs(mv.values[jp.nu + 1:])) < 1e-8
        assert np.max(np.abs(mv.values)) <= 1 + 1e-10


@settings(max_examples=25, deadline=None)
@given(l=st.integers(1, 4), mu=st.integers(2, 24), t=st.floats(1e-6, math.pi))
def test_kernel_nonnegative(l, mu, t):
    assert jackson_eval(make_jackson(S2, l, mu), t) >= 0


def test_large_parameters_stay_finite():
    cayley = space_params("cayley_plane", 16)
    jp = make_jackson(cayley, 32, 32)
    assert np.isfinite(jp.k_nu) and jp.k_nu > 0
    assert abs(normalization(jp, build_rule(2 * recommend_panels(32, 32), 20)) - 1) < 1e-10
