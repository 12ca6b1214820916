import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jackson_approx.errors import DomainError
from jackson_approx.jackson import make_jackson, multipliers
from jackson_approx.kernels import ZonalKernelSpec, constant_kernel, example_kernel
from jackson_approx.operators import (
    DiagonalOperator,
    apply_phi,
    approx_number,
    approx_numbers,
    brute_force_approx_numbers,
    check_scaled_decay,
    check_theorem43,
    check_theorem54,
    decay_fit,
    op_norm_diff,
    operator_from_kernel,
    sqrt_op,
    square,
)
from jackson_approx.oracle import gram_eigs, legendre_kernel, sphere_grid
from jackson_approx.spaces import harmonic_dims, poly_space_dim, space_params

S2 = space_params("sphere", 2)


def diag(values, mults):
    return DiagonalOperator(S2, np.arange(len(values)), np.array(values, dtype=float), np.array(mults))


def test_approx_numbers_example():
    op = diag([1.0, 0.5, 0.25], [1, 3, 5])
    a = approx_numbers(op, 10)
    np.testing.assert_array_equal(a, [1, 0.5, 0.5, 0.5, 0.25, 0.25, 0.25, 0.25, 0.25, 0])


def test_approx_numbers_unsorted_and_signed():
    op = diag([-0.2, 3.0, 0.0, 1.0], [2, 1, 4, 2])
    np.testing.assert_array_equal(approx_numbers(op, 7), [3, 1, 1, 0.2, 0.2, 0, 0])
    assert approx_number(op, 2) == 1.0


def test_approx_numbers_domain():
    with pytest.raises(DomainError):
        approx_numbers(diag([1.0], [1]), 0)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 5), st.integers(1, 6)), min_size=1, max_size=8))
def test_approx_numbers_nonincreasing_and_match_flatten(pairs):
    values, mults = zip(*pairs)
    op = diag(values, mults)
    a = approx_numbers(op, op.size + 3)
    assert np.all(np.diff(a) <= 0)
    np.testing.assert_array_equal(a[: op.size], op.flattened())
    assert np.all(a[op.size:] == 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 5), st.integers(1, 3)), min_size=1, max_size=4))
def test_matches_brute_force(pairs):
    values, mults = zip(*pairs)
    op = diag(values, mults)
    flat = np.repeat(op.values, op.mults)
    np.testing.assert_array_equal(approx_numbers(op, flat.size + 1), brute_force_approx_numbers(flat))


def test_brute_force_small():
    np.testing.assert_array_equal(brute_force_approx_numbers([0.5, 2.0, 1.0]), [2.0, 1.0, 0.5, 0.0])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 5), st.integers(1, 6)), min_size=1, max_size=8))
def test_sqrt_compatibility(pairs):
    values, mults = zip(*pairs)
    op = diag(values, mults)
    j = op.size
    np.testing.assert_allclose(approx_numbers(sqrt_op(op), j) ** 2, approx_numbers(op, j), rtol=1e-14)
    np.testing.assert_allclose(square(sqrt_op(op)).values, op.values, rtol=1e-14)


def test_sqrt_requires_positive():
    with pytest.raises(DomainError):
        sqrt_op(diag([1.0, -0.5], [1, 3]))


def test_operator_from_kernel_layout():
    spec = example_kernel(3, 0.5, 12)
    op = operator_from_kernel(spec)
    np.testing.assert_array_equal(op.mults, harmonic_dims(spec.space, 12))
    assert op.size == poly_space_dim(spec.space, 12)
    assert op.max_degree() == 12


@pytest.mark.parametrize("mu", [2, 3, 5])
def test_phi_has_rank_at_most_d_nu(mu):
    spec = example_kernel(3, 0.5, 60)
    root = sqrt_op(operator_from_kernel(spec))
    jp = make_jackson(spec.space, 3, mu)
    smoothed = apply_phi(root, multipliers(jp, spec.n_trunc))
    assert smoothed.rank() <= poly_space_dim(spec.space, jp.nu)


def test_op_norm_diff_example_and_layout_error():
    a = diag([1.0, 0.5], [1, 3])
    b = diag([0.5, 0.5], [1, 3])
    assert op_norm_diff(a, b) == 0.5
    with pytest.raises(DomainError, match="layout"):
        op_norm_diff(a, diag([1.0, 0.5], [1, 2]))


def test_decay_fit_exact_power_law():
    j = np.arange(1, 201, dtype=float)
    fit = decay_fit(3.0 * j**-1.25, 10, 200)
    assert fit.slope == pytest.approx(-1.25, abs=1e-12)
    assert fit.intercept == pytest.approx(math.log(3.0), abs=1e-10)
    assert fit.max_residual < 1e-10


@pytest.mark.parametrize("args", [(0, 10), (10, 15), (10, 500)])
def test_decay_fit_domain(args):
    with pytest.raises(DomainError):
        decay_fit(np.ones(100), *args)


def test_decay_fit_rejects_zeros():
    with pytest.raises(DomainError, match="positive"):
        decay_fit(np.r_[np.ones(10), np.zeros(10)], 5, 20)


def test_theorem43_with_constant_kernel():
    # sqrt of the constant kernel has one nonzero eigenvalue; a_nu vanishes for nu >= 2
    root = sqrt_op(operator_from_kernel(constant_kernel(S2)))
    report = check_theorem43(root, make_jackson(S2, 2, 2), 0.5, 1.0)
    assert report.nu == 2 and report.a_nu == 0.0 and report.holds


def test_theorem43_needs_positive_nu():
    root = sqrt_op(operator_from_kernel(constant_kernel(S2)))
    with pytest.raises(DomainError):
        check_theorem43(root, make_jackson(S2, 2, 1), 0.5, 1.0)


def test_theorem43_rank_value_is_smaller():
    spec = example_kernel(3, 0.5, 80)
    root = sqrt_op(operator_from_kernel(spec))
    report = check_theorem43(root, make_jackson(spec.space, 3, 4), 0.5, 5.0)
    assert report.a_after_rank <= report.a_nu


def test_degree_and_scaled_decay_on_example():
    spec = example_kernel(3, 0.5, 400)
    root = sqrt_op(operator_from_kernel(spec))
    thm = check_theorem54(root, 0.5, 2, 8)
    assert thm.holds and len(thm.table) == 8
    assert thm.table[0][1] == 8
    cor = check_scaled_decay(root, 0.5, 4096)
    assert cor.holds


def test_scaled_decay_detects_growth():
    # a_j = j^(-1/20) times j^(beta/2m) = j^(1/12 - 1/20) grows without bound
    j = np.arange(1, 4097, dtype=float)
    op = DiagonalOperator(S2, np.arange(j.size), j**-0.05, np.ones(j.size, dtype=int))
    assert not check_scaled_decay(op, 0.5, 4096).holds


def test_m2_analog_against_dense_oracle():
    n = np.arange(1, 21, dtype=float)
    coeffs = np.r_[1.0, n**-4.5]
    spec = ZonalKernelSpec(S2, coeffs)
    top = approx_numbers(operator_from_kernel(spec), 200)
    dense = gram_eigs(legendre_kernel(coeffs), sphere_grid(32, 64))[:200]
    assert np.max(np.abs(dense - top) / top) < 0.01


def test_example_decay_slope_reaches_exponent_only_far_out():
    # multiplicities (n+1)^2 make the staircase bias the fit on short ranges
    op = operator_from_kernel(example_kernel(3, 0.5, 400))
    near = decay_fit(approx_numbers(op, 5000), 50, 5000).slope
    spec_far = example_kernel(3, 0.5, 260)
    far_op = operator_from_kernel(spec_far)
    far = decay_fit(approx_numbers(far_op, 5_000_000), 50_000, 5_000_000).slope
    assert near == pytest.approx(-1.6186, abs=1e-3)
    assert abs(far + 1.5) < 0.02
    assert abs(far + 1.5) < abs(near + 1.5)
