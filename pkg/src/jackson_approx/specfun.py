"""Jacobi polynomials and normalized zonal spherical functions.

The zonal function of degree ``n`` on a space with Jacobi indices
``(alpha, beta)`` is ``phi_n(t) = P_n(cos t) / P_n(1)``.  It is also the
eigenvalue of the translation operator ``S_t`` on the degree-``n``
eigenspace.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .spaces import SpaceParams


def _check_indices(alpha, beta):
    if alpha <= -1 or beta <= -1:
        raise DomainError("Jacobi indices must exceed -1")


def jacobi_table(alpha: float, beta: float, n_max: int, x) -> np.ndarray:
    """P_k^(alpha,beta)(x) for k = 0..n_max, stacked along the first axis."""
    _check_indices(alpha, beta)
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max == 0:
        return out
    out[1] = (alpha + 1) + (alpha + beta + 2) * (x - 1) / 2
    ab = alpha + beta
    for n in range(2, n_max + 1):
        c = 2 * n + ab
        a_n = 2 * n * (n + ab) * (c - 2)
        b_n = (c - 1) * (c * (c - 2) * x + alpha**2 - beta**2)
        c_n = 2 * (n + alpha - 1) * (n + beta - 1) * c
        out[n] = (b_n * out[n - 1] - c_n * out[n - 2]) / a_n
    return out


def jacobi_eval(alpha: float, beta: float, n: int, x):
    """Jacobi polynomial P_n^(alpha,beta)(x) by the three-term recurrence."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    val = jacobi_table(alpha, beta, n, x)[n]
    return float(val) if val.ndim == 0 else val


def jacobi_at_one(alpha: float, n: int) -> float:
    """P_n^(alpha,beta)(1) = (alpha+1)_n / n!."""
    return math.exp(math.lgamma(n + alpha + 1) - math.lgamma(alpha + 1) - math.lgamma(n + 1))


def zonal_table(space: SpaceParams, n_max: int, t) -> np.ndarray:
    """phi_k(t) for k = 0..n_max; rows are degrees."""
    return zonal_table_cos(space, n_max, np.cos(np.asarray(t, dtype=float)))


def zonal_table_cos(space: SpaceParams, n_max: int, u) -> np.ndarray:
    """phi_k evaluated at cos(t) = u, for k = 0..n_max."""
    alpha, beta = space.jacobi_alpha, space.jacobi_beta
    table = jacobi_table(alpha, beta, n_max, u)
    norms = np.array([jacobi_at_one(alpha, k) for k in range(n_max + 1)])
    return table / norms.reshape((-1,) + (1,) * (table.ndim - 1))


def zonal_phi(space: SpaceParams, n: int, t):
    val = zonal_table(space, n, t)[n]
    return float(val) if val.ndim == 0 else val


def jacobi_derivative(alpha: float, beta: float, n: int, x):
    """d/dx P_n^(alpha,beta)(x) = (n+alpha+beta+1)/2 * P_{n-1}^(alpha+1,beta+1)(x)."""
    if n == 0:
        return np.zeros_like(np.asarray(x, dtype=float))
    return (n + alpha + beta + 1) / 2 * jacobi_eval(alpha + 1, beta + 1, n - 1, x)


def legendre_derivative_maxcheck(space: SpaceParams, n_max: int, samples: int = 4001) -> float:
    """max over n <= n_max of sup_s |d/ds P_n^m(s)| / n^2 for normalized P_n^m.

    The supremum over [-1, 1] is taken on a Chebyshev-Lobatto grid, which
    contains both endpoints where the maximum of a normalized Gegenbauer
    derivative is attained.
    """
    if not space.is_sphere:
        raise DomainError("derivative certificate is defined for spheres only")
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    alpha, beta = space.jacobi_alpha, space.jacobi_beta
    s = np.cos(np.linspace(0.0, math.pi, samples))
    worst = 0.0
    for n in range(1, n_max + 1):
        deriv = jacobi_derivative(alpha, beta, n, s) / jacobi_at_one(alpha, n)
        worst = max(worst, float(np.max(np.abs(deriv))) / n**2)
    return worst
