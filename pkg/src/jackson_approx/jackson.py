"""Generalized Jackson kernels and the smoothing operator they define.

For integers ``l >= 1`` and ``mu >= 1`` the kernel is

    D(t) = (sin(mu t / 2) / sin(t / 2)) ** (2 l) / k,

an even trigonometric polynomial of degree ``nu = l (mu - 1)``, with ``k``
chosen so that ``D`` has unit mass against the weight of the space.
Convolving with ``D`` in the translation-operator sense multiplies the
degree-``n`` eigenspace by ``m(n) = int D phi_n alpha dt``, which vanishes
for ``n > nu``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, NumericalError
from .quadrature import QuadratureRule, integrate_values, rule_for
from .spaces import SpaceParams, weight_alpha_unchecked
from .specfun import zonal_table

_SMALL_T = 1e-12


def sine_ratio_power(mu: int, l: int, t) -> np.ndarray:
    """(sin(mu t/2)/sin(t/2))^(2l), using the limit mu^(2l) for t near 0."""
    t = np.asarray(t, dtype=float)
    half = t / 2
    small = np.abs(t) < _SMALL_T
    denom = np.where(small, 1.0, np.sin(half))
    ratio = np.where(small, float(mu), np.sin(mu * half) / denom)
    return ratio ** (2 * l)


@dataclass(frozen=True)
class JacksonParams:
    space: SpaceParams
    l: int
    mu: int
    k_nu: float

    @property
    def nu(self) -> int:
        return self.l * (self.mu - 1)

    def lower_bound(self) -> float:
        """Lower bound for k_nu from the moment estimate, valid for mu >= 2."""
        return normalizer_lower_bound(self.space, self.l, self.mu)


def normalizer_lower_bound(space: SpaceParams, l: int, mu: int) -> float:
    m, b = space.m, space.b
    return 2.0 ** (2 * l + b) / (m * math.pi ** (2 * l - 1)) * float(mu) ** (2 * l - m)


def _check_lmu(l, mu):
    if l < 1 or int(l) != l:
        raise DomainError(f"l must be a positive integer, got {l!r}")
    if mu < 1 or int(mu) != mu:
        raise DomainError(f"mu must be an integer >= 1, got {mu!r}")


def make_jackson(space: SpaceParams, l: int, mu: int, rule: Optional[QuadratureRule] = None) -> JacksonParams:
    _check_lmu(l, mu)
    if rule is None:
        rule = rule_for(mu, l)
    t = rule.nodes
    k = integrate_values(sine_ratio_power(mu, l, t) * weight_alpha_unchecked(space, t), rule)
    if not k > 0:
        raise NumericalError(f"normalizer k_nu={k!r} is not positive")
    return JacksonParams(space, int(l), int(mu), k)


def jackson_eval(params: JacksonParams, t):
    t_arr = np.asarray(t, dtype=float)
    if np.any((t_arr <= 0) | (t_arr > math.pi)):
        raise DomainError("jackson_eval requires t in (0, pi]")
    out = sine_ratio_power(params.mu, params.l, t_arr) / params.k_nu
    return float(out) if out.ndim == 0 else out


def _kernel_on_rule(params: JacksonParams, rule: QuadratureRule) -> np.ndarray:
    t = rule.nodes
    return sine_ratio_power(params.mu, params.l, t) / params.k_nu * weight_alpha_unchecked(params.space, t)


def normalization(params: JacksonParams, rule: QuadratureRule) -> float:
    """int D alpha dt on the given rule; equals 1 for a well-resolved kernel."""
    return integrate_values(_kernel_on_rule(params, rule), rule)


def moment(params: JacksonParams, gamma: float, rule: Optional[QuadratureRule] = None, *, check: bool = True) -> float:
    """J = int_0^pi D(t) t^gamma alpha(t) dt.

    The decay bound J <= c / mu^gamma needs ``2l > gamma + m``; pass
    ``check=False`` to evaluate the integral outside that regime.
    """
    m = params.space.m
    if check and not 2 * params.l > gamma + m:
        raise DomainError(f"moment bound requires 2l > gamma + m (l={params.l}, gamma={gamma}, m={m})")
    if gamma < 0:
        raise DomainError("gamma must be nonnegative")
    if rule is None:
        rule = rule_for(params.mu, params.l)
    return integrate_values(_kernel_on_rule(params, rule) * rule.nodes**gamma, rule)


def lemma51_constant(m: int, gamma: float, l: int) -> float:
    if not 2 * l > gamma + m:
        raise DomainError(f"constant requires 2l > gamma + m (l={l}, gamma={gamma}, m={m})")
    if gamma <= 0:
        raise DomainError("gamma must be positive")
    return m * math.pi ** (4 * l - 1) / 2.0 ** (4 * l - gamma) * (1 / (gamma + m) + 1 / (2 * l - (gamma + m)))


@dataclass(frozen=True)
class MultiplierSequence:
    params: JacksonParams
    values: np.ndarray

    @property
    def n_max(self) -> int:
        return self.values.size - 1

    def __getitem__(self, n):
        return self.values[n]

    def at(self, n: int) -> float:
        """m(n), taken as zero past the computed range."""
        return float(self.values[n]) if n <= self.n_max else 0.0


def multipliers(params: JacksonParams, n_max: int, rule: Optional[QuadratureRule] = None) -> MultiplierSequence:
    if n_max < 0:
        raise DomainError("n_max must be nonnegative")
    if rule is None:
        rule = rule_for(params.mu, params.l, n_max)
    phi = zonal_table(params.space, n_max, rule.nodes)
    values = integrate_values(phi * _kernel_on_rule(params, rule), rule)
    values = np.atleast_1d(np.asarray(values, dtype=float))
    values.setflags(write=False)
    return MultiplierSequence(params, values)


def identity_multipliers(params: JacksonParams, n_max: int) -> MultiplierSequence:
    values = np.ones(n_max + 1)
    values.setflags(write=False)
    return MultiplierSequence(params, values)
