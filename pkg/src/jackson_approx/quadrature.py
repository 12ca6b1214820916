"""Composite Gauss-Legendre rules on (0, pi)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DomainError, NumericalError


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    panels: int
    order: int

    def __len__(self):
        return self.nodes.size


def build_rule(panels: int, order: int = 16) -> QuadratureRule:
    """Split (0, pi) into equal panels and map an order-point Gauss rule onto each."""
    if not 2 <= order <= 64:
        raise DomainError(f"order must lie in [2, 64], got {order}")
    if panels < 1:
        raise DomainError("panels must be positive")
    x, w = leggauss(order)
    h = math.pi / panels
    left = h * np.arange(panels)
    nodes = (left[:, None] + h * (x[None, :] + 1) / 2).ravel()
    weights = np.tile(w * h / 2, panels)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights, panels, order)


def recommend_panels(mu: int, l: int, n_extra: int = 0) -> int:
    # One panel per oscillation of sin(mu t / 2)^(2l) * phi_{n_extra}(t), floor 8.
    return max(8, mu * l + n_extra)


def rule_for(mu: int, l: int, n_extra: int = 0, order: int = 16) -> QuadratureRule:
    return build_rule(recommend_panels(mu, l, n_extra), order)


def integrate(f, rule: QuadratureRule) -> float:
    """Sum of weights times f(nodes); f is called once on the whole node array."""
    values = np.asarray(f(rule.nodes), dtype=float)
    return integrate_values(values, rule)


def integrate_values(values, rule: QuadratureRule):
    """Apply the rule to precomputed node values (last axis runs over nodes)."""
    values = np.asarray(values, dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        idx = np.argwhere(bad)[0][-1]
        node = float(rule.nodes[idx])
        raise NumericalError(f"non-finite integrand value at node t={node!r}", node=node)
    # np.sum uses fixed-order pairwise summation, so results are reproducible.
    out = np.sum(values * rule.weights, axis=-1)
    return float(out) if np.ndim(out) == 0 else out
