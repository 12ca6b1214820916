"""Self-adjoint operators diagonal in the harmonic decomposition.

An operator is stored per degree: a value and the multiplicity N(m, n) of
the eigenspace it acts on.  Approximation numbers of such an operator are
its singular values sorted with multiplicity, so every quantity below is
exact up to the truncation of the coefficient sequence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .jackson import JacksonParams, MultiplierSequence, moment
from .kernels import ZonalKernelSpec
from .quadrature import QuadratureRule
from .spaces import SpaceParams, harmonic_dims, poly_space_dim


@dataclass(frozen=True)
class DiagonalOperator:
    space: SpaceParams
    degrees: np.ndarray
    values: np.ndarray
    mults: np.ndarray

    def __post_init__(self):
        for name in ("degrees", "values", "mults"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not (self.degrees.shape == self.values.shape == self.mults.shape):
            raise DomainError("degrees, values and multiplicities must align")

    @property
    def size(self) -> int:
        """Total dimension of the support, i.e. the flattened length."""
        return int(sum(int(k) for k in self.mults))

    def is_positive(self) -> bool:
        return bool(np.all(self.values >= 0))

    def flattened(self) -> np.ndarray:
        """Singular values repeated by multiplicity, nonincreasing."""
        out = np.repeat(np.abs(self.values), self.mults.astype(np.int64))
        return np.sort(out)[::-1]

    def rank(self, rtol: float = 1e-8) -> int:
        if self.values.size == 0:
            return 0
        scale = float(np.max(np.abs(self.values)))
        live = np.abs(self.values) > rtol * scale
        return int(sum(int(k) for k in self.mults[live]))

    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.degrees.size else -1


def operator_from_kernel(spec: ZonalKernelSpec) -> DiagonalOperator:
    n = np.arange(spec.coeffs.size)
    return DiagonalOperator(spec.space, n, spec.coeffs, harmonic_dims(spec.space, spec.n_trunc))


def sqrt_op(op: DiagonalOperator) -> DiagonalOperator:
    if not op.is_positive():
        raise DomainError("square root requires a positive operator")
    return DiagonalOperator(op.space, op.degrees, np.sqrt(op.values), op.mults)


def square(op: DiagonalOperator) -> DiagonalOperator:
    return DiagonalOperator(op.space, op.degrees, op.values**2, op.mults)


def apply_phi(op: DiagonalOperator, mult: MultiplierSequence) -> DiagonalOperator:
    """Compose with the Jackson smoothing operator: values s_n * m(n)."""
    factors = np.array([mult.at(int(n)) for n in op.degrees])
    return DiagonalOperator(op.space, op.degrees, op.values * factors, op.mults)


def op_norm_diff(op: DiagonalOperator, phi_op: DiagonalOperator) -> float:
    if not (np.array_equal(op.degrees, phi_op.degrees) and np.array_equal(op.mults, phi_op.mults)):
        raise DomainError("operators have different degree layouts")
    if op.values.size == 0:
        return 0.0
    return float(np.max(np.abs(op.values - phi_op.values)))


def approx_numbers(op: DiagonalOperator, j_max: int) -> np.ndarray:
    """a_1..a_{j_max}: j-th largest singular value counted with multiplicity, zero-padded."""
    if j_max < 1:
        raise DomainError("j_max must be positive")
    out = np.zeros(j_max)
    if op.values.size == 0:
        return out
    vals = np.abs(op.values)
    order = np.argsort(-vals, kind="stable")
    sorted_vals = vals[order]
    cum = np.cumsum(np.array([min(int(k), j_max) for k in op.mults[order]], dtype=np.int64))
    j = np.arange(1, j_max + 1)
    idx = np.searchsorted(cum, j, side="left")
    live = idx < sorted_vals.size
    out[live] = sorted_vals[idx[live]]
    return out


def approx_number(op: DiagonalOperator, j: int) -> float:
    return float(approx_numbers(op, j)[-1])


def brute_force_approx_numbers(values) -> np.ndarray:
    """Minimize the truncation error over every support of size j-1.

    For a diagonal operator, removing the entries in a support S leaves
    error max over the complement; a_j is the minimum over |S| = j-1.
    Exponential in the length; meant for a dozen values at most.
    """
    from itertools import combinations

    vals = np.abs(np.asarray(values, dtype=float))
    n = vals.size
    out = np.zeros(n + 1)
    for j in range(1, n + 2):
        best = math.inf
        for support in combinations(range(n), j - 1):
            rest = np.delete(vals, support)
            best = min(best, float(rest.max()) if rest.size else 0.0)
        out[j - 1] = best
    return out


@dataclass(frozen=True)
class DecayFit:
    slope: float
    intercept: float
    max_residual: float
    range: tuple


def decay_fit(values, j_min: int, j_max: int) -> DecayFit:
    """Least-squares line through (log j, log a_j) for j_min <= j <= j_max (1-based)."""
    values = np.asarray(values, dtype=float)
    if j_min < 1 or j_max < 2 * j_min:
        raise DomainError("decay fit needs 1 <= j_min and j_max >= 2 j_min")
    if j_max > values.size:
        raise DomainError(f"sequence has {values.size} entries, need {j_max}")
    seg = values[j_min - 1 : j_max]
    if np.any(seg <= 0):
        raise DomainError("decay fit needs positive values on the fitted range")
    x = np.log(np.arange(j_min, j_max + 1, dtype=float))
    y = np.log(seg)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return DecayFit(float(slope), float(intercept), float(np.max(np.abs(resid))), (j_min, j_max))


# -- theorem checks ----------------------------------------------------------

@dataclass(frozen=True)
class RankBoundReport:
    mu: int
    nu: int
    a_nu: float
    a_after_rank: float
    moment: float
    rhs: float
    holds: bool


def check_theorem43(sqrt_operator: DiagonalOperator, jp: JacksonParams, beta: float, B1: float,
                    rule: Optional[QuadratureRule] = None) -> RankBoundReport:
    """Compare a_nu(sqrt K) with sqrt(2 ||B||_1) * int D t^(beta/2) alpha dt.

    ``a_after_rank`` is a_{d_nu + 1}, the number controlled directly by the
    rank of the smoothed operator; it never exceeds ``a_nu``.
    """
    nu = jp.nu
    if nu < 1:
        raise DomainError("approximation numbers are indexed from 1; need mu >= 2")
    J = moment(jp, beta / 2, rule)
    rhs = math.sqrt(2 * B1) * J
    a_nu = approx_number(sqrt_operator, nu)
    a_rank = approx_number(sqrt_operator, poly_space_dim(jp.space, nu) + 1)
    return RankBoundReport(jp.mu, nu, a_nu, a_rank, J, rhs, bool(a_nu <= rhs))


@dataclass(frozen=True)
class DegreeBoundReport:
    q: int
    table: list
    sup: float
    holds: bool


def check_theorem54(sqrt_operator: DiagonalOperator, beta: float, q: int, n_max: int) -> DegreeBoundReport:
    """Table of a_{(qn)^m}(sqrt K) * n^(beta/2) for n = 1..n_max.

    ``holds`` records the boundedness criterion used here: every scaled
    value stays within twice the n = 1 value.
    """
    m = sqrt_operator.space.m
    j_top = (q * n_max) ** m
    a = approx_numbers(sqrt_operator, j_top)
    rows = []
    for n in range(1, n_max + 1):
        j = (q * n) ** m
        rows.append((n, j, float(a[j - 1]), float(a[j - 1]) * n ** (beta / 2)))
    scaled = [r[3] for r in rows]
    return DegreeBoundReport(q, rows, max(scaled), bool(max(scaled) <= 2 * scaled[0]))


@dataclass(frozen=True)
class ScaledDecayReport:
    j_max: int
    sup: float
    sup_head: float
    argmax: int
    holds: bool


def check_scaled_decay(sqrt_operator: DiagonalOperator, beta: float, j_max: int) -> ScaledDecayReport:
    """sup_j a_j j^(beta/(2m)) over j <= j_max, compared with the sup over the first eighth.

    A bounded sequence has its running supremum settle; ``holds`` asks that
    extending the range eightfold does not raise it.
    """
    m = sqrt_operator.space.m
    a = approx_numbers(sqrt_operator, j_max)
    j = np.arange(1, j_max + 1, dtype=float)
    scaled = a * j ** (beta / (2 * m))
    head = scaled[: max(1, j_max // 8)]
    sup = float(scaled.max())
    return ScaledDecayReport(j_max, sup, float(head.max()), int(np.argmax(scaled)) + 1,
                             bool(np.isfinite(sup) and sup <= head.max() * (1 + 1e-12)))
