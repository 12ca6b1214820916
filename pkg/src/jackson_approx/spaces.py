"""Compact two-point homogeneous spaces: parameters, volumes, multiplicities.

Each space is described by its family, its dimension ``m`` and the pair
``(a, b)`` in the geodesic-polar weight ``sin(t/2)**a * sin(t)**b``.  The
zonal spherical functions are Jacobi polynomials in ``cos t`` with indices
``((a+b-1)/2, (b-1)/2)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import DomainError


class Family(str, enum.Enum):
    SPHERE = "sphere"
    REAL_PROJECTIVE = "real_projective"
    COMPLEX_PROJECTIVE = "complex_projective"
    QUATERNIONIC_PROJECTIVE = "quaternionic_projective"
    CAYLEY_PLANE = "cayley_plane"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_")
        aliases = {
            "s": cls.SPHERE,
            "rp": cls.REAL_PROJECTIVE,
            "cp": cls.COMPLEX_PROJECTIVE,
            "hp": cls.QUATERNIONIC_PROJECTIVE,
            "qp": cls.QUATERNIONIC_PROJECTIVE,
            "op": cls.CAYLEY_PLANE,
            "cayley": cls.CAYLEY_PLANE,
        }
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown family {value!r}") from None


# Smallest admissible dimension per family.
SMALLEST_DIMENSION = {
    Family.SPHERE: 1,
    Family.REAL_PROJECTIVE: 2,
    Family.COMPLEX_PROJECTIVE: 4,
    Family.QUATERNIONIC_PROJECTIVE: 8,
    Family.CAYLEY_PLANE: 16,
}


@dataclass(frozen=True)
class SpaceParams:
    family: Family
    m: int
    a: int
    b: int
    jacobi_alpha: float = field(init=False)
    jacobi_beta: float = field(init=False)
    tau_m: Optional[float] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "jacobi_alpha", (self.a + self.b - 1) / 2)
        object.__setattr__(self, "jacobi_beta", (self.b - 1) / 2)
        tau = sphere_volume(self.m) if self.family is Family.SPHERE else None
        object.__setattr__(self, "tau_m", tau)

    @property
    def is_sphere(self) -> bool:
        return self.family is Family.SPHERE

    def label(self) -> str:
        return f"{self.family.value}(m={self.m})"


def sphere_volume(m: int) -> float:
    """Surface measure of the unit sphere S^m in R^(m+1)."""
    return 2 * math.pi ** ((m + 1) / 2) / math.gamma((m + 1) / 2)


def _check_admissible(family: Family, m: int) -> None:
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 1:
        raise DomainError(f"dimension m must be a positive integer, got {m!r}")
    if family is Family.SPHERE:
        return
    if family is Family.REAL_PROJECTIVE:
        if m < 2:
            raise DomainError("real projective space requires m >= 2")
    elif family is Family.COMPLEX_PROJECTIVE:
        if m < 4 or m % 2:
            raise DomainError("complex projective space requires m in {4, 6, 8, ...}")
    elif family is Family.QUATERNIONIC_PROJECTIVE:
        if m < 8 or m % 4:
            raise DomainError("quaternionic projective space requires m in {8, 12, 16, ...}")
    elif family is Family.CAYLEY_PLANE:
        if m != 16:
            raise DomainError("the Cayley plane requires m = 16")


def space_params(family, m: int) -> SpaceParams:
    family = Family.parse(family)
    _check_admissible(family, m)
    m = int(m)
    ab = {
        Family.SPHERE: (0, m - 1),
        Family.REAL_PROJECTIVE: (m - 1, 0),
        Family.COMPLEX_PROJECTIVE: (m - 2, 1),
        Family.QUATERNIONIC_PROJECTIVE: (m - 4, 3),
        Family.CAYLEY_PLANE: (8, 7),
    }[family]
    return SpaceParams(family, m, *ab)


def smallest_spaces() -> list[SpaceParams]:
    return [space_params(f, m) for f, m in SMALLEST_DIMENSION.items()]


def _pochhammer(x: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for k in range(n):
        out *= x + k
    return out


@lru_cache(maxsize=None)
def _jacobi_multiplicity(two_alpha: int, two_beta: int, n: int) -> int:
    # N_n = h_0 P_n(1)^2 / h_n written with rising factorials so that the
    # S^1 case (alpha + beta + 1 = 0) needs no special treatment.
    if n == 0:
        return 1
    alpha = Fraction(two_alpha, 2)
    beta = Fraction(two_beta, 2)
    num = (2 * n + alpha + beta + 1) * _pochhammer(alpha + 1, n) * _pochhammer(alpha + beta + 2, n - 1)
    den = math.factorial(n) * _pochhammer(beta + 1, n)
    value = num / den
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral multiplicity {value} for n={n}")
    return int(value)


def harmonic_dim(space: SpaceParams, n: int) -> int:
    """Dimension N(m, n) of the degree-n eigenspace of the Laplacian."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    if space.is_sphere:
        m = space.m
        lower = math.comb(n + m - 2, m) if n >= 2 else 0
        return math.comb(n + m, m) - lower
    return _jacobi_multiplicity(space.a + space.b - 1, space.b - 1, n)


def harmonic_dims(space: SpaceParams, n_max: int) -> np.ndarray:
    """Multiplicities for degrees 0..n_max as an int64 array (sphere) or object array if huge."""
    dims = [harmonic_dim(space, n) for n in range(n_max + 1)]
    if max(dims) < 2**62:
        return np.array(dims, dtype=np.int64)
    return np.array(dims, dtype=object)


def poly_space_dim(space: SpaceParams, n: int) -> int:
    """d_n^m: dimension of polynomials of degree at most n on the space."""
    return sum(harmonic_dim(space, k) for k in range(n + 1))


def choose_q(space: SpaceParams, n_max: int) -> int:
    """Minimal positive integer q with d_n^m <= (q n)^m for 1 <= n <= n_max."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    m = space.m
    d = 1
    ratios = []
    for n in range(1, n_max + 1):
        d += harmonic_dim(space, n)
        ratios.append((d, n))
    q = 1
    while any(d > (q * n) ** m for d, n in ratios):
        q += 1
    return q


def weight_alpha(space: SpaceParams, t):
    """The geodesic-polar weight sin(t/2)^a * sin(t)^b on (0, pi)."""
    t_arr = np.asarray(t, dtype=float)
    if np.any((t_arr <= 0) | (t_arr >= math.pi)):
        raise DomainError("weight_alpha requires t in the open interval (0, pi)")
    return weight_alpha_unchecked(space, t_arr)


def weight_alpha_unchecked(space: SpaceParams, t):
    t_arr = np.asarray(t, dtype=float)
    out = np.sin(t_arr / 2) ** space.a * np.sin(t_arr) ** space.b
    return float(out) if out.ndim == 0 else out
