"""Zonal positive-definite kernels held as Funk-Hecke coefficient sequences.

A zonal kernel is stored as its eigenvalues ``lam[n]`` on the degree-``n``
eigenspaces.  Pointwise values follow from the addition theorem,

    K(x, y) = sum_n lam[n] * N(m, n) / tau_m * phi_n(d(x, y)),

so the kernel is only evaluated pointwise on spheres, where ``tau_m`` is
known in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError
from .spaces import Family, SpaceParams, harmonic_dims, space_params
from .specfun import zonal_table, zonal_table_cos


@dataclass(frozen=True)
class ZonalKernelSpec:
    space: SpaceParams
    coeffs: np.ndarray
    tail_exponent: Optional[float] = None
    beta: Optional[float] = None

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float).copy()
        if coeffs.ndim != 1:
            raise DomainError("coefficients must form a 1-d sequence")
        if np.any(coeffs < 0) or not np.all(np.isfinite(coeffs)):
            raise DomainError("Funk-Hecke coefficients must be finite and nonnegative")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        if self.tail_exponent is not None and self.tail_exponent <= self.space.m:
            # sum n^(-s) n^(m-1) must converge for the diagonal to be finite
            raise DomainError("tail exponent must exceed m for a continuous kernel")

    @property
    def n_trunc(self) -> int:
        return self.coeffs.size - 1

    def pointwise_weights(self) -> np.ndarray:
        """lam[n] * N(m, n) / tau_m, the Legendre-series coefficients."""
        _require_sphere(self.space)
        dims = harmonic_dims(self.space, self.n_trunc).astype(float)
        return self.coeffs * dims / self.space.tau_m

    def diagonal_tail_bound(self) -> float:
        """Upper bound for sum_{n > n_trunc} lam_n N(m,n) / tau_m under the tail law."""
        if self.tail_exponent is None:
            return 0.0
        _require_sphere(self.space)
        m, s, n0 = self.space.m, self.tail_exponent, self.n_trunc
        # N(m,n) <= 2 (n+m)^(m-1) / (m-1)!  and  n + m <= n (1 + m/(n0+1)) for n > n0
        p = s - (m - 1)
        const = 2 * (1 + m / (n0 + 1)) ** (m - 1) / math.factorial(m - 1)
        return const * n0 ** (1 - p) / (p - 1) / self.space.tau_m

    def operator_tail_bound(self) -> float:
        """Largest eigenvalue discarded by truncation, sup_{n > n_trunc} lam_n."""
        if self.tail_exponent is None:
            return 0.0
        return float(self.n_trunc + 1) ** (-self.tail_exponent)


@dataclass(frozen=True)
class ZonalExpansion:
    """A zonal function u -> sum_n c[n] N(m,n)/tau_m phi_n(u) with signed coefficients."""

    space: SpaceParams
    coeffs: np.ndarray

    def evaluate(self, cos_theta):
        return zonal_series(self.space, self.coeffs, cos_theta)


@dataclass(frozen=True)
class HoelderEstimate:
    beta_hat: float
    B_hat: float
    t_grid: np.ndarray
    omega: np.ndarray
    truncation_error: float = 0.0
    slope: float = field(default=float("nan"))


def _require_sphere(space: SpaceParams):
    if not space.is_sphere:
        raise DomainError("pointwise kernel evaluation is available on spheres only")


def zonal_series(space: SpaceParams, coeffs, cos_theta):
    _require_sphere(space)
    coeffs = np.asarray(coeffs, dtype=float)
    n_max = coeffs.size - 1
    dims = harmonic_dims(space, n_max).astype(float)
    u = np.clip(np.asarray(cos_theta, dtype=float), -1.0, 1.0)
    table = zonal_table_cos(space, n_max, u)
    w = coeffs * dims / space.tau_m
    out = np.tensordot(w, table, axes=(0, 0))
    return float(out) if np.ndim(out) == 0 else out


def example_kernel(m: int, beta: float, n_trunc: int = 400) -> ZonalKernelSpec:
    """Kernel 1 + tau_m^-1 sum_{n>=1} N(m,n) n^-(2m+beta-2) P_n(x.y) on S^m."""
    if not 0 < beta <= 1:
        raise DomainError("beta must lie in (0, 1]")
    if not m - beta > 2:
        raise DomainError(f"example kernel requires m - beta > 2 (m={m}, beta={beta})")
    if n_trunc < 1:
        raise DomainError("n_trunc must be positive")
    space = space_params(Family.SPHERE, m)
    s = 2 * m + beta - 2
    n = np.arange(1, n_trunc + 1, dtype=float)
    coeffs = np.concatenate([[space.tau_m], n ** (-s)])
    return ZonalKernelSpec(space, coeffs, tail_exponent=s, beta=beta)


def constant_kernel(space: SpaceParams, value: float = 1.0) -> ZonalKernelSpec:
    """K == value; its only eigenvalue value * tau_m sits on the constants."""
    tau = space.tau_m if space.tau_m is not None else 1.0
    return ZonalKernelSpec(space, np.array([value * tau]))


def kernel_eval(spec: ZonalKernelSpec, cos_theta):
    """Return (K value(s), tail bound) at the given cosine(s) of the geodesic distance."""
    return zonal_series(spec.space, spec.coeffs, cos_theta), spec.diagonal_tail_bound()


def translate_kernel_section(spec: ZonalKernelSpec, t: float) -> ZonalExpansion:
    """Spectral form of x -> S_t(K(y, .))(x): coefficients lam_n phi_n(t)."""
    phi = zonal_table(spec.space, spec.n_trunc, float(t))
    return ZonalExpansion(spec.space, spec.coeffs * phi)


def chebyshev_lobatto(size: int) -> np.ndarray:
    return np.cos(np.linspace(0.0, math.pi, size))


class _ModulusEvaluator:
    """Caches the u-grid table so sweeps over t reuse it."""

    def __init__(self, spec: ZonalKernelSpec, u_grid_size: int):
        _require_sphere(spec.space)
        self.spec = spec
        self.u = chebyshev_lobatto(u_grid_size)
        self.table = zonal_table_cos(spec.space, spec.n_trunc, self.u)
        self.weights = spec.pointwise_weights()

    def __call__(self, t: float) -> float:
        phi_t = zonal_table(self.spec.space, self.spec.n_trunc, float(t))
        diff = self.weights * (phi_t - 1.0)
        return float(np.max(np.abs(diff @ self.table)))


def hoelder_modulus(spec: ZonalKernelSpec, t: float, u_grid_size: int = 2048) -> float:
    """Grid supremum over x of |S_t(K(y,.))(x) - K(y,x)|, independent of y by zonality."""
    return _ModulusEvaluator(spec, u_grid_size)(t)


def modulus_curve(spec: ZonalKernelSpec, t_grid, u_grid_size: int = 2048) -> np.ndarray:
    ev = _ModulusEvaluator(spec, u_grid_size)
    return np.array([ev(t) for t in np.asarray(t_grid, dtype=float)])


def estimate_holder(spec: ZonalKernelSpec, t_grid, u_grid_size: int = 2048) -> HoelderEstimate:
    t_grid = np.asarray(t_grid, dtype=float)
    omega = modulus_curve(spec, t_grid, u_grid_size)
    trunc = 2 * spec.diagonal_tail_bound()
    if np.all(omega == 0):
        return HoelderEstimate(2.0, 0.0, t_grid, omega, trunc, 0.0)
    keep = omega > 0
    slope = float(np.polyfit(np.log(t_grid[keep]), np.log(omega[keep]), 1)[0])
    beta_hat = float(np.clip(slope, np.finfo(float).tiny, 2.0))
    B_hat = float(np.max(omega / t_grid**beta_hat))
    return HoelderEstimate(beta_hat, B_hat, t_grid, omega, trunc, slope)


def holder_constant(spec: ZonalKernelSpec, beta: float, t_grid, u_grid_size: int = 2048,
                    include_truncation: bool = True) -> float:
    """Smallest B with omega(t) <= B t^beta over the grid.

    With ``include_truncation`` the modulus is inflated by twice the
    diagonal tail bound, which covers the discarded part of the series.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    omega = modulus_curve(spec, t_grid, u_grid_size)
    if include_truncation:
        omega = omega + 2 * spec.diagonal_tail_bound()
    return float(np.max(omega / t_grid**beta))


# -- plain-text serialization ------------------------------------------------

def dump_spec(spec: ZonalKernelSpec) -> str:
    lines = [
        f"family = {spec.space.family.value}",
        f"m = {spec.space.m}",
        f"beta = {'' if spec.beta is None else repr(float(spec.beta))}",
        f"n_trunc = {spec.n_trunc}",
        f"tail_exponent = {'' if spec.tail_exponent is None else repr(float(spec.tail_exponent))}",
        "coeffs = " + " ".join(repr(float(c)) for c in spec.coeffs),
    ]
    return "\n".join(lines) + "\n"


def parse_spec(text: str) -> ZonalKernelSpec:
    fields = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"malformed kernel spec line: {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        fields[key] = value
    try:
        space = space_params(fields["family"], int(fields["m"]))
        coeffs = np.array([float(v) for v in fields["coeffs"].split()])
    except KeyError as exc:
        raise DomainError(f"kernel spec missing field {exc.args[0]!r}") from None
    n_trunc = int(fields.get("n_trunc", coeffs.size - 1))
    if n_trunc != coeffs.size - 1:
        raise DomainError(f"n_trunc={n_trunc} disagrees with {coeffs.size} coefficients")
    beta = float(fields["beta"]) if fields.get("beta") else None
    tail = float(fields["tail_exponent"]) if fields.get("tail_exponent") else None
    return ZonalKernelSpec(space, coeffs, tail_exponent=tail, beta=beta)
