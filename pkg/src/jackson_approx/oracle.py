"""Brute-force checks on S^2 that avoid the harmonic machinery.

Kernels enter here as plain functions of the inner product ``x . y``; the
dense path discretizes the integral operator on a product grid and the
translation operator is applied by averaging over sampled geodesic circles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss, legval

from .errors import DomainError, NumericalError
from .kernels import ZonalKernelSpec


@dataclass(frozen=True)
class SphereGrid:
    nodes: np.ndarray      # (n_theta * n_phi, 3), longitude index varies fastest
    weights: np.ndarray
    n_theta: int
    n_phi: int
    cos_theta: np.ndarray
    theta_weights: np.ndarray

    def __len__(self):
        return self.weights.size


def sphere_grid(n_theta: int, n_phi: int) -> SphereGrid:
    """Gauss-Legendre in cos(colatitude) times the uniform rule in longitude."""
    if n_theta < 4 or n_phi < 8:
        raise DomainError("sphere grid needs n_theta >= 4 and n_phi >= 8")
    z, wz = leggauss(n_theta)
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    s = np.sqrt(1 - z**2)
    nodes = np.stack([
        np.outer(s, np.cos(phi)).ravel(),
        np.outer(s, np.sin(phi)).ravel(),
        np.repeat(z, n_phi),
    ], axis=1)
    weights = np.repeat(wz * (2 * math.pi / n_phi), n_phi)
    return SphereGrid(nodes, weights, n_theta, n_phi, z, wz)


def integrate_sphere(f, grid: SphereGrid) -> float:
    return float(np.sum(grid.weights * np.asarray(f(grid.nodes), dtype=float)))


def legendre_kernel(coeffs):
    """Pointwise K(s) = sum_n lam_n (2n+1)/(4 pi) P_n(s) on S^2 via numpy's Legendre series."""
    coeffs = np.asarray(coeffs, dtype=float)
    n = np.arange(coeffs.size)
    series = coeffs * (2 * n + 1) / (4 * math.pi)

    def kernel(s):
        return legval(np.clip(s, -1.0, 1.0), series)

    return kernel


def kernel_from_spec(spec: ZonalKernelSpec):
    if not (spec.space.is_sphere and spec.space.m == 2):
        raise DomainError("the dense oracle handles kernels on S^2 only")
    return legendre_kernel(spec.coeffs)


def gram_matrix(kernel, grid: SphereGrid) -> np.ndarray:
    """Symmetrized Nystrom matrix sqrt(w_i) K(x_i . x_j) sqrt(w_j)."""
    gram = np.asarray(kernel(grid.nodes @ grid.nodes.T), dtype=float)
    if not np.all(np.isfinite(gram)):
        raise NumericalError("kernel returned non-finite values on the grid")
    r = np.sqrt(grid.weights)
    return r[:, None] * gram * r[None, :]


def sym_eigs(matrix, tol: float = 1e-12) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, nonincreasing."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DomainError("expected a square matrix")
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    if matrix.size and float(np.max(np.abs(matrix - matrix.T))) > tol * scale:
        raise DomainError("matrix is not symmetric within tolerance")
    return np.linalg.eigvalsh(matrix)[::-1]


def gram_eigs(kernel, grid: SphereGrid) -> np.ndarray:
    """Spectrum of ``gram_matrix(kernel, grid)`` without forming it.

    On a product grid the Nystrom matrix is block circulant in the longitude
    index: block (k, l) depends on k - l only.  A discrete Fourier transform
    over that index splits it into n_phi real symmetric n_theta x n_theta
    blocks whose eigenvalues, taken together, are those of the full matrix.
    """
    z = grid.cos_theta
    s = np.sqrt(1 - z**2)
    d = np.arange(grid.n_phi)
    cos_d = np.cos(2 * math.pi * d / grid.n_phi)
    inner = z[None, :, None] * z[None, None, :] + s[None, :, None] * s[None, None, :] * cos_d[:, None, None]
    blocks = np.asarray(kernel(inner), dtype=float)
    if not np.all(np.isfinite(blocks)):
        raise NumericalError("kernel returned non-finite values on the grid")
    r = np.sqrt(grid.theta_weights * (2 * math.pi / grid.n_phi))
    blocks = r[None, :, None] * blocks * r[None, None, :]
    # blocks[d] == blocks[-d], so the transform is real
    freq = np.fft.fft(blocks, axis=0).real
    freq = 0.5 * (freq + np.swapaxes(freq, 1, 2))
    eigs = np.linalg.eigvalsh(freq).ravel()
    return np.sort(eigs)[::-1]


def dense_norm(kernel, grid: SphereGrid) -> float:
    """Spectral norm of the Nystrom matrix of a (possibly indefinite) kernel."""
    eigs = gram_eigs(kernel, grid)
    return float(np.max(np.abs(eigs)))


@dataclass(frozen=True)
class FunkHeckeReport:
    passed: bool
    clusters: list          # (degree, expected, multiplicity, max relative error)
    residual: float         # largest |eigenvalue| outside the clusters
    offending: list
    min_eig: float


def funk_hecke_check(spec: ZonalKernelSpec, grid: SphereGrid, n_check: int = 10,
                     rtol: float = 1e-6) -> FunkHeckeReport:
    """Nystrom eigenvalues should sit at lam_n with multiplicity 2n + 1.

    Eigenvalues are assigned to degrees by matching sorted positions against
    the expected flattened spectrum, so repeated or crossing values are
    handled without a clustering heuristic.
    """
    if 2 * grid.n_theta - 1 < 2 * spec.n_trunc or grid.n_phi <= 2 * spec.n_trunc:
        raise DomainError("grid is not exact up to twice the truncation degree")
    eigs = gram_eigs(kernel_from_spec(spec), grid)
    degrees = np.arange(spec.coeffs.size)
    expected = np.repeat(spec.coeffs, 2 * degrees + 1)
    owner = np.repeat(degrees, 2 * degrees + 1)
    order = np.argsort(-expected, kind="stable")
    expected, owner = expected[order], owner[order]
    got = eigs[: expected.size]
    clusters, offending = [], []
    for n in range(min(n_check, spec.n_trunc) + 1):
        sel = owner == n
        lam = spec.coeffs[n]
        if lam == 0:
            err = float(np.max(np.abs(got[sel])))
        else:
            err = float(np.max(np.abs(got[sel] - lam)) / lam)
        clusters.append((n, float(lam), int(sel.sum()), err))
        if err >= rtol:
            offending.append(n)
    rest = eigs[expected.size:]
    residual = float(np.max(np.abs(rest))) if rest.size else 0.0
    scale = float(np.max(spec.coeffs))
    passed = not offending and residual <= rtol * scale
    return FunkHeckeReport(passed, clusters, residual, offending, float(eigs[-1]))


def _circle_frame(x):
    """Two unit vectors completing x to an orthonormal frame, row-wise."""
    x = np.atleast_2d(x)
    helper = np.where(np.abs(x[:, [0]]) < 0.9, np.array([[1.0, 0.0, 0.0]]), np.array([[0.0, 1.0, 0.0]]))
    e1 = helper - np.sum(helper * x, axis=1, keepdims=True) * x
    e1 /= np.linalg.norm(e1, axis=1, keepdims=True)
    e2 = np.cross(x, e1)
    return e1, e2


def circle_points(x, t: float, n_c: int = 256) -> np.ndarray:
    """(k, n_c, 3) equally spaced points at geodesic distance t from each x."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    e1, e2 = _circle_frame(x)
    psi = 2 * math.pi * np.arange(n_c) / n_c
    ring = np.cos(psi)[None, :, None] * e1[:, None, :] + np.sin(psi)[None, :, None] * e2[:, None, :]
    return math.cos(t) * x[:, None, :] + math.sin(t) * ring


def translate_direct(f, t: float, n_c: int = 256):
    """x -> mean of f over the geodesic circle of radius t about x."""
    if not 0 < t < math.pi:
        raise DomainError("t must lie in (0, pi)")

    def translated(x):
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        pts = circle_points(x, t, n_c)
        vals = np.asarray(f(pts.reshape(-1, 3)), dtype=float).reshape(pts.shape[:2])
        out = vals.mean(axis=1)
        return float(out[0]) if single else out

    return translated


def zonal_harmonic(n: int, pole):
    """x -> P_n(pole . x), a degree-n spherical harmonic on S^2."""
    pole = np.asarray(pole, dtype=float)
    pole = pole / np.linalg.norm(pole)
    c = np.zeros(n + 1)
    c[n] = 1.0
    return lambda x: legval(np.asarray(x) @ pole, c)


def random_unit_vectors(rng: np.random.Generator, k: int) -> np.ndarray:
    v = rng.standard_normal((k, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)
