"""Riesz s-energy, per-point fields, gradients and the continuum constant."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPointsError, ConfigurationError, DomainError
from .geometry import DUPLICATE_TOL
from .specfun import gamma_fn

__all__ = [
    "EnergyReport",
    "RieszParams",
    "energy_and_gradient",
    "energy_upper_bound",
    "gamma_const",
    "riesz_energy",
    "riesz_gradient",
    "tangent_project",
]


@dataclass(frozen=True)
class RieszParams:
    dim_d: int
    s: float

    def __post_init__(self):
        if self.dim_d < 1:
            raise DomainError(f"d must be >= 1, got {self.dim_d}")
        if not (self.s >= 0 and math.isfinite(self.s)):
            raise DomainError(f"s must be finite and >= 0, got {self.s}")

    @property
    def kernel(self):
        return "logarithmic" if self.s == 0 else "power"


@dataclass(frozen=True)
class EnergyReport:
    total: float
    per_point: np.ndarray
    grad_tangent_norm: float


def _pair_geometry(points):
    diff = points[:, None, :] - points[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    np.fill_diagonal(dist, np.inf)
    m = dist.min()
    if m < DUPLICATE_TOL:
        i, j = np.unravel_index(dist.argmin(), dist.shape)
        raise CoincidentPointsError(
            f"points {min(i, j)} and {max(i, j)} are {m:.3e} apart")
    return diff, dist


def tangent_project(points, vectors):
    """Remove the radial component of each row of ``vectors``."""
    radial = np.einsum("ij,ij->i", vectors, points)
    return vectors - radial[:, None] * points


def energy_and_gradient(points, s, with_gradient=True):
    """Energy pieces for a raw (N, d+1) array of unit vectors.

    Returns ``(total, per_point, tangent_gradient)``; the total counts every
    unordered pair twice and the gradient is of that total.
    """
    diff, dist = _pair_geometry(points)
    if s == 0:
        kern = -np.log(dist)  # diagonal: -log(inf) = -inf, cleared below
        np.fill_diagonal(kern, 0.0)
    else:
        kern = dist ** (-s)  # diagonal inf**(-s) = 0
    per_point = kern.sum(axis=1)
    total = math.fsum(per_point)
    if not with_gradient:
        return total, per_point, None
    if s == 0:
        coef = -(dist ** -2.0)
    else:
        coef = -s * dist ** (-s - 2.0)
    # elementwise reduction keeps the result independent of BLAS threading
    grad = 2.0 * (coef[:, :, None] * diff).sum(axis=1)
    return total, per_point, tangent_project(points, grad)


def _check(c, p):
    if p.dim_d != c.dim_d:
        raise ConfigurationError(
            f"parameters are for S^{p.dim_d} but configuration lives on S^{c.dim_d}")


def riesz_energy(c, p):
    """Total (ordered-pair) energy, per-point row sums and sup tangent-gradient norm."""
    _check(c, p)
    total, per_point, grad = energy_and_gradient(c.points, p.s)
    gnorm = float(np.linalg.norm(grad, axis=1).max())
    per_point = per_point.copy()
    per_point.setflags(write=False)
    return EnergyReport(total=total, per_point=per_point, grad_tangent_norm=gnorm)


def riesz_gradient(c, p):
    """Tangent-space gradient of the total energy, one row per point."""
    _check(c, p)
    return energy_and_gradient(c.points, p.s)[2]


def _check_s_range(d, s):
    if not (0 < s < d):
        raise DomainError(f"need 0 < s < d, got d={d}, s={s}")


def gamma_const(d, s, form="energy"):
    """Double integral of |x-y|^(-s) against the uniform measure on S^d.

    ``form="energy"`` uses Γ((d+1)/2)Γ(d-s) / (Γ((d-s+1)/2)Γ(d-s/2));
    ``form="boundary"`` uses 2^(-s)Γ(d)Γ((d-s)/2) / (Γ(d/2)Γ(d-s/2)), the
    limit of the uniform potential at the sphere.
    """
    _check_s_range(d, s)
    if form == "energy":
        return (gamma_fn((d + 1) / 2) * gamma_fn(d - s)
                / (gamma_fn((d - s + 1) / 2) * gamma_fn(d - s / 2)))
    if form == "boundary":
        return (2.0 ** (-s) * gamma_fn(d) * gamma_fn((d - s) / 2)
                / (gamma_fn(d / 2) * gamma_fn(d - s / 2)))
    raise ValueError(f"unknown form {form!r}")


def energy_upper_bound(d, s, n):
    """Averaging bound ``gamma_const(d, s) * n * (n - 1)`` on the minimal energy."""
    if n < 2:
        raise DomainError("n must be >= 2")
    return gamma_const(d, s) * n * (n - 1)
