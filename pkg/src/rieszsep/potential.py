"""Riesz potentials of point sets and of the uniform measure on S^d.

The uniform-measure potential depends only on R = |x|. Four routes are
offered: the hypergeometric closed form, the elementary d = 2 form, a
one-dimensional Funk-Hecke quadrature and plain Monte Carlo. The last two
share no code with the first two, so they work as independent checks.
"""

import math
from dataclasses import dataclass

import numpy as np

from .energy import gamma_const
from .errors import CoincidentPointsError, DomainError
from .quadrature import gauss_legendre
from .specfun import Hyp2F1Params, gamma_fn, hyp2f1

__all__ = [
    "PotentialValue",
    "RadialQuery",
    "discrete_potential",
    "discrete_potential_many",
    "uniform_potential",
    "uniform_potential_boundary",
    "uniform_potential_closed",
    "uniform_potential_elementary_d2",
    "uniform_potential_montecarlo",
    "uniform_potential_quadrature",
]

SINGULAR_TOL = 1e-12
QUADRATURE_MIN_GAP = 1e-3


@dataclass(frozen=True)
class RadialQuery:
    d: int
    s: float
    radius: float

    def __post_init__(self):
        if self.d < 1:
            raise DomainError(f"d must be >= 1, got {self.d}")
        if not self.s > 0:
            raise DomainError(f"potentials need s > 0, got {self.s}")
        if not (self.radius >= 0 and math.isfinite(self.radius)):
            raise DomainError(f"radius must be finite and >= 0, got {self.radius}")
        if self.radius == 1.0 and not self.s < self.d:
            raise DomainError("the potential is infinite on the sphere when s >= d")


@dataclass(frozen=True)
class PotentialValue:
    value: float
    method: str
    abs_error_estimate: float = 0.0

    def __float__(self):
        return self.value


def discrete_potential_many(points, s, xs):
    """``N^-1 sum_j |x - x_j|^-s`` for every row ``x`` of ``xs``."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    diff = xs[:, None, :] - points[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    if dist.min() < SINGULAR_TOL:
        i, j = np.unravel_index(dist.argmin(), dist.shape)
        raise CoincidentPointsError(f"evaluation point {i} sits on node {j}")
    return (dist ** (-s)).mean(axis=1)


def discrete_potential(c, p, x):
    """Potential of the normalized counting measure of ``c`` at ``x``."""
    if not p.s > 0:
        raise DomainError("potentials need s > 0")
    x = np.asarray(x, dtype=float)
    if x.shape != (c.points.shape[1],):
        raise DomainError(f"point of shape {x.shape} does not match R^{c.points.shape[1]}")
    return float(discrete_potential_many(c.points, p.s, x)[0])


def uniform_potential_closed(q):
    """``(R+1)^-s 2F1(s/2, d/2; d; 4R/(R+1)^2)`` for ``R != 1``."""
    R = float(q.radius)
    if R == 1.0:
        raise DomainError("closed form is for R != 1; use uniform_potential_boundary")
    z = 4.0 * R / (R + 1.0) ** 2
    omz = ((R - 1.0) / (R + 1.0)) ** 2
    f = hyp2f1(Hyp2F1Params(q.s / 2, q.d / 2, q.d), min(z, 1.0), one_minus_z=omz)
    scale = (R + 1.0) ** (-q.s)
    return PotentialValue(scale * f.value, "closed_form", scale * f.abs_error_estimate)


def uniform_potential_boundary(d, s):
    """Value on the sphere itself, equal to ``gamma_const(d, s)`` for ``0 < s < d``."""
    if not 0 < s < d:
        raise DomainError(f"boundary value needs 0 < s < d, got d={d}, s={s}")
    return PotentialValue(gamma_const(d, s), "boundary_gamma", 0.0)


def uniform_potential_elementary_d2(s, radius):
    """Elementary form on S^2: ``((1+R)^(2-s) - |R-1|^(2-s)) / (2R(2-s))``."""
    R = float(radius)
    if s == 2:
        raise DomainError("the elementary form needs s != 2")
    if R <= 0 or R == 1.0:
        raise DomainError("the elementary form needs R > 0 and R != 1")
    val = ((1.0 + R) ** (2.0 - s) - abs(R - 1.0) ** (2.0 - s)) / (2.0 * R * (2.0 - s))
    return PotentialValue(val, "elementary_d2", 0.0)


def _funk_hecke_ratio(d):
    # ratio of surface areas |S^(d-1)| / |S^d|
    return gamma_fn((d + 1) / 2) / (math.sqrt(math.pi) * gamma_fn(d / 2))


def uniform_potential_quadrature(q, n_start=256, n_max=1 << 16, rtol=1e-11):
    """Funk-Hecke reduction integrated by Gauss-Legendre in the angle.

    With t = cos(theta) the weight (1-t^2)^((d-2)/2) dt becomes
    sin(theta)^(d-1) dtheta, which is smooth for every d. The node count
    doubles from ``n_start`` until successive values agree to ``rtol``.
    """
    R = float(q.radius)
    if abs(R - 1.0) < QUADRATURE_MIN_GAP:
        raise DomainError(
            f"quadrature needs |R - 1| >= {QUADRATURE_MIN_GAP}, got R={R}")
    gap2 = (R - 1.0) ** 2
    half_s = q.s / 2

    def integrand(theta):
        # |x - y|^2 = R^2 + 1 - 2R cos(theta), written without cancellation
        dist2 = gap2 + 4.0 * R * np.sin(0.5 * theta) ** 2
        return dist2 ** (-half_s) * np.sin(theta) ** (q.d - 1)

    ratio = _funk_hecke_ratio(q.d)
    n = n_start
    prev = ratio * gauss_legendre(integrand, 0.0, math.pi, n)
    while True:
        n *= 2
        cur = ratio * gauss_legendre(integrand, 0.0, math.pi, n)
        err = abs(cur - prev)
        if err <= rtol * abs(cur) or n >= n_max:
            return PotentialValue(cur, "funk_hecke_quadrature", err)
        prev = cur


def uniform_potential_montecarlo(q, samples=10**6, seed=0, chunk=250_000):
    """Sample mean of ``|x - Y|^-s`` over uniform ``Y`` on S^d.

    The reported error is the standard error of the mean.
    """
    if samples < 1000:
        raise DomainError("use at least 1000 samples")
    rng = np.random.default_rng(seed)
    x = np.zeros(q.d + 1)
    x[0] = q.radius
    total = 0.0
    total_sq = 0.0
    left = samples
    while left > 0:
        m = min(chunk, left)
        y = rng.standard_normal((m, q.d + 1))
        y /= np.linalg.norm(y, axis=1, keepdims=True)
        vals = np.linalg.norm(x - y, axis=1) ** (-q.s)
        total += math.fsum(vals)
        total_sq += math.fsum(vals * vals)
        left -= m
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    return PotentialValue(mean, "monte_carlo", math.sqrt(var / samples))


def uniform_potential(d, s, radius, method="closed", samples=10**6, seed=0):
    """Dispatch on ``method``: closed | elementary | quadrature | montecarlo.

    ``closed`` at R = 1 returns the boundary value.
    """
    if method == "elementary":
        if d != 2:
            raise DomainError("the elementary form exists only for d = 2")
        return uniform_potential_elementary_d2(s, radius)
    q = RadialQuery(d, s, radius)
    if method == "closed":
        if radius == 1.0:
            return uniform_potential_boundary(d, s)
        return uniform_potential_closed(q)
    if method == "quadrature":
        return uniform_potential_quadrature(q)
    if method == "montecarlo":
        return uniform_potential_montecarlo(q, samples, seed)
    raise ValueError(f"unknown method {method!r}")
