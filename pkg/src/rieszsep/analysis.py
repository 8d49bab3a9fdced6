"""Lemma checks, separation sweeps and empirical constants.

Every inequality checked here has an existential constant. The harness
turns each one into an implied value (the smallest constant that makes
the inequality hold on the tested data). A bound is supported when those
implied values stay bounded as N grows.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .energy import RieszParams, gamma_const, riesz_energy
from .errors import DomainError, InsufficientDataError
from .geometry import exterior_radius, min_separation, random_uniform, roots_of_unity
from .optimizer import OptimizerConfig, minimize
from .potential import (RadialQuery, SINGULAR_TOL, discrete_potential_many,
                        uniform_potential_closed)
from .specfun import Hyp2F1Params, gamma_fn, hyp2f1, near_one_ratio_limit

__all__ = [
    "LemmaConstants",
    "PACKING_CONSTANT",
    "SweepRecord",
    "SweepReport",
    "beta_const",
    "fibonacci_sphere",
    "fit_constants",
    "lemma1_implied_constant",
    "separation_slope",
    "separation_sweep",
    "sphere_probes",
    "verify_exterior",
    "verify_lemma1",
    "verify_lemma2",
    "verify_lemma4",
    "verify_lemma6",
]

# asymptotic best-packing diameter on S^2 is PACKING_CONSTANT / sqrt(N)
PACKING_CONSTANT = math.sqrt(8.0 * math.pi / math.sqrt(3.0))
LEMMA6_SLACK = 1e-6


def beta_const(d, s):
    """Γ(d+1)Γ((d-s)/2+1) / (Γ(d/2+1)Γ(s/2+1)), as printed for the shell estimate.

    The actual z -> 1 limit of 2F1(s/2+1, d/2+1; d+1; z)/(1-z)^((d-s-2)/2)
    has Γ(1-(d-s)/2) in place of Γ((d-s)/2+1); see ``beta_limit``.
    """
    return (gamma_fn(d + 1) * gamma_fn((d - s) / 2 + 1)
            / (gamma_fn(d / 2 + 1) * gamma_fn(s / 2 + 1)))


def beta_limit(d, s):
    """Limit constant of the derivative hypergeometric function at z = 1."""
    return near_one_ratio_limit(Hyp2F1Params(s / 2 + 1, d / 2 + 1, d + 1))


def _in_separation_range(d, s):
    return d - 1 <= s < d and s > 0


# --- energy lower bound ----------------------------------------------------

def lemma1_implied_constant(d, s, n, energy):
    """Smallest C with ``energy >= gamma N^2 - C N^(1+s/d)``, clamped at 0."""
    g = gamma_const(d, s)
    return max(0.0, (g * n * n - energy) / n ** (1.0 + s / d))


def verify_lemma1(d, s, n, config, C):
    """Check ``E_s > gamma N^2 - C N^(1+s/d)``; returns ``(flag, margin)``."""
    if n != config.n:
        raise DomainError(f"n={n} but the configuration has {config.n} points")
    total = riesz_energy(config, RieszParams(d, s)).total
    margin = total - (gamma_const(d, s) * n * n - C * n ** (1.0 + s / d))
    return margin > 0, margin


# --- discrete potential on the sphere --------------------------------------

def fibonacci_sphere(n):
    """Quasi-uniform spiral points on S^2."""
    k = np.arange(n) + 0.5
    z = 1.0 - 2.0 * k / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = math.pi * (3.0 - math.sqrt(5.0)) * k
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def sphere_probes(d, count, seed=0):
    """Probe points on S^d: circle roots for d=1, spiral for d=2, random above."""
    if d == 1:
        return roots_of_unity(count, phase=math.pi / count).points
    if d == 2:
        return fibonacci_sphere(count)
    return random_uniform(d, count, seed).points


@dataclass(frozen=True)
class SphereFieldCheck:
    min_potential: float
    fitted_C: float
    argmin: np.ndarray = field(repr=False)
    probes_used: int = 0


def verify_lemma2(config, p, probe_count=2000, seed=0):
    """Minimum of the node potential over sphere probes and node antipodes.

    Returns the minimum and the implied ``C = (gamma - min) N^(1 - s/d)``.
    """
    d, s, n = p.dim_d, p.s, config.n
    if not 0 < s < d:
        raise DomainError(f"need 0 < s < d, got d={d}, s={s}")
    probes = np.vstack([sphere_probes(d, probe_count, seed), -config.points])
    diff = probes[:, None, :] - config.points[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    keep = dist.min(axis=1) >= SINGULAR_TOL
    probes = probes[keep]
    vals = (dist[keep] ** (-s)).mean(axis=1)
    k = int(np.argmin(vals))
    m = float(vals[k])
    C = max(0.0, (gamma_const(d, s) - m) * n ** (1.0 - s / d))
    return SphereFieldCheck(m, C, probes[k], int(keep.sum()))


# --- uniform potential just outside the sphere -----------------------------

@dataclass(frozen=True)
class ShellCheck:
    radius: float
    lhs: float
    gamma: float
    fitted_C: float
    prefactor: float
    prefactor_linear: float
    integral: float
    integral_model: float
    shell_bound: float

    @property
    def integral_ratio(self):
        """integral / (limit constant x power law); tends to 1 as N grows."""
        return self.integral / self.integral_model


def verify_lemma4(d, s, n):
    """Uniform potential at radius ``1 + n^(-1/d)`` and the pieces of its expansion.

    ``integral`` is the exact value of the integral of
    2F1(s/2+1, d/2+1; d+1; z) from z0 = 4R/(R+1)^2 to 1, obtained from the
    derivative identity as (4/s)(F(1) - F(z0)). ``integral_model`` replaces
    the integrand by its z -> 1 asymptote and ``shell_bound`` is the
    resulting power of N.
    """
    if not _in_separation_range(d, s):
        raise DomainError(f"need d-1 <= s < d with s > 0, got d={d}, s={s}")
    R = exterior_radius(n, d)
    g = gamma_const(d, s)
    lhs = uniform_potential_closed(RadialQuery(d, s, R)).value
    fitted = max(0.0, (g - lhs) * n ** (1.0 - s / d))

    base = Hyp2F1Params(s / 2, d / 2, d)
    z0 = 4.0 * R / (R + 1.0) ** 2
    omz0 = ((R - 1.0) / (R + 1.0)) ** 2
    f1 = hyp2f1(base, 1.0).value
    f0 = hyp2f1(base, z0, one_minus_z=omz0).value
    integral = 4.0 / s * (f1 - f0)
    lim = beta_limit(d, s)
    model = lim * 2.0 / (d - s) * ((R - 1.0) / (R + 1.0)) ** (d - s)
    bound = 2.0 ** (s - d + 1) / (d - s) * lim * n ** (-1.0 + s / d)
    return ShellCheck(
        radius=R,
        lhs=lhs,
        gamma=g,
        fitted_C=fitted,
        prefactor=(R + 1.0) ** (-s),
        prefactor_linear=2.0 ** (-s) * (1.0 - s / 2 * n ** (-1.0 / d)),
        integral=integral,
        integral_model=model,
        shell_bound=bound,
    )


# --- node field and the exterior potential ---------------------------------

def _max_normalized_field(config, s):
    rep = riesz_energy(config, RieszParams(config.dim_d, s))
    return float(rep.per_point.max()) / config.n


def verify_lemma6(result, p, slack=LEMMA6_SLACK):
    """``max_i N^-1 sum_{j != i} |x_i - x_j|^-s <= gamma (1 + slack)``.

    Accepts an ``OptimizationResult`` or a bare ``Configuration``.
    """
    if not 0 < p.s < p.dim_d:
        raise DomainError(f"need 0 < s < d, got d={p.dim_d}, s={p.s}")
    config = getattr(result, "config", result)
    field_max = _max_normalized_field(config, p.s)
    return field_max, field_max <= gamma_const(p.dim_d, p.s) * (1.0 + slack)


@dataclass(frozen=True)
class ExteriorCheck:
    min_potential: float
    fitted_C: float
    radius: float


def verify_exterior(config, p):
    """Node potential at every node pushed out to radius ``1 + N^(-1/d)``."""
    d, s, n = p.dim_d, p.s, config.n
    if not 0 < s < d:
        raise DomainError(f"need 0 < s < d, got d={d}, s={s}")
    R = exterior_radius(n, d)
    vals = discrete_potential_many(config.points, s, R * config.points)
    m = float(vals.min())
    C = max(0.0, (gamma_const(d, s) - m) * n ** (1.0 - s / d))
    return ExteriorCheck(m, C, R)


# --- sweeps -----------------------------------------------------------------

@dataclass(frozen=True)
class SweepRecord:
    n: int
    best_energy: float
    min_distance: float
    scaled_separation: float
    converged: bool
    consensus: int
    lemma1_C: float = None
    lemma6_max_field: float = None
    lemma6_pass: bool = None
    lemma2_min_potential_on_sphere: float = None
    lemma2_C: float = None
    exterior_potential_at_R_N: float = None
    exterior_C: float = None
    lemma4_C: float = None

    @property
    def packing_ratio(self):
        return self.scaled_separation / PACKING_CONSTANT


@dataclass(frozen=True)
class LemmaConstants:
    gamma: float
    beta: float
    beta_limit: float
    fitted_C_lemma1: float
    fitted_C_lemma2: float
    fitted_C_lemma4: float
    fitted_C_exterior: float
    empirical_A: float


@dataclass(frozen=True)
class SweepReport:
    d: int
    s: float
    records: tuple
    constants: LemmaConstants = None
    configs: tuple = field(default=(), repr=False)

    @property
    def empirical_A(self):
        return min(r.scaled_separation for r in self.records)

    @property
    def packing_ratio_d2(self):
        if self.d != 2:
            return None
        return max(r.packing_ratio for r in self.records)


def _sweep_record(d, s, result, probe_count, seed):
    cfg = result.config
    sep = min_separation(cfg)
    rec = dict(
        n=cfg.n,
        best_energy=result.energy,
        min_distance=sep.min_distance,
        scaled_separation=sep.scaled,
        converged=result.converged,
        consensus=result.consensus,
    )
    if 0 < s < d:
        p = RieszParams(d, s)
        field_max, ok = verify_lemma6(result, p)
        l2 = verify_lemma2(cfg, p, probe_count, seed)
        ext = verify_exterior(cfg, p)
        rec.update(
            lemma1_C=lemma1_implied_constant(d, s, cfg.n, result.energy),
            lemma6_max_field=field_max,
            lemma6_pass=ok,
            lemma2_min_potential_on_sphere=l2.min_potential,
            lemma2_C=l2.fitted_C,
            exterior_potential_at_R_N=ext.min_potential,
            exterior_C=ext.fitted_C,
        )
    if _in_separation_range(d, s):
        rec["lemma4_C"] = verify_lemma4(d, s, cfg.n).fitted_C
    return SweepRecord(**rec)


def _max_or_zero(values):
    values = [v for v in values if v is not None]
    return max(values) if values else 0.0


def _constants(d, s, records):
    in_range = 0 < s < d
    return LemmaConstants(
        gamma=gamma_const(d, s) if in_range else float("nan"),
        beta=beta_const(d, s) if in_range else float("nan"),
        beta_limit=beta_limit(d, s) if _in_separation_range(d, s) else float("nan"),
        fitted_C_lemma1=_max_or_zero(r.lemma1_C for r in records),
        fitted_C_lemma2=_max_or_zero(r.lemma2_C for r in records),
        fitted_C_lemma4=_max_or_zero(r.lemma4_C for r in records),
        fitted_C_exterior=_max_or_zero(r.exterior_C for r in records),
        empirical_A=min(r.scaled_separation for r in records),
    )


def separation_sweep(d, s, n_list, cfg=OptimizerConfig(), probe_count=2000,
                     keep_configs=False):
    """Optimize for each N and run every applicable lemma check.

    Point count ``n_list[i]`` uses base seed ``cfg.seed + i``.
    """
    n_list = sorted(int(n) for n in n_list)
    if not n_list or n_list[0] < 2:
        raise DomainError("n_list must be non-empty with every n >= 2")
    records, configs = [], []
    for i, n in enumerate(n_list):
        run_cfg = replace(cfg, seed=cfg.seed + i)
        result = minimize(d, s, n, run_cfg)
        records.append(_sweep_record(d, s, result, probe_count, cfg.seed + i))
        configs.append(result.config)
    return SweepReport(
        d=d,
        s=s,
        records=tuple(records),
        constants=_constants(d, s, records),
        configs=tuple(configs) if keep_configs else (),
    )


def fit_constants(report):
    """Empirical constants from a sweep with at least three point counts."""
    if len(report.records) < 3:
        raise InsufficientDataError(
            f"fit_constants needs >= 3 records, got {len(report.records)}")
    return _constants(report.d, report.s, report.records)


def separation_slope(report, converged_only=True):
    """Least-squares slope of log(scaled separation) against log(N)."""
    recs = [r for r in report.records if r.converged or not converged_only]
    if len(recs) < 2:
        raise InsufficientDataError("need two records for a slope")
    x = np.log([r.n for r in recs])
    y = np.log([r.scaled_separation for r in recs])
    return float(np.polyfit(x, y, 1)[0])
