"""Riemannian gradient descent for near-minimal Riesz energy configurations.

Each step moves every point against its tangent gradient, pulls it back to
the sphere by normalization and backtracks until the energy goes down
(Armijo). Step lengths come from the Barzilai-Borwein formula, which keeps
the plain gradient method usable up to a few hundred points.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .energy import RieszParams, energy_and_gradient
from .errors import CoincidentPointsError, DomainError
from .geometry import Configuration, random_uniform

__all__ = [
    "OptimizationResult",
    "OptimizerConfig",
    "minimize",
    "polish",
    "worker_count",
]

_EPS = np.finfo(float).eps
# energies closer than this (relative) cannot be ordered reliably in float64
NOISE_REL = 64 * _EPS
CONSENSUS_RTOL = 1e-8


@dataclass(frozen=True)
class OptimizerConfig:
    max_iters: int = 5000
    grad_tol: float = 1e-10
    restarts: int = 8
    seed: int = 0
    step_init: float = None  # None -> 0.1 / N^(1+s/d)
    backtrack_factor: float = 0.5
    armijo: float = 1e-4
    workers: int = None  # None -> RIESZ_THREADS or the CPU count

    def __post_init__(self):
        if self.max_iters < 0 or self.restarts < 1:
            raise DomainError("max_iters must be >= 0 and restarts >= 1")
        if not self.grad_tol > 0:
            raise DomainError("grad_tol must be positive")
        if self.step_init is not None and not self.step_init > 0:
            raise DomainError("step_init must be positive")
        if not 0 < self.backtrack_factor < 1:
            raise DomainError("backtrack_factor must lie in (0, 1)")

    def initial_step(self, d, s, n):
        if self.step_init is not None:
            return self.step_init
        return 0.1 / n ** (1.0 + s / d)


@dataclass(frozen=True, eq=False)
class OptimizationResult:
    config: Configuration
    energy: float
    grad_norm: float
    iterations: int
    converged: bool
    restart_index: int = 0
    trace: np.ndarray = field(default=None, repr=False)
    restart_energies: tuple = ()

    @property
    def consensus(self):
        """Number of restarts whose energy is within 1e-8 (relative) of the best."""
        if not self.restart_energies:
            return 1
        tol = CONSENSUS_RTOL * abs(self.energy)
        return sum(abs(e - self.energy) <= tol for e in self.restart_energies)


def worker_count(cfg=None):
    if cfg is not None and cfg.workers:
        return int(cfg.workers)
    env = os.environ.get("RIESZ_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _sup_norm(g):
    return float(np.sqrt(np.einsum("ij,ij->i", g, g)).max())


def _normalize(x):
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def _descend(points, s, cfg, step0):
    x = _normalize(np.array(points, dtype=float))
    energy, _, grad = energy_and_gradient(x, s)
    gsup = _sup_norm(grad)
    trace = [energy]
    t = step0
    t_min = step0 * 1e-14
    t_max = step0 * 1e6
    it = 0
    converged = gsup <= cfg.grad_tol
    while not converged and it < cfg.max_iters:
        gg = float(np.einsum("ij,ij->", grad, grad))
        accepted = False
        while t >= t_min:
            y = _normalize(x - t * grad)
            try:
                e_new, _, g_new = energy_and_gradient(y, s)
            except CoincidentPointsError:
                t *= cfg.backtrack_factor
                continue
            if e_new <= energy - cfg.armijo * t * gg:
                accepted = True
            elif (abs(e_new - energy) <= NOISE_REL * abs(energy)
                  and float(np.einsum("ij,ij->", g_new, g_new)) < gg):
                # energy differences are below float resolution here; the
                # gradient norm is the only reliable descent signal left
                accepted = True
            if accepted:
                break
            t *= cfg.backtrack_factor
        if not accepted:
            break
        step = y - x
        dgrad = g_new - grad
        sy = float(np.einsum("ij,ij->", step, dgrad))
        ss = float(np.einsum("ij,ij->", step, step))
        t = min(max(ss / sy, t_min), t_max) if sy > 0 else min(2.0 * t, t_max)
        x, energy, grad = y, e_new, g_new
        gsup = _sup_norm(grad)
        trace.append(energy)
        it += 1
        converged = gsup <= cfg.grad_tol
    return x, energy, gsup, it, converged, np.array(trace)


def polish(c, p, cfg=OptimizerConfig(), restart_index=0):
    """Single descent started from the configuration ``c``."""
    if p.dim_d != c.dim_d:
        raise DomainError("parameter dimension does not match the configuration")
    step0 = cfg.initial_step(c.dim_d, p.s, c.n)
    x, energy, gsup, it, conv, trace = _descend(c.points, p.s, cfg, step0)
    return OptimizationResult(
        config=Configuration(x),
        energy=energy,
        grad_norm=gsup,
        iterations=it,
        converged=conv,
        restart_index=restart_index,
        trace=trace,
    )


def minimize(d, s, n, cfg=OptimizerConfig()):
    """Best of ``cfg.restarts`` descents from seeded uniform random starts.

    Restart ``k`` starts from ``random_uniform(d, n, cfg.seed + k)``, so the
    outcome does not depend on how many worker threads run them.
    """
    if n < 2 or d < 1 or s < 0:
        raise DomainError("minimize needs n >= 2, d >= 1, s >= 0")
    p = RieszParams(d, s)

    def run(k):
        start = random_uniform(d, n, cfg.seed + k)
        return polish(start, p, cfg, restart_index=k)

    workers = min(worker_count(cfg), cfg.restarts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(cfg.restarts)))
    else:
        results = [run(k) for k in range(cfg.restarts)]
    # lowest energy wins; ties go to the earliest restart
    best = min(results, key=lambda r: (r.energy, r.restart_index))
    return replace(best, restart_energies=tuple(r.energy for r in results))


def default_config_for(n, **kw):
    """Convenience: a config whose iteration budget grows with ``n``."""
    return OptimizerConfig(max_iters=max(5000, 40 * n), **kw)
