import math

import numpy as np
import pytest

from rieszsep.energy import RieszParams, gamma_const, riesz_energy
from rieszsep.errors import DomainError
from rieszsep.geometry import Configuration, min_separation, random_uniform, roots_of_unity
from rieszsep.optimizer import NOISE_REL, OptimizerConfig, minimize, polish

from test_energy import TET_ENERGY, circle_energy
from test_geometry import tetrahedron


def test_config_validation():
    with pytest.raises(DomainError):
        OptimizerConfig(backtrack_factor=1.0)
    with pytest.raises(DomainError):
        OptimizerConfig(grad_tol=0)
    assert OptimizerConfig().initial_step(2, 1, 100) == pytest.approx(0.1 / 1000)


def test_circle_five_points():
    r = minimize(1, 1, 5)
    assert r.converged
    assert r.energy == pytest.approx(circle_energy(5, 1), rel=1e-8)
    assert min_separation(r.config).min_distance == pytest.approx(2 * math.sin(math.pi / 5), abs=1e-6)


def test_two_points_antipodal():
    r = minimize(2, 1, 2)
    assert r.energy == pytest.approx(1.0, rel=1e-12)
    assert min_separation(r.config).min_distance == pytest.approx(2.0, abs=1e-9)


def test_tetrahedron():
    r = minimize(2, 1, 4)
    assert r.energy == pytest.approx(TET_ENERGY, rel=1e-6)
    assert r.consensus >= 6


def test_result_invariants():
    r = minimize(2, 1.5, 30, OptimizerConfig(restarts=2))
    p = RieszParams(2, 1.5)
    assert r.energy == pytest.approx(riesz_energy(r.config, p).total, rel=1e-10)
    assert r.converged and r.grad_norm <= 1e-10
    assert np.abs(np.linalg.norm(r.config.points, axis=1) - 1).max() <= 1e-12
    assert np.all(np.diff(r.trace) <= NOISE_REL * np.abs(r.trace[1:]))
    # at a stationary point each node minimizes its own field (up to slack)
    assert r.config.n ** -1 * riesz_energy(r.config, p).per_point.max() <= gamma_const(2, 1.5) * (1 + 1e-6)


def test_polish_global_optimum_on_circle():
    r = polish(roots_of_unity(6), RieszParams(1, 1))
    assert r.converged
    assert r.iterations == 0


def test_polish_recovers_tetrahedron():
    rng = np.random.default_rng(7)
    start = Configuration.from_array(tetrahedron().points + 1e-3 * rng.standard_normal((4, 3)))
    r = polish(start, RieszParams(2, 1))
    assert r.energy == pytest.approx(TET_ENERGY, rel=1e-8)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_polish_never_increases(seed):
    c = random_uniform(2, 25, seed)
    p = RieszParams(2, 1)
    e0 = riesz_energy(c, p).total
    r = polish(c, p, OptimizerConfig(max_iters=50))
    assert r.energy <= e0
    assert not r.converged  # 50 iterations are not enough at N=25


def test_log_kernel_on_circle():
    r = minimize(1, 0.0, 6, OptimizerConfig(restarts=3))
    expected = -6 * math.fsum(math.log(2 * math.sin(math.pi * k / 6)) for k in range(1, 6))
    assert r.energy == pytest.approx(expected, rel=1e-10)


def test_determinism_across_workers(monkeypatch):
    cfg = OptimizerConfig(restarts=4, seed=3)
    monkeypatch.setenv("RIESZ_THREADS", "1")
    a = minimize(2, 1, 12, cfg)
    monkeypatch.setenv("RIESZ_THREADS", "4")
    b = minimize(2, 1, 12, cfg)
    assert a.energy == b.energy
    assert a.restart_energies == b.restart_energies
    np.testing.assert_array_equal(a.config.points, b.config.points)


def test_rejects_bad_arguments():
    with pytest.raises(DomainError):
        minimize(2, 1, 1)
