import math

import numpy as np
import pytest

from rieszsep.energy import RieszParams, gamma_const
from rieszsep.errors import CoincidentPointsError, DomainError
from rieszsep.geometry import Configuration, random_uniform, roots_of_unity
from rieszsep.potential import (RadialQuery, discrete_potential, uniform_potential,
                                uniform_potential_boundary, uniform_potential_closed,
                                uniform_potential_elementary_d2,
                                uniform_potential_montecarlo,
                                uniform_potential_quadrature)

POLES = Configuration([[0, 0, 1.0], [0, 0, -1.0]])


class TestDiscrete:
    def test_pole_pair(self):
        val = discrete_potential(POLES, RieszParams(2, 1), np.array([0, 0, 2.0]))
        assert val == pytest.approx(2 / 3, rel=1e-15)

    def test_centre(self):
        c = random_uniform(3, 17, seed=2)
        assert discrete_potential(c, RieszParams(3, 1), np.zeros(4)) == pytest.approx(1.0, rel=1e-14)

    def test_square_exterior(self):
        oracle = 0.25 * (1 / 0.5 + 2 / math.sqrt(1.5 ** 2 + 1) + 1 / 2.5)
        val = discrete_potential(roots_of_unity(4), RieszParams(1, 1), np.array([1.5, 0.0]))
        assert val == pytest.approx(oracle, rel=1e-15)
        assert val == pytest.approx(0.8774, abs=1e-4)

    def test_singular(self):
        with pytest.raises(CoincidentPointsError):
            discrete_potential(POLES, RieszParams(2, 1), np.array([0, 0, 1.0]))


class TestClosedForm:
    def test_elementary_agreement(self):
        assert uniform_potential_closed(RadialQuery(2, 1, 2)).value == pytest.approx(0.5, rel=1e-13)
        assert uniform_potential_closed(RadialQuery(2, 1, 0.5)).value == pytest.approx(1.0, rel=1e-13)

    @pytest.mark.parametrize("d,s", [(1, 0.5), (2, 1.0), (3, 2.5), (5, 7.0)])
    def test_origin(self, d, s):
        assert uniform_potential_closed(RadialQuery(d, s, 0.0)).value == 1.0

    def test_on_sphere_redirects(self):
        with pytest.raises(DomainError):
            uniform_potential_closed(RadialQuery(2, 1, 1.0))
        with pytest.raises(DomainError):
            RadialQuery(2, 2.5, 1.0)

    def test_large_s_off_sphere(self):
        # s >= d is allowed away from the sphere; check against quadrature
        q = RadialQuery(2, 3.0, 1.5)
        assert uniform_potential_closed(q).value == pytest.approx(
            uniform_potential_quadrature(q).value, rel=1e-10)


class TestBoundary:
    def test_values(self):
        assert uniform_potential_boundary(2, 1).value == pytest.approx(1.0, abs=1e-15)
        assert uniform_potential_boundary(3, 2).value == gamma_const(3, 2)
        with pytest.raises(DomainError):
            uniform_potential_boundary(2, 2)

    @pytest.mark.parametrize("d,s", [(2, 1.0), (3, 2.0)])
    def test_bracketed_by_closed_form(self, d, s):
        g = gamma_const(d, s)
        inner = uniform_potential_closed(RadialQuery(d, s, 1 - 1e-6)).value
        outer = uniform_potential_closed(RadialQuery(d, s, 1 + 1e-6)).value
        assert abs(inner - g) <= 1e-4 and abs(outer - g) <= 1e-4
        assert min(inner, outer) <= g + 1e-12 and max(inner, outer) >= g - 1e-12


class TestElementary:
    def test_examples(self):
        assert uniform_potential_elementary_d2(1, 2).value == pytest.approx(0.5, rel=1e-15)
        assert uniform_potential_elementary_d2(1, 3).value == pytest.approx(1 / 3, rel=1e-15)
        oracle = 0.25 * (3 ** 1.5 - 1) / 1.5
        assert uniform_potential_elementary_d2(0.5, 2).value == pytest.approx(oracle, rel=1e-15)
        assert oracle == pytest.approx(0.69936, abs=1e-5)

    @pytest.mark.parametrize("s,R", [(2, 2.0), (1, 0.0), (1, 1.0)])
    def test_domain(self, s, R):
        with pytest.raises(DomainError):
            uniform_potential_elementary_d2(s, R)

    @pytest.mark.parametrize("s", [0.5, 1.0, 1.5, 1.9, 2.5, 3.0])
    @pytest.mark.parametrize("R", [0.2, 0.5, 2.0, 4.0])
    def test_matches_hypergeometric(self, s, R):
        e = uniform_potential_elementary_d2(s, R).value
        c = uniform_potential_closed(RadialQuery(2, s, R)).value
        assert e == pytest.approx(c, rel=1e-10)


class TestQuadrature:
    def test_elementary_oracle(self):
        assert abs(uniform_potential_quadrature(RadialQuery(2, 1, 2)).value - 0.5) <= 1e-10

    def test_cross_method(self):
        q = RadialQuery(3, 2.5, 1.5)
        assert uniform_potential_quadrature(q).value == pytest.approx(
            uniform_potential_closed(q).value, rel=1e-8)

    @pytest.mark.parametrize("d", [1, 2, 3, 4, 6])
    def test_origin_normalization(self, d):
        assert uniform_potential_quadrature(RadialQuery(d, 1.3, 0.0)).value == pytest.approx(1.0, rel=1e-12)

    def test_near_boundary_refused(self):
        with pytest.raises(DomainError):
            uniform_potential_quadrature(RadialQuery(2, 1, 1.0005))


class TestMonteCarlo:
    def test_d2(self):
        v = uniform_potential_montecarlo(RadialQuery(2, 1, 2), 10**6, seed=1)
        assert abs(v.value - 0.5) <= 3 * v.abs_error_estimate

    def test_origin(self):
        v = uniform_potential_montecarlo(RadialQuery(3, 1.7, 0.0), 2000, seed=0)
        assert v.value == pytest.approx(1.0, abs=1e-14)
        assert v.abs_error_estimate <= 1e-14

    def test_d3_cross(self):
        q = RadialQuery(3, 2, 1.5)
        v = uniform_potential_montecarlo(q, 10**6, seed=3)
        assert abs(v.value - uniform_potential_closed(q).value) <= 3 * v.abs_error_estimate

    def test_deterministic(self):
        q = RadialQuery(2, 1.5, 0.7)
        assert (uniform_potential_montecarlo(q, 5000, 9).value
                == uniform_potential_montecarlo(q, 5000, 9).value)

    def test_sample_floor(self):
        with pytest.raises(DomainError):
            uniform_potential_montecarlo(RadialQuery(2, 1, 2), 10, 0)


class TestInvariants:
    @pytest.mark.parametrize("d,s", [(2, 1.0), (2, 1.5), (3, 2.0), (3, 2.5), (1, 0.5)])
    def test_boundary_limit(self, d, s):
        g = gamma_const(d, s)
        gaps = [abs(uniform_potential_closed(RadialQuery(d, s, 1 + h)).value - g)
                for h in 10.0 ** -np.arange(1, 6)]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))

    def test_radial(self):
        # discrete potential of many uniform nodes approaches the closed form at any direction
        c = random_uniform(2, 4000, seed=8)
        p = RieszParams(2, 1.0)
        for direction in (np.array([1.0, 0, 0]), np.array([0, 0.6, 0.8])):
            val = discrete_potential(c, p, 2.0 * direction)
            assert val == pytest.approx(0.5, rel=2e-2)

    def test_dispatch(self):
        assert uniform_potential(2, 1, 2, "elementary").method == "elementary_d2"
        assert uniform_potential(2, 1, 1.0, "closed").method == "boundary_gamma"
        assert uniform_potential(2, 1, 2, "quadrature").method == "funk_hecke_quadrature"
        assert uniform_potential(2, 1, 2, "montecarlo", samples=2000).method == "monte_carlo"
        with pytest.raises(DomainError):
            uniform_potential(3, 1, 2, "elementary")
