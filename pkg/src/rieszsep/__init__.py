"""Minimal Riesz energy points on spheres: energies, potentials, separation."""

from .energy import RieszParams, gamma_const, riesz_energy, riesz_gradient
from .geometry import (Configuration, min_separation, random_uniform,
                       roots_of_unity, scale_to_radius)
from .optimizer import OptimizerConfig, minimize, polish
from .potential import (RadialQuery, discrete_potential, uniform_potential,
                        uniform_potential_closed)
from .specfun import Hyp2F1Params, gamma_fn, hyp2f1

__version__ = "0.1.0"
