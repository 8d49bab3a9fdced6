# # Finding minimal-energy points
#
# Projected gradient descent on the product of spheres, several random
# restarts, best one wins.

import math

from rieszsep.analysis import verify_lemma6
from rieszsep.energy import RieszParams
from rieszsep.geometry import min_separation
from rieszsep.optimizer import OptimizerConfig, minimize

# ## Four points on S^2: the regular tetrahedron

r = minimize(2, 1.0, 4)
print("energy     :", r.energy)
print("expected   :", 12 / math.sqrt(8 / 3))
print("converged  :", r.converged, "after", r.iterations, "iterations")
print("consensus  :", r.consensus, "of", len(r.restart_energies), "restarts agree")

# ## Points on the circle end up equally spaced

for n in (5, 8):
    r = minimize(1, 1.0, n)
    print(n, min_separation(r.config).min_distance, 2 * math.sin(math.pi / n))

# ## A bigger run
#
# The energy trace is non-increasing (up to rounding near the optimum).

cfg = OptimizerConfig(restarts=4, seed=3)
r = minimize(2, 1.0, 60, cfg)
print("N=60 energy:", r.energy, "grad norm:", r.grad_norm, "converged:", r.converged)
print("trace head :", [round(float(e), 6) for e in r.trace[:5]])
print("restarts   :", [round(e, 10) for e in r.restart_energies])

# At a critical configuration the field of the other points at each node
# is bounded by a simple multiple of the energy:

field, ok = verify_lemma6(r, RieszParams(2, 1.0))
print("max node field:", field, "ok:", ok)

# Thread count (RIESZ_THREADS) changes only wall time, never the result.
