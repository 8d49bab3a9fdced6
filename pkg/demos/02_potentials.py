# # Potential of the uniform measure
#
# The Riesz s-potential of normalized surface measure on S^d, evaluated at a
# point of radius R. Four independent routes should agree.

import numpy as np

from rieszsep.energy import gamma_const
from rieszsep.potential import (RadialQuery, uniform_potential_closed,
                                uniform_potential_elementary_d2,
                                uniform_potential_montecarlo,
                                uniform_potential_quadrature, uniform_potential)

# ## Closed form vs quadrature vs Monte Carlo

d, s = 3, 1.5
print(f"d={d} s={s}")
print(f"{'R':>5} {'closed':>20} {'quadrature':>20} {'monte carlo':>22}")
for R in (0.0, 0.5, 0.9, 1.1, 2.0, 5.0):
    q = RadialQuery(d, s, R)
    mc = uniform_potential_montecarlo(q, 200_000, seed=1)
    print(f"{R:5.1f} {uniform_potential_closed(q).value:20.15f} "
          f"{uniform_potential_quadrature(q).value:20.15f} "
          f"{mc.value:12.6f} ± {mc.abs_error_estimate:.1e}")

# ## On S^2 with s = 1
#
# The Newtonian case: the potential is 1 inside the ball and 1/R outside.

for R in (0.25, 0.75, 1.5, 4.0):
    print(R, uniform_potential_elementary_d2(1.0, R).value)

# ## Approaching the sphere
#
# As R -> 1 the potential tends to a constant gamma(d, s), which has two
# equivalent Gamma-function forms.

print("gamma energy form  :", gamma_const(d, s, "energy"))
print("gamma boundary form:", gamma_const(d, s, "boundary"))
for k in range(1, 7):
    R = 1 + 10.0 ** -k
    print(f"R=1+1e-{k}  gap={gamma_const(d, s) - uniform_potential_closed(RadialQuery(d, s, R)).value:.3e}")

# Radial profile; the dispatcher handles R = 1 through the boundary constant:

Rs = np.array([0.0, 0.5, 1.0, 1.5, 3.0])
print(np.array([uniform_potential(2, 1.5, r).value for r in Rs]))
