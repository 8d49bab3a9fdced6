# # Special functions
#
# The package carries its own gamma function and a Gauss hypergeometric
# function 2F1 restricted to real arguments in [0, 1]. Everything else in the
# library is built on these two.

import math

import numpy as np

from rieszsep.specfun import (Hyp2F1Params, gamma_fn, hyp2f1, hyp2f1_derivative,
                              near_one_ratio_limit)

# ## Gamma
#
# A Lanczos approximation. Compare with the standard library on a few points.

for x in (0.5, 1.5, 3.25, 10.0, 25.0):
    print(f"x={x:6.2f}  gamma={gamma_fn(x):.16e}  rel err vs math.gamma={abs(gamma_fn(x) / math.gamma(x) - 1):.1e}")

# Legendre duplication holds to roughly machine precision:

z = np.linspace(0.5, 10, 5)
lhs = np.array([gamma_fn(2 * t) for t in z])
rhs = np.array([2 ** (2 * t - 1) / math.sqrt(math.pi) * gamma_fn(t) * gamma_fn(t + 0.5) for t in z])
print("duplication rel err:", np.abs(lhs / rhs - 1).max())

# ## 2F1
#
# Power series below z = 0.75, an Euler integral above, Gauss summation at z = 1.
# `method` tells you which route was taken.

p = Hyp2F1Params(0.5, 1.0, 2.0)
for zz in (0.2, 8 / 9, 0.999999, 1.0):
    r = hyp2f1(p, zz)
    print(f"z={zz:<10.7g} F={r.value:.16f}  err~{r.abs_error_estimate:.1e}  via {r.method}")

# 2F1(1/2, 1; 2; z) = 2(1 - sqrt(1 - z))/z, so at z = 8/9 we expect exactly 3/2.

# The derivative is itself a 2F1 with shifted parameters:

h = 1e-6
fd = (hyp2f1(p, 0.5 + h).value - hyp2f1(p, 0.5 - h).value) / (2 * h)
print("derivative:", hyp2f1_derivative(p, 0.5), " finite difference:", fd)

# When c - a - b < 0 the function blows up at z = 1 like (1 - z)^(c-a-b).
# The ratio tends to a finite limit:

q = Hyp2F1Params(1.5, 2.0, 3.0)
print("limit:", near_one_ratio_limit(q))
for k in (4, 8, 12):
    zz = 1 - 10.0 ** -k
    print(f"  1-z=1e-{k:<2d} ratio={hyp2f1(q, zz, one_minus_z=10.0 ** -k).value * (10.0 ** -k) ** -q.excess:.12f}")
