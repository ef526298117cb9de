"""The conic y^2 = xz with twisted coefficients, one step at a time.

Run with ``python3 demos/conic_walkthrough.py``.
"""

from toric_height import (binomial_generators, canonical_height,
                          current_measure, lift_config,
                          mahler_hypersurface_height, section_data,
                          toric_degree, validate_config)

A = validate_config([(0,), (1,), (2,)])
alpha = (2, 1, 1)

# The image of t -> [2 : t : t^2] is cut out by one binomial.
(g,) = binomial_generators(A)
print("generator:", g, "  degree:", toric_degree(A))

# Lift A to A' in Z^2 so that X_A is the slice t_1 = 1 of X_{A'} = P^2.
L = lift_config(A)
sd = section_data(A, L)
print("lifted points:", L.points)
print("section: k =", sd.k, " c =", sd.c, " lambda =", sd.lam)

# The roof max_i(log|alpha_i| + <a'_i, s>) has one corner; its mass is 1.
measure = current_measure(L, alpha)
for v in measure.atoms:
    print("vertex", [str(c) for c in v.coords], "mass", v.local_degree)

rep = canonical_height(A, alpha)
print("height:", rep.value, "=", float(rep.value))
print("as log|alpha^b| with b =", [str(b) for b in rep.height.alpha_basis])

# Independent check: Mahler measure of 2 T1^2 - T0 T2.
mh = mahler_hypersurface_height(A, alpha, samples=400_000)
print(f"Mahler oracle: {mh.value:.5f} +- {mh.stderr:.5f}")
