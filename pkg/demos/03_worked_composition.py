"""Compositions U = T o S and Z = S o T, and density transport.

If h is an invariant density of U, then g(x) = sum_j h(V_j x) w_j(x)
over the branches of S is an invariant density of Z.  The four-branch
worked example carries a natural dual on [-1/2, 0]; the common-fixed-
point example degenerates to a singular dual.
"""

from fractions import Fraction as F

from pflmaps import (MoebiusBranch, PiecewiseMap, SingularPoint, common_fixed_point,
                     compose_maps, density_from_dual, dual_interval,
                     kuzmin_check_exact, natural_dual_solve, transport_density)

S = PiecewiseMap([0, F(1, 2), 1],
                 [MoebiusBranch(2, 1, 1, -1), MoebiusBranch(3, -1, 3, -2)], name="S")
T = PiecewiseMap([0, F(1, 2), 1],
                 [MoebiusBranch(6, -1, 3, -3), MoebiusBranch(3, -1, 3, -2)], name="T")
U = compose_maps(T, S)
Z = compose_maps(S, T)
print("U = T o S branches:", [b.formula() for b in U.branches])
print("Z = S o T branches:", [b.formula() for b in Z.branches])

psi = natural_dual_solve(U)
iv = dual_interval(psi)
h = density_from_dual(iv)
print(f"\nU has a natural dual on {iv}; density h = {h}")
print("exact Kuzmin for h on U:", kuzmin_check_exact(U, h))

g = transport_density(S, h)
print(f"\ntransported density of Z: g = {g}")
print("exact Kuzmin for g on Z:", kuzmin_check_exact(Z, g))

# singular chain: all branches of U6 share the fixed point kappa = -2
S6 = PiecewiseMap([0, F(1, 2), 1],
                  [MoebiusBranch(4, 1, 2, -2), MoebiusBranch(6, -1, 3, 2)], name="S6")
T6 = PiecewiseMap([0, F(1, 2), 1],
                  [MoebiusBranch(4, 2, 0, 3), MoebiusBranch(4, 2, 4, -1)], name="T6")
U6 = compose_maps(T6, S6)
cfp = common_fixed_point(U6)
print(f"\ncommon fixed point of U6 branches: kappa = {cfp.kappa}"
      f" -> singular dual at xi = {cfp.xi}")
h6 = density_from_dual(SingularPoint(cfp.xi))
print("density 1/(1+xi x)^2 (up to scale):", h6,
      "| exact Kuzmin:", kuzmin_check_exact(U6, h6))
eta = S6.apply_forward(cfp.xi)
print(f"eta = S(xi) = {eta}; Z6 density = {density_from_dual(SingularPoint(eta))}")
print("transported:", transport_density(S6, h6), "(constant: flat measure)")
