"""The three-branch family, its flips, and natural dual maps.

family_T(lam, mu, nu) is the increasing three-branch map with cells
[0,1/3], [1/3,2/3], [2/3,1].  S1, ..., S123 replace subsets of branches
by their flips.  A natural dual is a Moebius conjugacy
psi(t) = (B+Dt)/(A+Bt) intertwining every branch with its adjoint; it
exists exactly when the named condition (CT for T, CS1 for S1, ...)
vanishes, and its endpoint pair {psi(0), psi(1)} determines the
invariant density in closed form.
"""

from fractions import Fraction as F

from pflmaps import (CONDITIONS, ParamTriple, condition_eval,
                     condition_from_determinant, density_from_dual,
                     dual_interval, flip_family, kuzmin_check_exact,
                     natural_dual_solve, same_measure)

t = ParamTriple.of(F(3, 4), F(36, 7), 9)
print("parameter triple:", t)
print("condition residues:")
for cid in CONDITIONS:
    print(f"  {cid:6s} = {condition_eval(cid, t)}")

T = flip_family("T", t)
S1 = flip_family("S1", t)
print("\nT branches: ", [b.formula() for b in T.branches])
print("S1 branches:", [b.formula() for b in S1.branches])

psi = natural_dual_solve(T)
print("\nnatural dual of T: ", psi, " endpoints", set(psi.endpoints()))
print("natural dual of S1:", natural_dual_solve(S1))

iv = dual_interval(psi)
h = density_from_dual(iv)
print(f"\ndual set {iv} induces the density h = {h}")
print("exact transfer-operator fixed point on T: ", kuzmin_check_exact(T, h))
print("exact transfer-operator fixed point on S1:", kuzmin_check_exact(S1, h))
print("same invariant measure?", same_measure(T, S1).value)

det_T = condition_from_determinant("T")
t2 = ParamTriple.of(F(5, 3), F(7, 2), F(4, 9))
print("\nsolvability determinant is a fixed multiple of the condition:")
print("  det/CT at", t2, "=", det_T(t2) / condition_eval("CT", t2))

# flipping two branches generally breaks measure equality
t12 = ParamTriple.of(F(1, 2), 2, 3)
print("\nat", t12, "T vs S12:",
      same_measure(flip_family("T", t12), flip_family("S12", t12)).value)
