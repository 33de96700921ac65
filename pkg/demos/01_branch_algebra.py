"""Branch algebra: the 2x2 matrix calculus behind everything else.

A branch V(x) = (c + d x)/(a + b x) is stored as [[a, b], [c, d]]
(denominator row first).  In this layout composition is the plain
matrix product, the adjoint (the building block of dual maps) is the
transpose, and flipping -- replacing a branch of T by the branch of
1 - T -- is V(1-x).
"""

from fractions import Fraction as F

from pflmaps import MoebiusBranch

V_alpha = MoebiusBranch(2, 1, 1, -1)      # (1-x)/(2+x)
V_gamma = MoebiusBranch(6, -1, 3, -3)     # (3-3x)/(6-x)

print("V_alpha =", V_alpha.formula())
print("V_gamma =", V_gamma.formula())
print("V_alpha(1/2) =", V_alpha(F(1, 2)))

comp = V_alpha.compose(V_gamma)
print("\ncomposition V_alpha o V_gamma =", comp.formula())
x = F(2, 7)
assert comp(x) == V_alpha(V_gamma(x))
print("agrees with pointwise evaluation at x =", x, "->", comp(x))

print("\nadjoint (transpose):", V_alpha.adjoint().formula())
print("flip V_alpha(1-x):  ", V_alpha.flip().formula())
assert V_alpha.flip().flip() == V_alpha
print("flip is an involution; it reverses monotonicity:",
      V_alpha.sign, "->", V_alpha.flip().sign)

print("\nJacobian |det|/(a+bx)^2 of V_alpha:", V_alpha.jacobian())

info = V_alpha.fixed_points()
print("\nfixed points of V_alpha solve", info.quadratic,
      "= 0; rational roots:", set(info.rational_roots) or "none",
      "; discriminant", info.discriminant)
print("real roots (floats):", info.real_root_floats())
