"""Series densities with certified truncation error.

Two sources of infinite series: dual sets that are countable unions of
intervals (the one-step-extension map), and transport along countable
branch families (digit maps composed with x -> a x mod 1).  Partial
sums carry two-sided integral brackets, so every number below comes
with a proven error bound.
"""

import math
from fractions import Fraction as F

from pflmaps import gauss_map, intro_one_step_map, kuzmin_check_series, series_eval, transport_density
from pflmaps.catalog import ex4_series_density, intro_series_density
from pflmaps.polys import Polynomial, RationalFunction

m = intro_one_step_map()
print("one-step map branches:", [b.formula() for b in m.branches])
dens = intro_series_density()
print("density term j:", dens.term_rf(0), ",", dens.term_rf(1), ", ...")

sv = series_eval(dens, F(1), 1e-10)
print(f"\ndensity at x = 1: {sv.value:.12f} +- {sv.bound:.1e}"
      f"  ({sv.terms_used} terms)")
print(f"log 2          : {math.log(2):.12f}   (difference "
      f"{abs(sv.value - math.log(2)):.1e})")

pts = [F(i, 8) for i in range(1, 8)]
rep = kuzmin_check_series(m, dens, pts, tol=1e-8, J=8000)
print(f"\ncertified transfer residual on 7 points: {rep.verdict}"
      f" (max certified {rep.max_certified:.2e})")

# Gauss map composed with doubling: transported density comes out as the
# printed series termwise
h = RationalFunction(Polynomial.const(1), Polynomial([2, 1]))    # 1/(2+x)
g = transport_density(gauss_map(), h)
print("\ntransported series terms (m = 1, 2, 3):")
for k in range(1, 4):
    print("  ", g.term_rf(k))
printed = ex4_series_density(2)
assert all(g.term_rf(k) == printed.term_rf(k) for k in range(1, 30))
print("matches the closed-form series termwise (m <= 30)")

v = printed.eval_certified(0.5, 4000)
print(f"g(1/2) = {v[0]:.12f} +- {v[1]:.1e}")
