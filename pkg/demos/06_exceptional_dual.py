"""An exceptional dual: no conjugacy, verified at 50 digits.

The three-branch family at lam = positive root of
448 L^2 + 283 L - 1113, mu = 63/16, nu = 7(lam+1)/4 has no natural
dual, yet the interval B* = [1/2, (448 lam - 257)/628] is invariant
under the adjoint branches (they tile it), so the two-term density
formula still holds.  The parameter is a quadratic irrational, so the
check runs in 50-digit arithmetic rather than exact rationals.
"""

import mpmath as mp

from pflmaps import exceptional_dual_verify
from pflmaps.catalog import catalog_get

objs = catalog_get("remark-exceptional").build()
lam, theta = objs["lam"], objs["theta"]
with mp.workdps(50):
    print("lam   =", mp.nstr(lam, 40))
    print("check: 448 lam^2 + 283 lam - 1113 =",
          mp.nstr(448 * lam ** 2 + 283 * lam - 1113, 5))
    print("B*    = [1/2,", mp.nstr(theta, 40), "]")

    # where the adjoint branches send B*: they tile it in order mu, nu, lam
    for label, (a, b, c, d) in zip("lam mu nu".split(), objs["rows"]):
        lo, hi = sorted([(b + d * e) / (a + c * e) for e in (mp.mpf(1) / 2, theta)])
        print(f"  adjoint branch {label:3s} maps B* onto "
              f"[{mp.nstr(lo, 12)}, {mp.nstr(hi, 12)}]")

rep = exceptional_dual_verify(objs["rows"], (objs["eta"], theta), dps=50)
print(f"\nverdict: {rep.verdict}; worst transfer residual over 25 points: "
      f"{rep.max_residual:.2e}")

pert = exceptional_dual_verify(objs["rows"], (objs["eta"], theta + mp.mpf(1) / 10),
                               dps=50)
print(f"perturbing theta by 1/10 -> {pert.verdict} "
      f"(residual {pert.max_residual:.2e})")
