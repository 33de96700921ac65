"""Seeded sample generators on the condition surfaces.

The one-flip curves CT n CS1 / CS3 are rational (a conic after the
standard substitution) and are sampled directly.  CS2 and CS13 admit
valid parameters only on the family mu = 3, lam*nu = 3, which is also
Theorem-3's equal-measure family.  The two-flip curves CT n CS12 and
CT n CS23 are smooth plane cubics, so rational points are produced by
exact chord-and-tangent steps from small known points and filtered for
validity (all three parameters positive, lam != 1).
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .maps import ParamTriple

__all__ = [
    "ct_samples",
    "condition_surface_samples",
    "cubic_rational_points",
]


def _rand_q(rng: random.Random, lo: Fraction, hi: Fraction, den_max: int = 40) -> Fraction:
    den = rng.randint(2, den_max)
    lo_n = int(lo * den) + 1
    hi_n = int(hi * den) - 1
    return Fraction(rng.randint(lo_n, hi_n), den)


def _nu_ct(lam: Fraction, mu: Fraction) -> Fraction:
    return (lam * mu + mu - 3 * lam) / lam


def ct_samples(rng: random.Random, n: int) -> list[ParamTriple]:
    """Random positive triples on the CT surface (nu solved from CT)."""
    out = []
    while len(out) < n:
        lam = _rand_q(rng, Fraction(1, 10), Fraction(6))
        mu = _rand_q(rng, Fraction(1, 10), Fraction(8))
        nu = _nu_ct(lam, mu)
        if nu > 0:
            out.append(ParamTriple(lam, mu, nu))
    return out


def _cs1_samples(rng, n):
    # on CT the condition reduces to lam^2 mu + lam(mu+3) - 9 = 0, i.e.
    # mu = 3(3-lam)/(lam(lam+1)); nu > 0 needs lam^2 + lam - 3 < 0
    out = []
    while len(out) < n:
        lam = _rand_q(rng, Fraction(1, 20), Fraction(13, 10))
        if lam == 1:
            continue
        mu = 3 * (3 - lam) / (lam * (lam + 1))
        nu = _nu_ct(lam, mu)
        if mu > 0 and nu > 0:
            out.append(ParamTriple(lam, mu, nu))
    return out


def _mu3_samples(rng, n, exclude_lam=(Fraction(1),)):
    # the family mu = 3, lam*nu = 3 (valid locus of CS2 and CS13, and
    # Theorem-3's equal-measure family for S123)
    out = []
    while len(out) < n:
        lam = _rand_q(rng, Fraction(1, 12), Fraction(12))
        if lam in exclude_lam:
            continue
        out.append(ParamTriple(lam, Fraction(3), 3 / lam))
    return out


def _cs3_samples(rng, n):
    # nu*CT + CS3 gives lam(nu^2 - nu - 3) = 3; valid for nu > (1+sqrt13)/2
    out = []
    while len(out) < n:
        nu = _rand_q(rng, Fraction(13, 5), Fraction(12))
        if nu == 3:    # the linear case
            continue
        lam = 3 / (nu * nu - nu - 3)
        mu = 3 * (nu + 3) / (nu * (nu - 1))
        if lam > 0 and mu > 0:
            out.append(ParamTriple(lam, mu, nu))
    return out


# ---------------------------------------------------------------------------
# chord-and-tangent on plane cubics
# ---------------------------------------------------------------------------

def _poly_mul(a, b):
    r = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            r[i + j] += x * y
    return r


def _line_restriction(coef: dict, p, direction):
    """Coefficients in t of F(p + t*direction) for a cubic F."""
    u0, v0 = p
    du, dv = direction
    out = [Fraction(0)] * 4
    for (i, j), c in coef.items():
        pu = [Fraction(1)]
        for _ in range(i):
            pu = _poly_mul(pu, [u0, du])
        for _ in range(j):
            pu = _poly_mul(pu, [v0, dv])
        for k, a in enumerate(pu):
            out[k] += c * a
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _curve_eval(coef, u, v):
    return sum(c * u ** i * v ** j for (i, j), c in coef.items())


def _grad(coef, u, v):
    fu = sum(c * i * u ** (i - 1) * v ** j for (i, j), c in coef.items() if i)
    fv = sum(c * j * u ** i * v ** (j - 1) for (i, j), c in coef.items() if j)
    return fu, fv


def _third_on_chord(coef, p1, p2):
    d = (p2[0] - p1[0], p2[1] - p1[1])
    cp = _line_restriction(coef, p1, d)
    if len(cp) != 4 or cp[0] != 0 or cp[3] + cp[2] + cp[1] + cp[0] != 0:
        return None
    t3 = cp[1] / cp[3]  # cubic with roots 0, 1, t3: product of nonzero roots
    return (p1[0] + t3 * d[0], p1[1] + t3 * d[1])


def _third_on_tangent(coef, p):
    fu, fv = _grad(coef, *p)
    if fu == 0 and fv == 0:
        return None
    d = (fv, -fu)
    cp = _line_restriction(coef, p, d)
    if len(cp) != 4 or cp[0] != 0 or cp[1] != 0:
        return None
    t3 = -cp[2] / cp[3]
    return (p[0] + t3 * d[0], p[1] + t3 * d[1])


def cubic_rational_points(coef: dict, seeds, want: int, good_filter=None,
                          max_rounds: int = 10):
    """Grow rational points of a plane cubic by chords and tangents.

    Stops once `want` points pass good_filter (all points when None).
    Coordinate heights roughly double each round; ten rounds stay well
    inside exact-arithmetic comfort.
    """
    pts = list(seeds)
    seen = set(seeds)
    good = [p for p in pts if good_filter is None or good_filter(p)]
    for _ in range(max_rounds):
        if len(good) >= want:
            break
        new = []
        for p in pts:
            q = _third_on_tangent(coef, p)
            if q and q not in seen:
                new.append(q)
        for p1, p2 in itertools.combinations(pts[:64], 2):
            q = _third_on_chord(coef, p1, p2)
            if q and q not in seen:
                new.append(q)
        if not new:
            break
        for q in new:
            if q in seen:
                continue
            seen.add(q)
            pts.append(q)
            if good_filter is None or good_filter(q):
                good.append(q)
    return pts if good_filter is None else good


# CT n CS12 in (lam, mu): mu^2 (1+lam) - mu lam(lam+4) - 3 lam = 0
_CS12_CUBIC = {(1, 2): Fraction(1), (0, 2): Fraction(1), (2, 1): Fraction(-1),
               (1, 1): Fraction(-4), (1, 0): Fraction(-3)}
_CS12_SEEDS = [(Fraction(1), Fraction(3)), (Fraction(1, 2), Fraction(2)),
               (Fraction(0), Fraction(0))]

# CT n CS23 in (mu, nu): mu^2 nu + 12 mu nu + 9 mu - 9 nu^2 - 27 nu = 0
_CS23_CUBIC = {(2, 1): Fraction(1), (1, 1): Fraction(12), (1, 0): Fraction(9),
               (0, 2): Fraction(-9), (0, 1): Fraction(-27)}
_CS23_SEEDS = [(Fraction(3), Fraction(3)), (Fraction(9, 2), Fraction(6)),
               (Fraction(0), Fraction(0))]

_CURVE_CACHE: dict = {}


def _height(t: ParamTriple) -> int:
    return max(v.numerator.bit_length() + v.denominator.bit_length() for v in t)


def _cs12_good(pt) -> bool:
    lam, mu = pt
    return lam > 0 and mu > 0 and lam != 1 and _nu_ct(lam, mu) > 0


def _cs12_pool() -> list[ParamTriple]:
    if "cs12" not in _CURVE_CACHE:
        pts = cubic_rational_points(_CS12_CUBIC, _CS12_SEEDS, want=28,
                                    good_filter=_cs12_good)
        good = [ParamTriple(lam, mu, _nu_ct(lam, mu)) for lam, mu in pts]
        _CURVE_CACHE["cs12"] = sorted(set(good), key=_height)
    return _CURVE_CACHE["cs12"]


def _cs23_good(pt) -> bool:
    mu, nu = pt
    den = nu + 3 - mu
    return mu > 0 and nu > 0 and den != 0 and mu / den > 0 and mu / den != 1


def _cs23_pool() -> list[ParamTriple]:
    if "cs23" not in _CURVE_CACHE:
        pts = cubic_rational_points(_CS23_CUBIC, _CS23_SEEDS, want=28,
                                    good_filter=_cs23_good)
        good = [ParamTriple(mu / (nu + 3 - mu), mu, nu) for mu, nu in pts]
        _CURVE_CACHE["cs23"] = sorted(set(good), key=_height)
    return _CURVE_CACHE["cs23"]


def condition_surface_samples(condition: str, rng: random.Random, n: int) -> list[ParamTriple]:
    """n random valid nonlinear triples with CT and the named condition exact."""
    if condition == "CS1":
        return _cs1_samples(rng, n)
    if condition in ("CS2", "CS13"):
        return _mu3_samples(rng, n)
    if condition == "CS123":
        return _mu3_samples(rng, n)
    if condition == "CS3":
        return _cs3_samples(rng, n)
    if condition == "CS12":
        pool = _cs12_pool()
    elif condition == "CS23":
        pool = _cs23_pool()
    else:
        raise KeyError(f"no sampler for {condition}")
    if len(pool) < n:
        raise RuntimeError(f"only {len(pool)} usable points on the {condition} curve")
    return rng.sample(pool, n)
