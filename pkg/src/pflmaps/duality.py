"""Transfer operator, natural duals, condition polynomials, densities.

The dual of a branch V = [[a,b],[c,d]] acts through the adjoint matrix
V* = [[a,c],[b,d]].  A map psi(t) = (B + D t)/(A + B t), i.e. the
symmetric matrix [[A,B],[B,D]], conjugates the map to its dual when

    psi o V_k = V_k* o psi        for every branch k.

Writing Psi = [[A,B],[B,D]] and M = [[a,b],[c,d]], the products Psi*M
and M^T*Psi agree on the diagonal identically, so each branch
contributes exactly one linear condition on (A, B, D):

    b*A + (d - a)*B - c*D = 0.

The solver takes the null space of the stacked system; the dual set is
the interval between psi(0) = B/A and psi(1) = (B+D)/(A+B), read
projectively since either endpoint may be infinite.  The dual set
[eta, theta] induces the invariant density

    h(x) = theta/(1 + theta x) - eta/(1 + eta x),

a point {xi} induces 1/(1 + xi x)^2, and a countable union of intervals
induces the corresponding sum of two-pole terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .branches import MoebiusBranch
from .maps import (CountableMap, FAMILY_FLIPS, ParamTriple, PiecewiseMap,
                   family_branch_coeffs, raw_flip)
from .polys import Polynomial, RationalFunction, qstr
from .transport import SeriesDensity

__all__ = [
    "CONDITIONS",
    "FAMILY_CONDITION",
    "condition_eval",
    "condition_from_determinant",
    "dual_system_rows",
    "natural_dual_solve",
    "PsiMap",
    "ProjQ",
    "DualDescriptor",
    "NaturalInterval",
    "SingularPoint",
    "IntervalUnion",
    "dual_interval",
    "density_from_dual",
    "transfer_apply",
    "kuzmin_check_exact",
    "SameMeasure",
    "same_measure",
    "common_fixed_point",
    "exceptional_dual_verify",
]


# ---------------------------------------------------------------------------
# condition polynomials (LHS - RHS, exact)
# ---------------------------------------------------------------------------

def _ct(l, m, n):
    return l * m + m - l * n - 3 * l


CONDITIONS = {
    "CT": _ct,
    "CS1": lambda l, m, n: l * m * n + 3 * l * m + 12 * m - 9 * n - 27,
    "CS2": lambda l, m, n: l * m * n - 9,
    "CS3": lambda l, m, n: 4 * l * n - m * n - l * m * n + 3 * l + 3,
    "CS12": lambda l, m, n: m * n - l * n - 3 * l - 3,
    "CS23": lambda l, m, n: l * m * n + 3 * m - 9 * n + 3 * l * m,
    "CS13": lambda l, m, n: l * m * n + 3 * m * n - 9 * n - 9,
    "CS123": lambda l, m, n: l * m - 4 * l * n + m * n - 3 * l + 4 * m - 3 * n,
}

# condition paired with each flip family (solvability of its dual system)
FAMILY_CONDITION = {
    "T": "CT", "S1": "CS1", "S2": "CS2", "S3": "CS3",
    "S12": "CS12", "S23": "CS23", "S13": "CS13", "S123": "CS123",
}


def condition_eval(cid: str, triple: ParamTriple) -> Fraction:
    """LHS - RHS of the named condition, exactly 0 iff it holds."""
    lam, mu, nu = triple
    return Fraction(CONDITIONS[cid](lam, mu, nu))


def dual_system_rows(branch_rows):
    """One linear equation (coeffs on A, B, D) per branch row (a,b,c,d)."""
    return [(b, d - a, -c) for (a, b, c, d) in branch_rows]


def condition_from_determinant(family: str):
    """Evaluator of the 3x3 solvability determinant of the named family.

    Built from the raw parametric branch rows, so the value is a fixed
    nonzero rational multiple of the family's named condition.
    """
    flips = FAMILY_FLIPS[family]

    def det_at(triple: ParamTriple) -> Fraction:
        rows = family_branch_coeffs(triple)
        rows = [raw_flip(r) if j in flips else r for j, r in enumerate(rows)]
        (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = dual_system_rows(rows)
        return (a1 * (b2 * c3 - b3 * c2)
                - b1 * (a2 * c3 - a3 * c2)
                + c1 * (a2 * b3 - a3 * b2))

    return det_at


# ---------------------------------------------------------------------------
# projective endpoints
# ---------------------------------------------------------------------------

class ProjQ:
    """Point of the rational projective line: a fraction or infinity."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = Fraction(num)
        den = Fraction(den)
        if num == 0 and den == 0:
            raise ValueError("0/0 is not a projective point")
        if den == 0:
            object.__setattr__(self, "num", 1)
            object.__setattr__(self, "den", 0)
        else:
            q = num / den
            object.__setattr__(self, "num", q.numerator)
            object.__setattr__(self, "den", q.denominator)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("ProjQ is immutable")

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise ValueError("infinite endpoint")
        return Fraction(self.num, self.den)

    def __eq__(self, other):
        if isinstance(other, ProjQ):
            return (self.num, self.den) == (other.num, other.den)
        if isinstance(other, (int, Fraction)):
            return not self.is_infinite and self.as_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return "inf" if self.is_infinite else qstr(Fraction(self.num, self.den))


INF = ProjQ(1, 0)


# ---------------------------------------------------------------------------
# natural duals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PsiMap:
    """Canonical conjugacy triple (A, B, D) for psi(t) = (B+Dt)/(A+Bt)."""

    A: int
    B: int
    D: int
    degenerate: bool = False   # null space had dimension >= 2

    @classmethod
    def from_null_vector(cls, A, B, D, degenerate=False) -> "PsiMap":
        import math
        A, B, D = Fraction(A), Fraction(B), Fraction(D)
        den = math.lcm(A.denominator, B.denominator, D.denominator)
        ints = [int(v * den) for v in (A, B, D)]
        g = math.gcd(*(abs(n) for n in ints)) or 1
        lead = next((n for n in ints if n != 0), 1)
        if lead < 0:
            g = -g
        return cls(ints[0] // g, ints[1] // g, ints[2] // g, degenerate)

    def as_branch(self) -> MoebiusBranch:
        return MoebiusBranch(self.A, self.B, self.B, self.D)

    @property
    def det(self) -> int:
        return self.A * self.D - self.B * self.B

    @property
    def is_singular(self) -> bool:
        """Degenerate (constant) psi; the dual set is a single point."""
        return self.det == 0

    def endpoint0(self) -> ProjQ:
        return ProjQ(self.B, self.A)

    def endpoint1(self) -> ProjQ:
        return ProjQ(self.B + self.D, self.A + self.B)

    def endpoints(self) -> frozenset:
        """Unordered pair {psi(0), psi(1)} on the projective line."""
        return frozenset((self.endpoint0(), self.endpoint1()))

    def conjugates_branch(self, br: MoebiusBranch) -> bool:
        """Exact check of psi o V = V* o psi (projective matrix identity)."""
        if self.is_singular:
            a, b, c, d = br.a, br.b, br.c, br.d
            return b * self.A + (d - a) * self.B - c * self.D == 0
        psi = self.as_branch()
        return psi.compose(br) == br.adjoint().compose(psi)

    def __repr__(self):
        return f"Psi(A={self.A}, B={self.B}, D={self.D})"


def _null_space_3(rows):
    """Exact null space of an Nx3 rational system; returns list of basis vecs."""
    m = [list(map(Fraction, r)) for r in rows]
    n_cols = 3
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [v / m[r][c] for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -m[ri][fc]
        basis.append(v)
    return basis


def natural_dual_solve(p) -> PsiMap | None:
    """Solve psi o V_k = V_k* o psi across all branches of a finite map.

    Returns the canonical PsiMap spanning the 1-dimensional null space,
    None when only the trivial solution exists, and a PsiMap flagged
    `degenerate` when the null space has dimension >= 2.
    """
    if isinstance(p, CountableMap):
        raise TypeError("natural_dual_solve needs a finite branch family")
    rows = dual_system_rows([(br.a, br.b, br.c, br.d) for br in p.branches])
    basis = _null_space_3(rows)
    if not basis:
        return None
    if len(basis) > 1:
        return PsiMap.from_null_vector(*basis[0], degenerate=True)
    psi = PsiMap.from_null_vector(*basis[0])
    assert all(psi.conjugates_branch(br) for br in p.branches), \
        "solver produced a non-conjugating psi"
    return psi


# ---------------------------------------------------------------------------
# dual descriptors and densities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NaturalInterval:
    eta: Fraction
    theta: Fraction

    def __post_init__(self):
        if not self.eta < self.theta:
            raise ValueError("need eta < theta")

    def __repr__(self):
        return f"[{qstr(self.eta)}, {qstr(self.theta)}]"


@dataclass(frozen=True)
class SingularPoint:
    xi: Fraction

    def __repr__(self):
        return f"{{{qstr(self.xi)}}}"


class IntervalUnion:
    """Countable disjoint union of intervals [u_j, v_j], j >= 0."""

    def __init__(self, interval_fn, name="union", tail_integral=None):
        self.interval = interval_fn
        self.name = name
        self.tail_integral = tail_integral

    def __repr__(self):
        u0, v0 = self.interval(0)
        u1, v1 = self.interval(1)
        return f"U_j[{qstr(u0)},{qstr(v0)}],[{qstr(u1)},{qstr(v1)}],..."


DualDescriptor = NaturalInterval | SingularPoint | IntervalUnion


def dual_interval(psi: PsiMap) -> DualDescriptor:
    """Dual set from the endpoint pair {psi(0), psi(1)}, finite case."""
    e0, e1 = psi.endpoint0(), psi.endpoint1()
    if e0.is_infinite or e1.is_infinite:
        raise ValueError(f"endpoint at infinity: {e0}, {e1}")
    lo, hi = sorted((e0.as_fraction(), e1.as_fraction()))
    if lo == hi:
        return SingularPoint(lo)
    return NaturalInterval(lo, hi)


def _two_pole_term(u: Fraction, v: Fraction) -> RationalFunction:
    """(1/x)(1/(1+ux) - 1/(1+vx)) = (v-u)/((1+ux)(1+vx)), exact."""
    return RationalFunction(Polynomial.const(v - u),
                            Polynomial([1, u]) * Polynomial([1, v]))


def density_from_dual(d: DualDescriptor):
    """Invariant density induced by a dual set (up to one global scalar)."""
    if isinstance(d, NaturalInterval):
        if not d.eta > -1:
            raise ValueError(f"eta = {d.eta} puts a pole inside [0,1]")
        eta, theta = d.eta, d.theta
        return (RationalFunction(Polynomial.const(theta), Polynomial([1, theta]))
                - RationalFunction(Polynomial.const(eta), Polynomial([1, eta])))
    if isinstance(d, SingularPoint):
        if not d.xi > -1:
            raise ValueError(f"xi = {d.xi} puts a pole inside [0,1]")
        return RationalFunction(Polynomial.const(1), Polynomial([1, d.xi]) ** 2)
    if isinstance(d, IntervalUnion):
        import numpy as np

        def term_rf(j):
            u, v = d.interval(j)
            return _two_pole_term(Fraction(u), Fraction(v))

        def term_vec(jarr, x):
            shape = (-1,) + (1,) * np.ndim(x)
            u = np.array([float(d.interval(int(j))[0]) for j in jarr]).reshape(shape)
            v = np.array([float(d.interval(int(j))[1]) for j in jarr]).reshape(shape)
            xx = np.asarray(x, dtype=float)
            return (v - u) / ((1 + u * xx) * (1 + v * xx))

        def term_scalar(j, x):
            un, vn = (Fraction(e) for e in d.interval(j))
            one = x * 0 + 1
            uf = one * un.numerator / un.denominator
            vf = one * vn.numerator / vn.denominator
            return (vf - uf) / ((1 + uf * x) * (1 + vf * x))

        return SeriesDensity(term_rf, term_scalar=term_scalar, term_vec=term_vec,
                             tail_integral=d.tail_integral, first=0,
                             name=f"density[{d.name}]")
    raise TypeError(f"not a dual descriptor: {d!r}")


# ---------------------------------------------------------------------------
# transfer operator (exact)
# ---------------------------------------------------------------------------

def transfer_apply(p: PiecewiseMap, f: RationalFunction) -> RationalFunction:
    """Exact Perron-Frobenius image sum_j f(V_j x) w_j(x).

    f must not have a pole strictly inside any cylinder (poles at
    partition points are fine: sigma-finite densities such as 1/x pass
    through exactly).
    """
    if isinstance(p, CountableMap):
        raise TypeError("use kuzmin_check_series for countable branch families")
    f = f if isinstance(f, RationalFunction) else RationalFunction(f)
    if f.den.degree > 0:
        for j in range(p.n_branches):
            lo, hi = p.cylinder(j)
            n = f.real_poles_in(lo, hi)
            if n:
                raise ValueError(f"density has a pole inside cylinder {j} = "
                                 f"({qstr(lo)}, {qstr(hi)})")
    total = RationalFunction.const(0)
    for br in p.branches:
        total = total + br.pullback(f) * br.jacobian()
    return total


def kuzmin_check_exact(p: PiecewiseMap, f: RationalFunction) -> bool:
    """True iff f is exactly invariant: transfer_apply(p, f) == f."""
    f = f if isinstance(f, RationalFunction) else RationalFunction(f)
    return (transfer_apply(p, f) - f).is_zero()


# ---------------------------------------------------------------------------
# same-measure decision
# ---------------------------------------------------------------------------

class SameMeasure(Enum):
    EQUAL = "Equal"
    DIFFERENT = "Different"
    NO_NATURAL_DUAL = "NoNaturalDual"


def same_measure(p: PiecewiseMap, q: PiecewiseMap) -> SameMeasure:
    """Compare the natural-dual invariant measures of two maps.

    Equal iff the unordered projective endpoint pairs coincide (the
    matching may be crossed); when both pairs are finite and admissible
    the shared density is cross-checked through the exact Kuzmin
    identity on both maps.
    """
    psi_p = natural_dual_solve(p)
    psi_q = natural_dual_solve(q)
    if psi_p is None or psi_q is None or psi_p.degenerate or psi_q.degenerate:
        return SameMeasure.NO_NATURAL_DUAL
    if psi_p.endpoints() != psi_q.endpoints():
        return SameMeasure.DIFFERENT
    if not any(e.is_infinite for e in psi_p.endpoints()):
        try:
            h = density_from_dual(dual_interval(psi_p))
        except ValueError:
            return SameMeasure.EQUAL  # equal endpoint pair, inadmissible density
        if isinstance(h, RationalFunction):
            assert kuzmin_check_exact(p, h) and kuzmin_check_exact(q, h), \
                "endpoint pairs match but the shared density fails Kuzmin"
    return SameMeasure.EQUAL


# ---------------------------------------------------------------------------
# common fixed points (singular duals of compositions)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CommonFixedPoint:
    gcd_poly: Polynomial
    kappa: Fraction | None       # rational common fixed point, if any
    xi: Fraction | None          # -1/kappa when kappa is rational and nonzero

    def exists(self) -> bool:
        return self.gcd_poly.degree >= 1


def common_fixed_point(p: PiecewiseMap) -> CommonFixedPoint:
    """Intersect the fixed-point sets of all branches, exactly.

    The intersection is the gcd of the per-branch fixed-point
    quadratics, so irrational common fixed points are detected too.
    """
    from .polys import poly_gcd, rational_roots
    g = None
    for br in p.branches:
        quad = br.fixed_points().quadratic
        g = quad if g is None else poly_gcd(g, quad)
    if g is None or g.degree < 1:
        return CommonFixedPoint(g if g is not None else Polynomial(), None, None)
    roots = sorted(rational_roots(g))
    kappa = roots[0] if roots else None
    xi = None
    if kappa is not None and kappa != 0:
        xi = -1 / kappa
    return CommonFixedPoint(g, kappa, xi)


# ---------------------------------------------------------------------------
# exceptional duals (numeric verification)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalDualReport:
    verdict: str            # "verified" | "refuted" | "inconclusive"
    max_residual: float
    images_inside: bool
    dps: int

    def __bool__(self):
        return self.verdict == "verified"


def exceptional_dual_verify(p, endpoints, *, dps: int = 50,
                            n_points: int = 25,
                            tol_verified: float = 1e-30,
                            tol_refuted: float = 1e-5) -> ExceptionalDualReport:
    """Numerically verify a candidate dual interval B* = [eta, theta].

    p is a PiecewiseMap or a list of raw (a, b, c, d) branch rows; rows
    allow maps with irrational parameters, which cannot be exact
    integer-matrix maps.  Endpoints are mpmath numbers or exact
    rationals.  Checks that every adjoint branch maps B* into B* and
    that the induced two-pole density satisfies Kuzmin at the sample
    points to tolerance.
    """
    import mpmath as mp
    with mp.workdps(dps):
        def to_mpf(v):
            if isinstance(v, Fraction):
                return mp.mpf(v.numerator) / v.denominator
            return mp.mpf(v)

        rows = ([(br.a, br.b, br.c, br.d) for br in p.branches]
                if isinstance(p, PiecewiseMap) else
                [tuple(to_mpf(v) for v in row) for row in p])
        eta, theta = (to_mpf(endpoints[0]), to_mpf(endpoints[1]))
        if eta > theta:
            eta, theta = theta, eta
        pad = mp.mpf(10) ** (8 - dps)
        inside = True
        for (a, b, c, d) in rows:
            # adjoint branch u -> (b + d u)/(a + c u)
            ims = sorted((b + d * e) / (a + c * e) for e in (eta, theta))
            if ims[0] < eta - pad or ims[1] > theta + pad:
                inside = False

        def h(x):
            return theta / (1 + theta * x) - eta / (1 + eta * x)

        worst = mp.mpf(0)
        for i in range(1, n_points + 1):
            x = mp.mpf(i) / (n_points + 1)
            tot = mp.mpf(0)
            for (a, b, c, d) in rows:
                den = a + b * x
                tot += h((c + d * x) / den) * abs(a * d - b * c) / (den * den)
            worst = max(worst, abs(tot - h(x)))
        if inside and worst < tol_verified:
            verdict = "verified"
        elif worst > tol_refuted or not inside:
            verdict = "refuted"
        else:
            verdict = "inconclusive"
        return ExceptionalDualReport(verdict, float(worst), inside, dps)
