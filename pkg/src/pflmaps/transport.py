"""Density transport across semiconjugacies and certified series sums.

If U = T o S and Z = S o T and h is an invariant density for U, then

    g(x) = sum_j h(V_j x) w_j(x)            (branches V_j of S)

is an invariant density for Z.  For finite branch families the sum is an
exact rational function; countable families produce a SeriesDensity.

Series are evaluated with two-sided tail certificates.  For a positive,
decreasing, convex term function f(t, x) with closed-form tail integral
I(T, x) = int_T^inf f(t, x) dt,

    I(J) + f(J)/2  <=  sum_{t >= J} f(t)  <=  I(J - 1/2),

so the bracket midpoint carries an O(1/J^3) certified error instead of
the O(1/J) error of the bare partial sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .maps import CountableMap, PiecewiseMap
from .polys import RationalFunction

__all__ = [
    "SeriesDensity",
    "SeriesValue",
    "series_eval",
    "transport_density",
    "kuzmin_check_series",
    "SecondOrderTransferTail",
    "KuzminSeriesReport",
]

# conservative float64 roundoff allowance per certified evaluation
_ROUND_EPS = 1e-11


class SeriesDensity:
    """Density given as sum over t = first, first+1, ... of term(t, x).

    term_rf(t): exact rational-function term (any 1/x prefactor folded in).
    term_scalar(t, x): same term for generic scalars (Fraction, mpf, float).
    term_vec(tarr, x): vectorized float64 terms.
    tail_integral(T, x, log): closed form int_T^inf term(t, x) dt; terms
        must be positive, decreasing and convex in t on [first, inf).
    deriv_vec / deriv_tail_bound / sup_abs_second_deriv support the
    truncated-transfer certificates for countable-branch maps.
    """

    def __init__(self, term_rf, term_scalar=None, term_vec=None,
                 tail_integral=None, first=0, name="series",
                 deriv_vec=None, deriv_tail_bound=None,
                 sup_abs_second_deriv=None, integrable=True):
        self.term_rf = term_rf
        self.term_scalar = term_scalar or (lambda t, x: term_rf(t).eval_q(x))
        self.term_vec = term_vec or self._vec_fallback
        self.tail_integral = tail_integral
        self.first = first
        self.name = name
        self.deriv_vec = deriv_vec
        self.deriv_tail_bound = deriv_tail_bound
        self.sup_abs_second_deriv = sup_abs_second_deriv
        # the termwise sum may diverge at an endpoint even when every
        # term is integrable (sigma-finite case)
        self.integrable = integrable

    def _vec_fallback(self, tarr, x):
        return np.array([[float(self.term_rf(int(t)).eval_float(float(xx)))
                          for xx in np.atleast_1d(x)] for t in tarr])

    # -- certified evaluation ------------------------------------------------
    def tail_bracket(self, J: int, x):
        """(lo, hi) enclosing sum_{t >= J} term(t, x); float64, vectorized."""
        if self.tail_integral is None:
            raise ValueError(f"{self.name}: no tail integral supplied")
        fJ = self.term_vec(np.array([J]), x)[0]
        lo = self.tail_integral(float(J), x, np.log) + fJ / 2
        hi = self.tail_integral(J - 0.5, x, np.log)
        return lo, hi

    def eval_certified(self, x, J: int):
        """(value, certified_bound) at float64 x, truncating at J terms."""
        tarr = np.arange(self.first, self.first + J)
        terms = self.term_vec(tarr, x)
        partial = terms[::-1].sum(axis=0)   # small terms first
        lo, hi = self.tail_bracket(self.first + J, x)
        val = partial + (lo + hi) / 2
        bound = (hi - lo) / 2 + _ROUND_EPS
        if np.ndim(x) == 0:
            return float(np.squeeze(val)), float(np.squeeze(bound))
        return val, bound

    def eval_mpf(self, x, J: int, mp):
        """High-precision partial sum plus tail bracket, under mpmath context."""
        s = mp.mpf(0)
        for t in range(self.first + J - 1, self.first - 1, -1):
            s += self.term_scalar(t, x)
        lo = self.tail_integral(mp.mpf(self.first + J), x, mp.log) \
            + self.term_scalar(self.first + J, x) / 2
        hi = self.tail_integral(mp.mpf(self.first + J) - mp.mpf(1) / 2, x, mp.log)
        return s + (lo + hi) / 2, (hi - lo) / 2

    def __repr__(self):
        return f"SeriesDensity({self.name})"


@dataclass(frozen=True)
class SeriesValue:
    value: float
    bound: float
    terms_used: int
    reached_target: bool


def series_eval(s: SeriesDensity, x, target_accuracy, term_cap: int = 10 ** 6,
                dps: int | None = 50) -> SeriesValue:
    """Evaluate s(x) to within target_accuracy, certified.

    The truncation J is chosen from the tail bracket alone (cheap), then
    a single summation pass runs at J terms.  With dps set, summation is
    done in mpmath arithmetic at that precision so rounding stays far
    below the truncation certificate; dps=None selects float64.
    """
    xf = float(x)
    J = min(64, term_cap)
    while True:
        lo, hi = s.tail_bracket(s.first + J, xf)
        if (hi - lo) / 2 + _ROUND_EPS <= target_accuracy or J >= term_cap:
            break
        J = min(2 * J, term_cap)
    reached = (hi - lo) / 2 + _ROUND_EPS <= target_accuracy
    if dps is None:
        val, bound = s.eval_certified(xf, J)
        return SeriesValue(val, bound, J, reached and bound <= target_accuracy)
    import mpmath as mp
    with mp.workdps(dps):
        xq = Fraction(x) if not isinstance(x, float) else Fraction(x).limit_denominator(10 ** 12)
        xm = mp.mpf(xq.numerator) / xq.denominator
        val, bound = s.eval_mpf(xm, J, mp)
        bound = float(bound) + mp.mpf(10) ** (5 - dps)
        return SeriesValue(float(val), float(bound), J,
                           reached and bound <= target_accuracy)


# ---------------------------------------------------------------------------
# transport
# ---------------------------------------------------------------------------

def transport_density(s_map, h):
    """Density of Z = S o T from the density h of U = T o S.

    s_map is S (the conjugating map phi); h may be exact or a series.
    Finite S with rational h gives the exact transfer sum; countable S
    gives a SeriesDensity whose terms are exact rational functions.
    """
    if isinstance(h, SeriesDensity):
        raise NotImplementedError("transport of series densities is not required; "
                                  "verify them through kuzmin_check_series instead")
    if isinstance(s_map, PiecewiseMap):
        from .duality import transfer_apply
        return transfer_apply(s_map, h)
    if not isinstance(s_map, CountableMap):
        raise TypeError(f"not a map: {s_map!r}")

    def term_rf(k) -> RationalFunction:
        br = s_map.branch(k)
        return br.pullback(h) * br.jacobian()

    def term_scalar(k, x):
        rf = term_rf(k)
        return rf.eval_q(x) if isinstance(x, Fraction) else rf.eval_mpf(x)

    return SeriesDensity(term_rf, term_scalar=term_scalar,
                         first=s_map.first_index,
                         name=f"transport[{s_map.name}]")


# ---------------------------------------------------------------------------
# certified Kuzmin checks for series densities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KuzminSeriesReport:
    verdict: str             # "pass" | "fail" | "inconclusive"
    max_residual: float      # largest |estimate| over the sample points
    max_certified: float     # largest estimate + certificate
    points: tuple
    residuals: tuple
    bounds: tuple

    def __bool__(self):
        return self.verdict == "pass"


class SecondOrderTransferTail:
    """Certified truncated transfer sums for a-to-1 countable families.

    Covers branch families whose weights and images have the form

        w_{j,t}(x) = 1/(a (t+x)^2),   V_{j,t}(x) = p_j + eps/(a (t+x)),

    over groups j with limit points p_j, t = 1, 2, ...  The t > K tail is
    expanded to second order around each p_j:

        sum_{t>K} g(V) w = (1/a) [ g(p_j) S2 + eps g'(p_j) S3 / a + R ],
        |R| <= sup|g''| S4 / (2 a^2),

    with the power sums S_p = sum_{t>K} (t+x)^-p bracketed by integrals.
    """

    def __init__(self, a: int, limit_points, eps: int):
        self.a = a
        self.limit_points = tuple(limit_points)
        self.eps = eps

    def images(self, x: float, K: int):
        t = np.arange(1, K + 1, dtype=float)
        w = 1.0 / (self.a * (t + x) ** 2)
        for p in self.limit_points:
            yield float(p) + self.eps / (self.a * (t + x)), w

    @staticmethod
    def _power_tail(p: int, K: int, x: float):
        def integral(T):
            return 1.0 / ((p - 1) * (T + x) ** (p - 1))
        f = 1.0 / (K + 1 + x) ** p
        lo = integral(K + 1) + f / 2
        hi = integral(K + 0.5)
        return (lo + hi) / 2, (hi - lo) / 2

    def tail(self, g: SeriesDensity, x: float, J: int, K: int):
        """(estimate, certified bound) for the branch sum over t > K."""
        if g.deriv_vec is None or g.sup_abs_second_deriv is None:
            raise ValueError(f"{g.name}: derivative data needed for countable tails")
        a = self.a
        S2, S2b = self._power_tail(2, K, x)
        S3, S3b = self._power_tail(3, K, x)
        S4, S4b = self._power_tail(4, K, x)
        M2 = g.sup_abs_second_deriv
        est = 0.0
        bnd = 0.0
        tarr = np.arange(g.first, g.first + J)
        for p in self.limit_points:
            pf = float(p)
            gp, gpb = g.eval_certified(pf, J)
            gd = float(g.deriv_vec(tarr, pf)[::-1].sum())
            gdb = g.deriv_tail_bound(g.first + J, pf) + _ROUND_EPS
            est += (gp * S2 + self.eps * gd * S3 / a) / a
            bnd += (gpb * S2 + abs(gp) * S2b
                    + (gdb * S3 + abs(gd) * S3b) / a
                    + (M2 / 2) * (S4 + S4b) / (a * a)) / a
        return est, bnd


def kuzmin_check_series(p, g: SeriesDensity, points, tol,
                        J: int = 4000, K: int = 4000) -> KuzminSeriesReport:
    """Certified check that sum_j g(V_j x) w_j(x) = g(x) at the sample points.

    Finite maps sum their branches exactly; countable maps must carry a
    transfer_tail_model (see SecondOrderTransferTail).  A point passes
    when |residual| + certificate <= tol, fails when the certificate
    cannot explain the residual (|residual| - certificate > tol), and is
    inconclusive in between.
    """
    residuals, bounds = [], []
    for xq in points:
        x = float(xq)
        if isinstance(p, PiecewiseMap):
            tot, bnd = 0.0, 0.0
            for br in p.branches:
                v = br.eval_float(x)
                w = float(abs(br.det)) / (br.a + br.b * x) ** 2
                gv, gb = g.eval_certified(v, J)
                tot += gv * w
                bnd += gb * w
        elif isinstance(p, CountableMap):
            model = p.transfer_tail_model
            if model is None:
                raise ValueError(f"{p.name}: countable map lacks a transfer tail model")
            tot, bnd = 0.0, 0.0
            for ys, w in model.images(x, K):
                vals, bs = g.eval_certified(ys, J)
                tot += float((vals * w)[::-1].sum())
                bnd += float((bs * w).sum())
            te, tb = model.tail(g, x, J, K)
            tot += te
            bnd += tb
        else:
            raise TypeError(f"not a map: {p!r}")
        g0, b0 = g.eval_certified(x, J)
        residuals.append(abs(tot - g0))
        bounds.append(bnd + b0 + _ROUND_EPS)
    residuals = tuple(residuals)
    bounds = tuple(bounds)
    if all(r + b <= tol for r, b in zip(residuals, bounds)):
        verdict = "pass"
    elif any(r - b > tol for r, b in zip(residuals, bounds)):
        verdict = "fail"
    else:
        verdict = "inconclusive"
    return KuzminSeriesReport(verdict, max(residuals),
                              max(r + b for r, b in zip(residuals, bounds)),
                              tuple(float(x) for x in points), residuals, bounds)
