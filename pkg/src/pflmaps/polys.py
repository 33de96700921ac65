"""Exact univariate polynomial and rational-function arithmetic over Q.

Scalars are ``fractions.Fraction`` throughout.  Polynomials are dense
coefficient tuples in ascending degree order and are always canonical
(no trailing zero coefficients).  Rational functions are kept reduced
with a monic denominator, so equality of canonical forms is equality
as functions wherever both sides are defined.
"""

from __future__ import annotations

import math
from fractions import Fraction

Q = Fraction

__all__ = [
    "Q",
    "qstr",
    "parse_q",
    "Polynomial",
    "RationalFunction",
    "rational_roots",
    "count_real_roots",
    "PoleError",
]


def qstr(q: Fraction) -> str:
    """Serialize a rational as 'p/q', or plain 'n' for integers."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_q(s: str) -> Fraction:
    return Fraction(s.strip())


class PoleError(ZeroDivisionError):
    """Evaluation hit a zero denominator."""


class Polynomial:
    """Immutable dense polynomial with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots) -> "Polynomial":
        p = cls.const(1)
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return Polynomial(a)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Polynomial"):
        """Exact polynomial division with remainder."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = []
        rem = list(self.coeffs)
        dlead = other.leading
        dd = other.degree
        while len(rem) - 1 >= dd and rem:
            f = rem[-1] / dlead
            q.append(f)
            for i, c in enumerate(other.coeffs):
                rem[len(rem) - 1 - dd + i] -= f * c
            rem.pop()
        q.reverse()
        return Polynomial(q), Polynomial(rem)

    def __floordiv__(self, other):
        return self.divmod(_coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(_coerce(other))[1]

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; x may be Fraction, float, or an mpf type."""
        acc = x * 0
        one = x * 0 + 1
        for c in reversed(self.coeffs):
            acc = acc * x + one * c.numerator / c.denominator
        return acc

    def eval_q(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    # -- normal forms ---------------------------------------------------
    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.leading
        return Polynomial([c / lead for c in self.coeffs])

    def integer_primitive(self):
        """Return (content, primitive) with integer coprime coefficients.

        content * primitive == self; primitive has positive leading
        coefficient.  Zero polynomial maps to (0, 0).
        """
        if self.is_zero():
            return Fraction(0), self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [c.numerator * (den // c.denominator) for c in self.coeffs]
        g = math.gcd(*(abs(n) for n in ints))
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), Polynomial([Fraction(n, g) for n in ints])

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            s = qstr(abs(c))
            if i == 0:
                term = s
            else:
                xs = "x" if i == 1 else f"x^{i}"
                term = xs if abs(c) == 1 else f"{s}*{xs}"
            parts.append(("- " if c < 0 else "+ " if parts else "") + term)
        return "Poly(" + " ".join(parts).lstrip("+ ") + ")"


def _coerce(v) -> Polynomial:
    if isinstance(v, Polynomial):
        return v
    return Polynomial.const(Fraction(v))


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd via the primitive pseudo-remainder sequence.

    Working on integer primitive parts keeps coefficient growth linear
    instead of exponential.
    """
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    _, a = p.integer_primitive()
    _, b = q.integer_primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        # pseudo-remainder: lead(b)^(deg a - deg b + 1) * a mod b
        d = a.degree - b.degree + 1
        r = (Polynomial.const(b.leading) ** d * a) % b
        a, b = b, r.integer_primitive()[1] if not r.is_zero() else Polynomial()
    return a.monic()


def rational_roots(p: Polynomial) -> set[Fraction]:
    """All rational roots of p (p != 0), via the rational-root sieve."""
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    roots: set[Fraction] = set()
    coeffs = list(p.coeffs)
    # strip x^k factor: root 0
    k = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        k += 1
    if k:
        roots.add(Fraction(0))
    work = Polynomial(coeffs)
    if work.degree < 1:
        return roots
    _, prim = work.integer_primitive()
    a0 = abs(prim.coeffs[0].numerator)
    an = abs(prim.leading.numerator)
    for pn in _divisors(a0):
        for qn in _divisors(an):
            for cand in (Fraction(pn, qn), Fraction(-pn, qn)):
                if cand not in roots and work.eval_q(cand) == 0:
                    roots.add(cand)
    return roots


def _divisors(n: int):
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return out


def _sturm_chain(p: Polynomial):
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
    if chain[-1].is_zero():
        chain.pop()
    return chain


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = p.eval_q(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: Polynomial, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots of p in the open interval (a, b).

    Exact (Sturm); roots at the endpoints are not counted.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return 0
    a, b = Fraction(a), Fraction(b)
    # deflate endpoint roots so the count is strictly interior
    for r in (a, b):
        while p.eval_q(r) == 0:
            p = p // Polynomial.from_roots([r])
    if p.degree < 1:
        return 0
    chain = _sturm_chain(p)
    n = _sign_changes(chain, a) - _sign_changes(chain, b)
    # Sturm counts roots in (a, b]; b-roots were deflated already
    return n


class RationalFunction:
    """Reduced ratio of polynomials; denominator monic and nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _coerce(num)
        den = _coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lead = den.leading
        object.__setattr__(self, "num", Polynomial([c / lead for c in num.coeffs]))
        object.__setattr__(self, "den", den.monic())

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls(Polynomial.const(c))

    @classmethod
    def x(cls) -> "RationalFunction":
        return cls(Polynomial.x())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Polynomial)):
            return self == RationalFunction(_coerce(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = self._coerce_rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce_rf(other))

    def __rsub__(self, other):
        return self._coerce_rf(other) - self

    def __mul__(self, other):
        other = self._coerce_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce_rf(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce_rf(other) / self

    @staticmethod
    def _coerce_rf(v) -> "RationalFunction":
        if isinstance(v, RationalFunction):
            return v
        return RationalFunction(_coerce(v))

    def eval_q(self, x: Fraction) -> Fraction:
        d = self.den.eval_q(x)
        if d == 0:
            raise PoleError(f"pole at {x}")
        return self.num.eval_q(x) / d

    def eval_float(self, x: float) -> float:
        return self.num.eval_float(x) / self.den.eval_float(x)

    def eval_mpf(self, x):
        """Evaluate with mpmath/gmpy2 style high-precision x."""
        one = x * 0 + 1
        num = x * 0
        for c in reversed(self.num.coeffs):
            num = num * x + one * c.numerator / c.denominator
        den = x * 0
        for c in reversed(self.den.coeffs):
            den = den * x + one * c.numerator / c.denominator
        return num / den

    def derivative(self) -> "RationalFunction":
        return RationalFunction(self.num.derivative() * self.den - self.num * self.den.derivative(),
                                self.den * self.den)

    def real_poles_in(self, a: Fraction, b: Fraction) -> int:
        """Distinct real poles strictly inside (a, b), exactly."""
        return count_real_roots(self.den, a, b)

    def partial_fractions(self):
        """Decompose into (polynomial part, [(root, order, coefficient), ...]).

        Requires the denominator to split into rational linear factors;
        raises ValueError otherwise.  f = poly + sum c/(x - r)^k.
        """
        poly_part, rem = self.num.divmod(self.den)
        roots = rational_roots(self.den)
        # multiplicities
        factors = []
        den = self.den
        for r in sorted(roots):
            m = 0
            lin = Polynomial.from_roots([r])
            while True:
                q, rr = den.divmod(lin)
                if rr.is_zero():
                    den = q
                    m += 1
                else:
                    break
            factors.append((r, m))
        if den.degree > 0:
            raise ValueError("denominator has irrational factors; cannot decompose over Q")
        terms = []
        for r, m in factors:
            # g(x) = rem(x) / (den/(x-r)^m), Taylor-expand around r
            lin = Polynomial.from_roots([r]) ** m
            other = self.den // lin
            g = RationalFunction(rem, other)
            # c_k for (x-r)^(m-k): k-th derivative of g at r over k!
            fact = 1
            for k in range(m):
                if k:
                    fact *= k
                    g = g.derivative()
                terms.append((r, m - k, g.eval_q(r) / fact))
        terms = [(r, o, c) for (r, o, c) in terms if c != 0]
        return poly_part, terms

    def __repr__(self):
        if self.den == Polynomial.const(1):
            return f"RF({self.num!r})"
        return f"RF(({self.num!r}) / ({self.den!r}))"
