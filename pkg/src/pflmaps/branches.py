"""Single fractional linear branches.

A branch is the Moebius map x -> (c + d*x)/(a + b*x), stored as the
integer matrix [[a, b], [c, d]] (denominator row first).  In this
layout composition of maps is the plain matrix product, the adjoint is
the transpose, and the flip x -> V(1 - x) is [[a+b, -b], [c+d, -d]].

Matrices are canonical: the four entries are coprime and the first
nonzero entry in (a, b, c, d) order is positive, so projective equality
of maps is plain equality of matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .polys import PoleError, Polynomial, Q, RationalFunction, qstr, rational_roots

__all__ = ["MoebiusBranch", "FixedPointInfo"]


def _canonical(a: Fraction, b: Fraction, c: Fraction, d: Fraction):
    den = math.lcm(*(v.denominator for v in (a, b, c, d)))
    ints = [v.numerator * (den // v.denominator) for v in (a, b, c, d)]
    g = math.gcd(*(abs(n) for n in ints))
    lead = next(n for n in ints if n != 0)
    if lead < 0:
        g = -g
    return tuple(n // g for n in ints)


@dataclass(frozen=True)
class FixedPointInfo:
    """Solutions of V(x) = x: the quadratic b x^2 + (a-d) x - c = 0."""

    quadratic: Polynomial
    rational_roots: frozenset
    discriminant: Fraction | None  # None when the equation is linear/degenerate

    def real_root_floats(self) -> tuple:
        p = self.quadratic
        if p.degree == 2:
            disc = float(self.discriminant)
            if disc < 0:
                return ()
            b2, b1 = float(p.coeffs[2]), float(p.coeffs[1])
            s = math.sqrt(disc)
            return tuple(sorted(((-b1 - s) / (2 * b2), (-b1 + s) / (2 * b2))))
        if p.degree == 1:
            return (float(-p.coeffs[0] / p.coeffs[1]),)
        return ()


class MoebiusBranch:
    """Canonical integer-matrix fractional linear branch."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        a, b, c, d = (Fraction(v) for v in (a, b, c, d))
        if a * d - b * c == 0:
            raise ValueError("singular matrix: not a Moebius map")
        ca, cb, cc, cd = _canonical(a, b, c, d)
        object.__setattr__(self, "a", ca)
        object.__setattr__(self, "b", cb)
        object.__setattr__(self, "c", cc)
        object.__setattr__(self, "d", cd)

    def __setattr__(self, *args):  # pragma: no cover
        raise AttributeError("MoebiusBranch is immutable")

    @classmethod
    def identity(cls) -> "MoebiusBranch":
        return cls(1, 0, 0, 1)

    # -- evaluation ------------------------------------------------------
    def __call__(self, x: Fraction) -> Fraction:
        den = self.a + self.b * Fraction(x)
        if den == 0:
            raise PoleError(f"pole of branch {self} at {x}")
        return (self.c + self.d * Fraction(x)) / den

    def eval_float(self, x: float) -> float:
        return (self.c + self.d * x) / (self.a + self.b * x)

    eval_hp = eval_float  # works for any field-like scalar (mpf, mpfr)

    # -- algebra -----------------------------------------------------------
    def compose(self, other: "MoebiusBranch") -> "MoebiusBranch":
        """self after other: (self o other)(x) = self(other(x))."""
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return MoebiusBranch(a * e + b * g, a * f + b * h,
                             c * e + d * g, c * f + d * h)

    def __matmul__(self, other):
        return self.compose(other)

    def adjoint(self) -> "MoebiusBranch":
        return MoebiusBranch(self.a, self.c, self.b, self.d)

    def flip(self) -> "MoebiusBranch":
        """The branch x -> V(1-x); inverse-branch form of replacing T by 1-T."""
        return MoebiusBranch(self.a + self.b, -self.b, self.c + self.d, -self.d)

    def inverse(self) -> "MoebiusBranch":
        return MoebiusBranch(self.d, -self.b, -self.c, self.a)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def sign(self) -> int:
        """Monotonicity: +1 increasing, -1 decreasing (sign of the derivative)."""
        return 1 if self.det > 0 else -1

    def jacobian(self) -> RationalFunction:
        """|det| / (a + b x)^2, the derivative magnitude."""
        den = Polynomial([self.a, self.b]) ** 2
        return RationalFunction(Polynomial.const(abs(self.det)), den)

    def pullback(self, f: RationalFunction) -> RationalFunction:
        """Exact composition f(V(x)) as a canonical rational function."""
        num_p = Polynomial([self.c, self.d])
        den_p = Polynomial([self.a, self.b])
        deg = max(f.num.degree, f.den.degree, 0)

        def homog(p: Polynomial) -> Polynomial:
            out = Polynomial()
            for i, coef in enumerate(p.coeffs):
                out = out + Polynomial.const(coef) * num_p ** i * den_p ** (deg - i)
            return out

        return RationalFunction(homog(f.num), homog(f.den))

    def fixed_points(self) -> FixedPointInfo:
        """Exact description of V(x) = x."""
        quad = Polynomial([-self.c, self.a - self.d, self.b])
        if quad.is_zero():
            raise ValueError("identity branch fixes every point")
        disc = None
        if quad.degree == 2:
            disc = Fraction(self.a - self.d) ** 2 + 4 * Fraction(self.b) * Fraction(self.c)
        return FixedPointInfo(quad, frozenset(rational_roots(quad)), disc)

    def has_pole_in_unit_interval(self) -> bool:
        """True when a + b x vanishes somewhere on [0, 1]."""
        v0, v1 = self.a, self.a + self.b
        return v0 == 0 or v1 == 0 or (v0 > 0) != (v1 > 0)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {"a": qstr(Q(self.a)), "b": qstr(Q(self.b)),
                "c": qstr(Q(self.c)), "d": qstr(Q(self.d))}

    @classmethod
    def from_json(cls, obj: dict) -> "MoebiusBranch":
        return cls(*(Fraction(obj[k]) for k in ("a", "b", "c", "d")))

    def formula(self) -> str:
        """Human-readable (c + d x)/(a + b x)."""
        def lin(p, q):
            if q == 0:
                return str(p)
            if p == 0:
                return f"{q}x" if q != 1 else "x"
            return f"{p} {'+' if q > 0 else '-'} {abs(q)}x" if abs(q) != 1 else f"{p} {'+' if q > 0 else '-'} x"
        return f"({lin(self.c, self.d)})/({lin(self.a, self.b)})"

    def __eq__(self, other):
        if not isinstance(other, MoebiusBranch):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return f"MoebiusBranch[[{self.a},{self.b}],[{self.c},{self.d}]]"
