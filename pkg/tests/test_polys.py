import random
from fractions import Fraction as F

import pytest

from pflmaps.polys import (PoleError, Polynomial, RationalFunction,
                           count_real_roots, parse_q, poly_gcd, qstr,
                           rational_roots)

SEED = 1405


def test_rational_serialization_roundtrip():
    for s in ["3", "-7", "3/4", "-36/7", "0"]:
        assert qstr(parse_q(s)) == s
    assert qstr(F(6, 8)) == "3/4"


def test_poly_canonical_no_trailing_zeros():
    p = Polynomial([1, 2, 0, 0])
    assert p.degree == 1 and p.coeffs == (F(1), F(2))
    assert Polynomial([0, 0]).is_zero()


def test_poly_arith_quintic_expansion():
    # (n-3)(n^2-3)(n+1)^2 -> n^5 - n^4 - 8n^3 + 15n + 9
    prod = (Polynomial.from_roots([F(3)]) * Polynomial([-3, 0, 1])
            * Polynomial.from_roots([F(-1), F(-1)]))
    assert prod == Polynomial([9, 15, 0, -8, -1, 1])


def test_poly_additive_identity_and_difference_of_squares():
    rng = random.Random(SEED)
    p = Polynomial([F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(5)])
    assert p + Polynomial() == p
    assert Polynomial([1, 1]) * Polynomial([-1, 1]) == Polynomial([-1, 0, 1])


def test_poly_divmod_exact():
    p = Polynomial([2, 0, -3, 1])
    q = Polynomial([-1, 1])
    quo, rem = p.divmod(q)
    assert quo * q + rem == p


def test_rational_roots_examples():
    # lam^2*mu + lam*(mu+3) - 9 at mu = 36/7, as a polynomial in lam
    mu = F(36, 7)
    p = Polynomial([-9, mu + 3, mu])
    assert F(3, 4) in rational_roots(p)
    assert rational_roots(Polynomial([-3, 0, 1])) == set()
    quintic = Polynomial([9, 15, 0, -8, -1, 1])
    assert rational_roots(quintic) == {F(3), F(-1)}


def test_rational_roots_evaluate_to_zero():
    rng = random.Random(SEED)
    for _ in range(25):
        roots = [F(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(3)]
        p = Polynomial.from_roots(roots) * Polynomial([1, 0, 1])  # extra irreducible
        found = rational_roots(p)
        assert set(roots) <= found
        assert all(p.eval_q(r) == 0 for r in found)


def test_poly_gcd_primitive_prs():
    a = Polynomial.from_roots([F(1, 2), F(-3)]) * Polynomial([7, 0, 2])
    b = Polynomial.from_roots([F(1, 2), F(5)]) * Polynomial([7, 0, 2])
    g = poly_gcd(a, b)
    assert g == (Polynomial.from_roots([F(1, 2)]) * Polynomial([7, 0, 2])).monic()


def test_sturm_count():
    p = Polynomial([-3, 0, 1])   # roots +-sqrt(3)
    assert count_real_roots(p, F(0), F(2)) == 1
    assert count_real_roots(p, F(0), F(1)) == 0
    # endpoint roots are not counted
    q = Polynomial.from_roots([F(0), F(1), F(1, 2)])
    assert count_real_roots(q, F(0), F(1)) == 1


def test_ratfunc_canonicalization():
    f = RationalFunction(Polynomial([2, 2]), Polynomial([-2, 0, 2]))
    assert f == RationalFunction(Polynomial.const(1), Polynomial([-1, 1]))
    assert RationalFunction(Polynomial(), Polynomial([5])).is_zero()
    g = RationalFunction(Polynomial.const(1), Polynomial([2, -1]))
    h = RationalFunction(Polynomial.const(-1), Polynomial([-2, 1]))
    assert g == h


def test_ratfunc_roundtrip_scaling():
    rng = random.Random(SEED)
    for _ in range(20):
        r = F(rng.randint(-20, 20) or 1, rng.randint(1, 20))
        q = Polynomial([F(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(4)])
        if q.is_zero():
            continue
        f = RationalFunction(Polynomial.const(r) * q, q)
        assert f == RationalFunction(Polynomial.const(r), Polynomial.const(1))


def test_field_axioms_seeded():
    rng = random.Random(SEED)
    for _ in range(200):
        a, b, c = (F(rng.randint(-99, 99), rng.randint(1, 99)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


def test_ratfunc_pole_eval():
    f = RationalFunction(Polynomial.const(1), Polynomial([0, 1]))
    with pytest.raises(PoleError):
        f.eval_q(F(0))
    assert f.eval_q(F(1, 2)) == 2


def test_partial_fractions_simple_and_double():
    x = Polynomial.x()
    f = RationalFunction(Polynomial.const(1),
                         Polynomial.from_roots([F(0), F(1)]))
    poly, terms = f.partial_fractions()
    assert poly.is_zero()
    assert sorted(terms) == [(F(0), 1, F(-1)), (F(1), 1, F(1))]
    g = RationalFunction(Polynomial.const(1), Polynomial([2, 1]) ** 2)
    _, terms = g.partial_fractions()
    assert terms == [(F(-2), 2, F(1))]
    with pytest.raises(ValueError):
        RationalFunction(Polynomial.const(1), Polynomial([1, 0, 1])).partial_fractions()
