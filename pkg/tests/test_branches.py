import random
from fractions import Fraction as F

import pytest

from pflmaps.branches import MoebiusBranch
from pflmaps.polys import PoleError, Polynomial, RationalFunction

SEED = 2718


def rand_branch(rng):
    while True:
        a, b, c, d = (rng.randint(-9, 9) for _ in range(4))
        if a * d - b * c != 0:
            return MoebiusBranch(a, b, c, d)


def test_eval_examples():
    w_lam1 = MoebiusBranch(3, 0, 1, -1)        # W_lam at lam = 1
    assert w_lam1(F(0)) == F(1, 3)
    assert MoebiusBranch.identity()(F(5, 7)) == F(5, 7)
    v_gamma = MoebiusBranch(6, -1, 3, -3)      # (3-3x)/(6-x)
    assert v_gamma(F(1)) == 0
    assert v_gamma(F(1, 2)) == F(3, 11)
    assert v_gamma(F(0)) == F(1, 2)


def test_eval_pole():
    br = MoebiusBranch(1, -1, 0, 1)            # x/(1-x)
    with pytest.raises(PoleError):
        br(F(1))


def test_canonical_form():
    assert MoebiusBranch(2, 4, 6, 8) == MoebiusBranch(1, 2, 3, 4)
    assert MoebiusBranch(-1, 0, 0, 1) == MoebiusBranch(1, 0, 0, -1)
    assert MoebiusBranch(3, F(-3, 4), 0, F(3, 4)) == MoebiusBranch(4, -1, 0, 1)
    with pytest.raises(ValueError):
        MoebiusBranch(1, 1, 1, 1)


def test_compose_worked_pair():
    v_alpha = MoebiusBranch(2, 1, 1, -1)
    v_gamma = MoebiusBranch(6, -1, 3, -3)
    assert v_alpha.compose(v_gamma) == MoebiusBranch(15, -5, 3, 2)
    m = rand_branch(random.Random(SEED))
    assert m.compose(MoebiusBranch.identity()) == m
    v_beta = MoebiusBranch(3, -1, 3, -2)
    assert v_beta.compose(v_beta) == MoebiusBranch(6, -1, 3, 1)  # (3+x)/(6-x)


def test_compose_is_evaluation(seed=SEED):
    rng = random.Random(seed)
    for _ in range(20):
        m, n = rand_branch(rng), rand_branch(rng)
        comp = m.compose(n)
        hits = 0
        for k in range(20):
            x = F(k, 19)
            try:
                want = m(n(x))
                got = comp(x)
            except PoleError:
                continue
            hits += 1
            assert got == want
        assert hits > 10


def test_adjoint():
    lam = F(5, 3)
    v = MoebiusBranch(3, 3 * lam - 3, 0, lam)
    assert v.adjoint() == MoebiusBranch(3, 0, 3 * lam - 3, lam)
    rng = random.Random(SEED)
    for _ in range(20):
        m = rand_branch(rng)
        assert m.adjoint().adjoint() == m
    sym = MoebiusBranch(2, 5, 5, 1)
    assert sym.adjoint() == sym


def test_adjoint_antihomomorphism():
    rng = random.Random(SEED)
    for _ in range(25):
        m, n = rand_branch(rng), rand_branch(rng)
        assert m.compose(n).adjoint() == n.adjoint().compose(m.adjoint())


def test_flip_matches_one_minus_map():
    rng = random.Random(SEED)
    for _ in range(20):
        m = rand_branch(rng)
        f = m.flip()
        assert f.flip() == m
        assert f.sign == -m.sign
        for k in range(3):
            x = F(k, 2)
            try:
                assert f(x) == m(1 - x)
            except PoleError:
                pass


def test_flip_reproduces_flipped_family_matrices():
    lam, mu, nu = F(3, 4), F(36, 7), F(9)
    v_lam = MoebiusBranch(3, 3 * lam - 3, 0, lam)
    v_mu = MoebiusBranch(9, 3 * mu - 9, 3, 2 * mu - 3)
    v_nu = MoebiusBranch(3, nu - 3, 2, nu - 2)
    assert v_lam.flip() == MoebiusBranch(3 * lam, -3 * lam + 3, lam, -lam)
    assert v_mu.flip() == MoebiusBranch(3 * mu, -3 * mu + 9, 2 * mu, -2 * mu + 3)
    assert v_nu.flip() == MoebiusBranch(nu, -nu + 3, nu, -nu + 2)
    # spot-oracle at nu = 2: canonical form of W_nu
    v2 = MoebiusBranch(3, -1, 2, 0)
    assert v2.flip() == MoebiusBranch(2, 1, 2, 0)


def test_fixed_points():
    v_alpha = MoebiusBranch(2, 1, 1, -1)
    info = v_alpha.fixed_points()
    assert info.quadratic == Polynomial([-1, 3, 1])
    assert info.rational_roots == frozenset()
    assert info.discriminant == 13
    scaled = MoebiusBranch(3, 0, 0, 1)      # x/3
    assert scaled.fixed_points().rational_roots == frozenset({F(0)})
    with pytest.raises(ValueError):
        MoebiusBranch.identity().fixed_points()


def test_jacobian():
    v_alpha = MoebiusBranch(2, 1, 1, -1)
    jac = v_alpha.jacobian()
    assert jac == RationalFunction(Polynomial.const(3), Polynomial([2, 1]) ** 2)
    assert MoebiusBranch.identity().jacobian() == RationalFunction.const(1)
    gauss_k = MoebiusBranch(4, 1, 1, 0)
    assert gauss_k.jacobian() == RationalFunction(Polynomial.const(1),
                                                  Polynomial([4, 1]) ** 2)


def test_jacobian_chain_rule():
    rng = random.Random(SEED)
    for _ in range(15):
        m, n = rand_branch(rng), rand_branch(rng)
        comp = m.compose(n)
        for k in range(5):
            x = F(2 * k + 1, 11)
            try:
                lhs = comp.jacobian().eval_q(x)
                rhs = m.jacobian().eval_q(n(x)) * n.jacobian().eval_q(x)
            except ZeroDivisionError:
                continue
            assert lhs == rhs


def test_pullback_exact():
    br = MoebiusBranch(2, 1, 1, -1)          # (1-x)/(2+x)
    f = RationalFunction(Polynomial.const(1), Polynomial([2, -1]))   # 1/(2-x)
    g = br.pullback(f)
    for k in range(6):
        x = F(k, 5)
        assert g.eval_q(x) == f.eval_q(br(x))


def test_json_roundtrip():
    br = MoebiusBranch(3, F(-3, 4), 0, F(3, 4))
    assert MoebiusBranch.from_json(br.to_json()) == br
    assert MoebiusBranch.from_json({"a": "3", "b": "-3/4", "c": "0", "d": "3/4"}) == br
