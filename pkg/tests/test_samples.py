import random
from fractions import Fraction as F

from pflmaps.duality import condition_eval
from pflmaps.maps import family_T
from pflmaps.samples import (condition_surface_samples, ct_samples,
                             cubic_rational_points)

SEED = 97


def test_ct_samples_on_surface_and_valid():
    rng = random.Random(SEED)
    for t in ct_samples(rng, 30):
        assert condition_eval("CT", t) == 0
        assert family_T(t).validate()


def test_condition_samples_exact_and_nonlinear():
    rng = random.Random(SEED)
    for cond in ("CS1", "CS2", "CS3", "CS12", "CS23", "CS13", "CS123"):
        for t in condition_surface_samples(cond, rng, 20):
            assert condition_eval("CT", t) == 0, cond
            assert condition_eval(cond, t) == 0, cond
            assert t.lam != 1
            assert family_T(t).validate()


def test_samples_deterministic_under_seed():
    a = condition_surface_samples("CS12", random.Random(5), 10)
    b = condition_surface_samples("CS12", random.Random(5), 10)
    c = condition_surface_samples("CS12", random.Random(6), 10)
    assert a == b
    assert a != c


def test_cubic_point_generation_verifies_curve():
    coef = {(1, 2): F(1), (0, 2): F(1), (2, 1): F(-1), (1, 1): F(-4), (1, 0): F(-3)}
    pts = cubic_rational_points(coef, [(F(1), F(3)), (F(1, 2), F(2)), (F(0), F(0))],
                                want=40)
    assert len(pts) >= 40
    for (u, v) in pts:
        assert sum(c * u ** i * v ** j for (i, j), c in coef.items()) == 0
