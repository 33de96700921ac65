import math
from fractions import Fraction as F

import numpy as np
import pytest

from pflmaps.catalog import (catalog_get, ex4_series_density, ex5_series_density,
                             intro_series_density)
from pflmaps.duality import kuzmin_check_exact
from pflmaps.maps import gauss_map, intro_one_step_map
from pflmaps.polys import Polynomial, RationalFunction
from pflmaps.transport import (SeriesDensity, kuzmin_check_series, series_eval,
                               transport_density)


def rf(num, den=Polynomial.const(1)):
    return RationalFunction(Polynomial.const(num), den)


def lin(c0, c1):
    return Polynomial([c0, c1])


def test_transport_example1():
    ent = catalog_get("ex1")
    maps = ent.build()
    h = rf(1, lin(2, -1))
    g = transport_density(maps["S"], h)
    assert g == rf(1, lin(1, 1)) - rf(1, lin(2, 1)) + rf(1, lin(3, -1))
    assert kuzmin_check_exact(maps["Z"], g)


def test_transport_example3_sigma_finite():
    ent = catalog_get("ex3")
    maps = ent.build()
    g = transport_density(maps["S"], rf(1, lin(0, 1)))
    assert g == rf(1, lin(1, -1)) + rf(1, lin(1, 1))


def test_transport_gauss_series_terms():
    g = transport_density(gauss_map(), rf(1, lin(2, 1)))
    assert isinstance(g, SeriesDensity)
    for m in range(1, 12):
        assert g.term_rf(m) == rf(1, lin(2 * m + 1, 2) * lin(m, 1))
    # scalar evaluation path agrees with the exact term
    assert g.term_scalar(3, F(1, 2)) == g.term_rf(3).eval_q(F(1, 2))


def test_transport_idempotent_on_invariant_density():
    ent = catalog_get("thm1-cs1")
    maps = ent.build()
    h = ent.expected["density"]
    assert transport_density(maps["T"], h) == h


def test_series_eval_intro_ln2():
    dens = intro_series_density()
    sv = series_eval(dens, F(1), 1e-10, dps=50)
    assert sv.reached_target
    assert abs(sv.value - math.log(2)) < 1e-10
    assert sv.bound < 1e-10


def test_series_eval_bracket_honest():
    """Doubling the truncation never moves the value more than the bound."""
    dens = ex4_series_density(2)
    for x in (0.1, 0.5, 0.9):
        v1, b1 = dens.eval_certified(x, 500)
        v2, b2 = dens.eval_certified(x, 1000)
        assert abs(v2 - v1) <= b1 + b2
        assert b2 < b1


def test_series_eval_term_cap_flag():
    dens = ex4_series_density(2)
    sv = series_eval(dens, F(1, 2), 1e-30, term_cap=256, dps=None)
    assert not sv.reached_target
    assert sv.terms_used <= 256


def test_series_vec_matches_rf():
    for dens in (intro_series_density(), ex4_series_density(3), ex5_series_density(2)):
        xs = np.array([0.2, 0.7])
        vec = dens.term_vec(np.arange(dens.first, dens.first + 4), xs)
        for i, t in enumerate(range(dens.first, dens.first + 4)):
            for j, x in enumerate(xs):
                assert vec[i, j] == pytest.approx(dens.term_rf(t).eval_float(float(x)), rel=1e-12)


def test_kuzmin_series_intro_small():
    rep = kuzmin_check_series(intro_one_step_map(), intro_series_density(),
                              [F(1, 4), F(1, 2), F(3, 4)], 1e-8, J=8000)
    assert rep.verdict == "pass"
    assert rep.max_certified < 1e-8


def test_kuzmin_series_detects_wrong_density():
    """A flat density is far from invariant for the Gauss composition."""
    objs = catalog_get("ex4-a2").build()
    wrong = SeriesDensity(
        lambda t: RationalFunction.const(1) if t == 0 else RationalFunction.const(0),
        term_vec=lambda tarr, x: (np.asarray(tarr).reshape((-1,) + (1,) * np.ndim(x)) == 0)
        * np.ones_like(np.asarray(x, dtype=float)),
        tail_integral=lambda T, x, log: x * 0.0,
        first=0, name="flat",
        deriv_vec=lambda tarr, x: np.zeros((len(tarr),) + np.shape(x)),
        deriv_tail_bound=lambda J, x: 0.0,
        sup_abs_second_deriv=0.0)
    rep = kuzmin_check_series(objs["Z"], wrong, [F(1, 2)], 1e-8, J=4, K=2000)
    assert rep.verdict == "fail"
    assert rep.max_residual > 0.01


def test_kuzmin_series_countable_needs_model():
    from pflmaps.maps import compose_maps, times_a_map
    z = compose_maps(gauss_map(), times_a_map(2))   # no tail model attached
    with pytest.raises(ValueError):
        kuzmin_check_series(z, ex4_series_density(2), [F(1, 2)], 1e-8, J=64, K=64)


def test_transfer_tail_model_matches_true_branches():
    """The closed-form weights/images equal the actual composed branches."""
    for name in ("ex4-a2", "ex5-a2"):
        objs = catalog_get(name).build()
        Z, model = objs["Z"], objs["Z"].transfer_tail_model
        x, K = 0.37, 6
        for gi, (ys, w) in enumerate(model.images(x, K)):
            for ki in range(K):
                pair = (gi, ki + 1) if name.startswith("ex4") else (gi, ki)
                br = Z.branch(pair)
                assert ys[ki] == pytest.approx(br.eval_float(x), rel=1e-13)
                assert w[ki] == pytest.approx(
                    abs(br.det) / (br.a + br.b * x) ** 2, rel=1e-13)


def test_intro_kuzmin_certificate_shrinks_with_truncation():
    from pflmaps.maps import intro_one_step_map
    m = intro_one_step_map()
    dens = intro_series_density()
    pts = [F(1, 3), F(2, 3)]
    certs = []
    for J in (100, 1000, 10000):
        rep = kuzmin_check_series(m, dens, pts, tol=1e-3, J=J)
        assert rep.verdict == "pass"
        certs.append(rep.max_certified)
    assert certs[0] > certs[1] > certs[2]
    assert certs[2] < 1e-8
