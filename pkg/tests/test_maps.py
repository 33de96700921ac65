import random
from fractions import Fraction as F

import pytest

from pflmaps.branches import MoebiusBranch
from pflmaps.maps import (FAMILY_FLIPS, ParamTriple, PiecewiseMap,
                          compose_maps, family_T, flip_family, gauss_map,
                          intro_one_step_map, map_from_json, named_map,
                          shift_ratio_map, times_a_map)
from pflmaps.samples import ct_samples

SEED = 31415


def test_family_linear_case():
    m = family_T(ParamTriple.of(1, 3, 3))
    assert m.validate()
    assert [b.formula() for b in m.branches] == ["(x)/(3)", "(1 + x)/(3)", "(2 + x)/(3)"]
    assert m.apply_forward(F(1, 2)) == F(1, 2)


def test_family_valid_triple():
    m = family_T(ParamTriple.of(F(3, 4), F(36, 7), 9))
    assert m.validate()
    assert m.partition == (F(0), F(1, 3), F(2, 3), F(1))
    with pytest.raises(ValueError):
        family_T(ParamTriple.of(-1, 3, 3))


def test_family_flip_oracle_random_triples():
    rng = random.Random(SEED)
    for t in ct_samples(rng, 50):
        lam, mu, nu = t
        m = family_T(t)
        want = [MoebiusBranch(3 * lam, -3 * lam + 3, lam, -lam),
                MoebiusBranch(3 * mu, -3 * mu + 9, 2 * mu, -2 * mu + 3),
                MoebiusBranch(nu, -nu + 3, nu, -nu + 2)]
        assert [b.flip() for b in m.branches] == want


def test_validation_diagnostics():
    ident = MoebiusBranch.identity()
    bad = PiecewiseMap([0, F(1, 2), 1], [MoebiusBranch(2, 0, 0, 1), ident])
    rep = bad.validate()
    assert not rep.ok
    assert any("branch 1" in p for p in rep.problems)


def test_intro_map_valid_and_forward():
    m = intro_one_step_map()
    assert m.validate()
    assert m.apply_forward(F(2, 5)) == F(1, 2)     # 1/x - 2 on (1/3, 1/2]
    assert m.apply_forward(F(1, 4)) == F(1, 2)     # x/(1-2x) on [0, 1/3]
    assert m.apply_forward(F(2, 3)) == F(1, 2)     # 1/x - 1 on (1/2, 1]


def test_flip_branches():
    t = ParamTriple.of(F(3, 4), F(36, 7), 9)
    m = family_T(t)
    assert m.flip_branches(()).branches == m.branches
    s1 = m.flip_branches({0})
    assert s1.branches[0] == m.branches[0].flip()
    assert s1.branches[1:] == m.branches[1:]
    assert s1.flip_branches({0}).branches == m.branches
    with pytest.raises(IndexError):
        m.flip_branches({3})
    for name, flips in FAMILY_FLIPS.items():
        fam = flip_family(name, t)
        assert fam.validate()
        assert [b.sign for b in fam.branches] == \
            [-1 if j in flips else 1 for j in range(3)]


def test_forward_boundary_modes():
    m = family_T(ParamTriple.of(1, 3, 3))
    assert m.apply_forward(F(1, 3)) == 1          # left-cell convention
    with pytest.raises(ValueError):
        m.apply_forward(F(1, 3), boundary="error")


def test_compose_worked_example():
    S = PiecewiseMap([0, F(1, 2), 1],
                     [MoebiusBranch(2, 1, 1, -1), MoebiusBranch(3, -1, 3, -2)])
    T = PiecewiseMap([0, F(1, 2), 1],
                     [MoebiusBranch(6, -1, 3, -3), MoebiusBranch(3, -1, 3, -2)])
    U = compose_maps(T, S)
    assert U.validate()
    assert set(U.branches) == {MoebiusBranch(15, -5, 3, 2), MoebiusBranch(9, -4, 0, 1),
                               MoebiusBranch(5, 0, 4, 1), MoebiusBranch(6, -1, 3, 1)}
    assert U.partition == (F(0), F(1, 5), F(1, 2), F(4, 5), F(1))
    ident = PiecewiseMap([0, 1], [MoebiusBranch.identity()])
    assert compose_maps(T, ident).branches == T.branches


def test_compose_forward_consistency():
    rng = random.Random(SEED)
    S = flip_family("S1", ParamTriple.of(F(3, 4), F(36, 7), 9))
    T = family_T(ParamTriple.of(1, 3, 3))
    U = compose_maps(T, S)
    for _ in range(25):
        x = F(rng.randint(1, 999), 1000)
        assert U.apply_forward(x) == T.apply_forward(S.apply_forward(x))


def test_cylinders_tile():
    for t in [ParamTriple.of(1, 3, 3), ParamTriple.of(F(3, 4), F(36, 7), 9)]:
        m = family_T(t)
        for j in range(m.n_branches):
            lo, hi = m.cylinder(j)
            br = m.branches[j]
            assert {br(F(0)), br(F(1))} == {lo, hi}
        assert m.partition[0] == 0 and m.partition[-1] == 1


def test_gauss_map():
    g = gauss_map()
    assert g.validate()
    assert g.apply_forward(F(2, 5)) == F(1, 2)
    assert g.digit(F(2, 5)) == 2
    assert g.cylinder(2) == (F(1, 3), F(1, 2))


def test_shift_ratio_map():
    s = shift_ratio_map()
    assert s.validate()
    assert s.branch(0) == MoebiusBranch(1, 1, 0, 1)
    assert s.digit(F(3, 4)) == 3         # x/(1-x) = 3


def test_times_a_and_composition_formula():
    # U = T o S with S the digit map and T doubling: branches a/(ak+j+x)
    Z = compose_maps(times_a_map(2), gauss_map())
    br = Z.branch((1, 0))       # k=1, j=0 -> 2/(2+x)
    assert br == MoebiusBranch(2, 1, 2, 0)
    br = Z.branch((3, 1))       # k=3, j=1 -> 2/(7+x)
    assert br == MoebiusBranch(7, 1, 2, 0)


def test_composed_countable_digit():
    Z4 = compose_maps(gauss_map(), times_a_map(2))   # Z = S o T
    pair = Z4.digit(F(1, 3))
    assert pair == (0, 1)
    lo, hi = Z4.cylinder(pair)
    assert lo <= F(1, 3) <= hi
    assert Z4.indices(4) == [(0, 1), (1, 1), (0, 2), (1, 2)]


def test_json_roundtrip_and_named():
    m = family_T(ParamTriple.of(F(3, 4), F(36, 7), 9))
    m2 = map_from_json(m.to_json())
    assert m2.branches == m.branches and m2.partition == m.partition
    n = named_map("S13", 2, 3, F(3, 2))
    assert n.validate()
    with pytest.raises(KeyError):
        named_map("nope")
    bad = m.to_json()
    bad["signs"] = ["-", "+", "+"]
    with pytest.raises(ValueError):
        map_from_json(bad)


def test_named_map_aliases():
    t = (F(3, 4), F(36, 7), 9)
    assert named_map("family_T", *t).branches == named_map("T", *t).branches
    assert named_map("S_13", 2, 3, F(3, 2)).branches == \
        named_map("S13", 2, 3, F(3, 2)).branches


def test_json_constructor_form():
    m = map_from_json({"constructor": "family_T", "params": ["3/4", "36/7", "9"]})
    assert m.branches == family_T(ParamTriple.of(F(3, 4), F(36, 7), 9)).branches
    g = map_from_json({"constructor": "gauss"})
    assert g.digit(F(2, 5)) == 2
