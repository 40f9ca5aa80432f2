import random

import pytest

from kfan.baserings import FlagBase
from kfan.bundle import extended_check, extended_relation_image
from kfan.catalog import p1, p1xp1
from kfan.fan import parse_fan
from kfan.horo import (
    HorosphericalDatum,
    datum_from_obj,
    datum_to_obj,
    horo_check,
    horo_kunneth_probe,
    horo_member_space,
    horo_presentation,
    horo_rank,
    k_horospherical,
    sl2_basic_datum,
    sl3_datum,
    validate_horo,
)
from kfan.laurent import LaurentPoly

A2 = [[2, -1], [-1, 2]]


def rand_poly(rng, rank, radius=1, terms=3, bound=3):
    p = LaurentPoly.zero(rank)
    for _ in range(terms):
        exp = tuple(rng.randint(-radius, radius) for _ in range(rank))
        p = p + LaurentPoly.monomial(exp, rng.randint(-bound, bound))
    return p


def test_sl2_membership():
    d = sl2_basic_datum()
    one = LaurentPoly.one(1)
    x = LaurentPoly.monomial((1,))
    ok, fails = horo_check(d, (one, x))
    assert ok and not fails
    ok, fails = horo_check(d, (one, LaurentPoly.constant(1, 2)))
    assert not ok
    assert len(fails) == 1 and fails[0]["character"] == (1,)
    # pairs differing by a multiple of (1 - x) are always members
    rng = random.Random(11)
    for _ in range(20):
        f = rand_poly(rng, 1, radius=2)
        g = rand_poly(rng, 1, radius=2)
        ok, _ = horo_check(d, (g, g + (LaurentPoly.one(1) - x) * f))
        assert ok


def test_sl2_rank_frozen():
    rep = horo_rank(sl2_basic_datum())
    assert rep.conclusive
    assert rep.rank == 4
    assert rep.history[0][:2] == (1, 5)


def test_sl2_presentation():
    d = sl2_basic_datum()
    fan, base = k_horospherical(d)
    gens, cert, rels = horo_presentation(d)
    assert len(gens) == 2
    assert sorted(rel["kind"] for rel in rels) == ["character", "nonface"]
    for g in gens:
        ok, _ = extended_check(g)
        assert ok
    for rel in rels:
        assert extended_relation_image(fan, base, cert, rel).is_zero()


def test_sl3_demo():
    d = sl3_datum()
    rep = validate_horo(d)
    assert rep["ok"]
    fan, base = k_horospherical(d)
    one = base.one()
    y = LaurentPoly.monomial((0, 1))
    ok, _ = horo_check(d, (one, y))
    assert ok
    ok, _ = horo_check(d, (one, base.scalar(2)))
    assert not ok
    rank = horo_rank(d)
    assert rank.conclusive and rank.rank == 6
    gens, cert, rels = horo_presentation(d)
    for rel in rels:
        assert extended_relation_image(fan, base, cert, rel).is_zero()


def test_member_space_dims_frozen():
    assert horo_member_space(sl2_basic_datum(), 1).dim == 5
    assert horo_member_space(sl3_datum(), 1).dim == 8


def test_member_space_elements_pass_check():
    d = sl3_datum()
    space = horo_member_space(d, 1)
    for row in space.basis:
        e = space.to_element(row)
        ok, _ = extended_check(e)
        assert ok


def test_kunneth_probe():
    probe = horo_kunneth_probe(sl2_basic_datum(), samples=15, seed=3)
    assert probe["all_hit"]
    assert probe["hits"] == 15


def test_validation_rejections():
    # embedding column not fixed by the parabolic reflections
    d = HorosphericalDatum.make(A2, [0], p1(), [(1, 0)])
    rep = validate_horo(d)
    assert not rep["ok"]
    assert any("columns" in f for f in rep["failures"])
    with pytest.raises(ValueError):
        k_horospherical(d)
    # zero column: fixed but not injective
    rep = validate_horo(HorosphericalDatum.make([[2]], [], p1(), [(0,)]))
    assert not rep["ok"]
    assert any("injective" in f for f in rep["failures"])
    # column count must match the fan rank
    rep = validate_horo(HorosphericalDatum.make([[2]], [], p1xp1(), [(1,)]))
    assert not rep["ok"]
    # incomplete fan
    half = parse_fan({"rank": 1, "rays": [[1]], "max_cones": [[0]]})
    rep = validate_horo(HorosphericalDatum.make([[2]], [], half, [(1,)]))
    assert not rep["ok"]
    assert any("cellular" in f for f in rep["failures"])


def test_parabolic_invariance_enforced_on_entries():
    base = validate_horo(sl3_datum())["base"]
    moved = LaurentPoly.monomial((1, 0))
    fixed = LaurentPoly.monomial((0, 1))
    # e^{(1,0)} is moved by the parabolic reflection, so it is not an entry
    assert not base.is_member(moved)
    assert base.is_member(fixed)
    with pytest.raises(ValueError):
        base.deserialize([{"exp": [1, 0], "coef": 1}])


def test_serialization_roundtrip():
    for d in (sl2_basic_datum(), sl3_datum()):
        obj = datum_to_obj(d)
        back = datum_from_obj(obj)
        assert back == d
    with pytest.raises(ValueError):
        datum_from_obj({"cartan": [[2]]})
    with pytest.raises(ValueError):
        datum_from_obj([1, 2])
