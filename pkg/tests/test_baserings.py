import random

import pytest

from kfan.baserings import (
    CharRemap,
    FlagBase,
    PointBase,
    ToricBase,
    TrivialBase,
    flag_rank_probe,
    simple_reflection,
    weyl_group_order,
    weyl_orbit,
)
from kfan.catalog import p1, p112
from kfan.intlat import RowLattice
from kfan.kring import member_space
from kfan.laurent import LaurentPoly, box_points, poly_to_obj

A2 = [[2, -1], [-1, 2]]


def rand_poly(rng, rank, radius=1, terms=3):
    pts = box_points(rank, radius)
    out = LaurentPoly.zero(rank)
    for _ in range(terms):
        out = out + LaurentPoly.monomial(rng.choice(pts), rng.randint(-3, 3))
    return out


def rand_member(rng, ring, radius=1, terms=3):
    basis = ring.box_basis(radius)
    out = ring.zero()
    for _ in range(terms):
        c = rng.randint(-3, 3)
        out = ring.add(out, ring.mul(ring.scalar(c), rng.choice(basis)))
    return out


# --- point ---------------------------------------------------------------------


def test_point_base_is_equality():
    ring = PointBase(char_rank=2)
    assert ring.line_class((3, -1)) == 1
    assert ring.congruent(5, 5, (1, 0))
    assert not ring.congruent(5, 4, (1, 0))
    assert ring.mul(ring.add(2, 3), ring.neg(4)) == -20
    assert ring.scalar(-3) == -3
    assert ring.coeff_vector(7, 1) == {0: 7}
    assert ring.deserialize(ring.serialize(9)) == 9
    with pytest.raises(ValueError):
        ring.line_class((1,))


# --- trivial -------------------------------------------------------------------


def test_trivial_line_class_is_multiplicative():
    ring = TrivialBase(2)
    rng = random.Random(3)
    for _ in range(20):
        a = (rng.randint(-2, 2), rng.randint(-2, 2))
        b = (rng.randint(-2, 2), rng.randint(-2, 2))
        ab = tuple(x + y for x, y in zip(a, b))
        assert ring.mul(ring.line_class(a), ring.line_class(b)) == ring.line_class(ab)


def test_trivial_congruence_matches_division():
    ring = TrivialBase(2)
    rng = random.Random(4)
    for _ in range(25):
        chi = (rng.randint(-2, 2), rng.randint(-2, 2))
        if not any(chi):
            continue
        h = rand_poly(rng, 2)
        b = rand_poly(rng, 2)
        a = b + (LaurentPoly.one(2) - ring.line_class(chi)) * h
        assert ring.congruent(a, b, chi)
        # a unit offset cannot be a multiple of the wall class
        assert not ring.congruent(a + 1, b, chi)


def test_trivial_zero_character_is_equality():
    ring = TrivialBase(1)
    x = LaurentPoly.monomial((1,))
    assert ring.congruent(x, x, (0,))
    assert not ring.congruent(x, x + 1, (0,))


def test_trivial_box_and_coeffs_roundtrip():
    ring = TrivialBase(2)
    basis = ring.box_basis(1)
    assert len(basis) == 9 == ring.coeff_dim(1)
    f = basis[0] + basis[3] * 4
    vec = ring.coeff_vector(f, 1)
    rebuilt = ring.zero()
    exps = box_points(2, 1)
    for k, c in vec.items():
        rebuilt = rebuilt + LaurentPoly.monomial(exps[k], c)
    assert rebuilt == f
    with pytest.raises(ValueError):
        ring.coeff_vector(LaurentPoly.monomial((2, 0)), 1)


# --- toric ---------------------------------------------------------------------


def test_toric_box_basis_matches_member_space():
    # with the identity character lattice the ring is the ordinary
    # wall-congruence ring, whose box dimensions are known
    ring = ToricBase(p1())
    assert len(ring.box_basis(1)) == member_space(p1(), 1).dim == 5
    assert len(ring.box_basis(2)) == member_space(p1(), 2).dim == 9
    for m in ring.box_basis(1):
        assert ring.is_member(m)


def test_toric_rejects_bad_bases():
    with pytest.raises(ValueError):
        ToricBase(p112())  # singular
    with pytest.raises(ValueError):
        ToricBase(p1(), coeff_rank=0)


def test_toric_line_class_needs_membership():
    # exponents differing off the wall lattice cannot glue
    with pytest.raises(ValueError):
        ToricBase(p1(), coeff_rank=2, line_data=[[(0, 1), (1, 2)]])
    ring = ToricBase(p1(), coeff_rank=2, line_data=[[(0, 1), (1, 1)]])
    cls = ring.line_class((1,))
    assert ring.is_member(cls)
    assert ring.is_member(ring.line_class((-2,)))


def hirzebruch_base(a):
    # base P1 inside a rank-2 character lattice; the fiber character acts
    # through a line class twisted by a along the base
    return ToricBase(p1(), coeff_rank=2, line_data=[[(0, 1), (a, 1)]])


def test_toric_congruence_accepts_multiples():
    rng = random.Random(5)
    ring = hirzebruch_base(1)
    one = ring.one()
    for _ in range(15):
        chi = (rng.choice([-2, -1, 1, 2]),)
        h = rand_member(rng, ring, radius=1, terms=2)
        b = rand_member(rng, ring, radius=1, terms=2)
        cls = ring.line_class(chi)
        a = ring.add(b, ring.mul(ring.sub(one, cls), h))
        assert ring.congruent(a, b, chi)


def test_toric_congruence_agrees_with_lattice_oracle():
    # independent check: box-truncated lattice membership of the difference
    # in (1 - line class) times the member lattice
    rng = random.Random(6)
    ring = hirzebruch_base(2)
    one = ring.one()
    chi = (1,)
    cls = ring.line_class(chi)
    radius = 4
    lat = RowLattice()
    for m in ring.box_basis(2):
        prod = ring.mul(ring.sub(one, cls), m)
        lat.insert(ring.coeff_vector(prod, radius))
    agree = 0
    for _ in range(30):
        h = rand_member(rng, ring, radius=1, terms=2)
        b = rand_member(rng, ring, radius=1, terms=2)
        diff = ring.mul(ring.sub(one, cls), h)
        if rng.random() < 0.5:
            diff = ring.add(diff, rand_member(rng, ring, radius=1, terms=1))
        a = ring.add(b, diff)
        got = ring.congruent(a, b, chi)
        oracle = lat.contains(ring.coeff_vector(diff, radius))
        # the oracle is box-truncated so it may miss wide multiples, but a
        # positive oracle must always be confirmed
        if oracle:
            assert got
        if got == oracle:
            agree += 1
    assert agree >= 25


def test_toric_zero_component_congruence():
    # line class trivial on the first cone: difference must vanish there
    # and the quotient is completed on the free component
    ring = ToricBase(p1(), coeff_rank=2, line_data=[[(0, 0), (1, 0)]])
    one = ring.one()
    cls = ring.line_class((1,))
    assert next(iter(cls[0].terms)) == (0, 0)
    rng = random.Random(7)
    for _ in range(10):
        h = rand_member(rng, ring, radius=1, terms=2)
        b = rand_member(rng, ring, radius=1, terms=2)
        a = ring.add(b, ring.mul(ring.sub(one, cls), h))
        assert ring.congruent(a, b, (1,))
    # nonzero difference on the trivial component can never be congruent
    bump = (LaurentPoly.one(2), LaurentPoly.zero(2))
    assert not ring.congruent(ring.add(b, bump), b, (1,))


def test_toric_serialize_roundtrip():
    ring = hirzebruch_base(1)
    rng = random.Random(8)
    m = rand_member(rng, ring, radius=1)
    assert ring.deserialize(ring.serialize(m)) == m
    with pytest.raises(ValueError):
        ring.deserialize([])


# --- weyl machinery -------------------------------------------------------------


def test_simple_reflection_is_involution():
    rng = random.Random(9)
    for _ in range(20):
        lam = (rng.randint(-4, 4), rng.randint(-4, 4))
        for j in (0, 1):
            assert simple_reflection(A2, j, simple_reflection(A2, j, lam)) == lam


def test_weyl_orbit_frozen_a2():
    assert weyl_orbit(A2, [0, 1], (1, 0)) == [(-1, 1), (0, -1), (1, 0)]
    assert weyl_orbit(A2, [0, 1], (0, 0)) == [(0, 0)]
    assert len(weyl_orbit(A2, [0, 1], (1, 1))) == 6
    assert weyl_orbit(A2, [0], (1, 0)) == [(-1, 1), (1, 0)]


def test_weyl_group_orders():
    assert weyl_group_order([[2]], [0]) == 2
    assert weyl_group_order(A2, []) == 1
    assert weyl_group_order(A2, [0]) == 2
    assert weyl_group_order(A2, [0, 1]) == 6
    assert weyl_group_order([[2, -1], [-2, 2]], [0, 1]) == 8
    assert weyl_group_order([[2, -1], [-3, 2]], [0, 1]) == 12


def test_cartan_validation():
    with pytest.raises(ValueError):
        FlagBase([[2, 1], [1, 2]], [])
    with pytest.raises(ValueError):
        FlagBase([[1]], [])
    with pytest.raises(ValueError):
        FlagBase([[2, -1], [0, 2]], [])
    with pytest.raises(ValueError):
        FlagBase(A2, [5])


# --- flag ----------------------------------------------------------------------


def test_flag_membership_and_orbit_sums():
    ring = FlagBase([[2]], [0])
    x = LaurentPoly.monomial((1,))
    assert not ring.is_member(x)
    assert ring.is_member(x + LaurentPoly.monomial((-1,)))
    assert ring.orbit_sum((2,)) == LaurentPoly.monomial((2,)) + LaurentPoly.monomial((-2,))
    free = FlagBase([[2]], [])
    assert free.is_member(x)


def test_flag_box_basis_spans_invariants():
    ring = FlagBase(A2, [0])
    basis = ring.box_basis(1)
    for b in basis:
        assert ring.is_member(b)
    # an invariant supported in the box must be an integer combination
    lat = RowLattice()
    for b in basis:
        lat.insert(ring.coeff_vector(b, 1))
    f = ring.orbit_sum((0, 1)) * 3 - ring.orbit_sum((0, 0))
    assert ring.is_member(f) and f.support_radius() <= 1
    assert lat.contains(ring.coeff_vector(f, 1))


def test_flag_line_class_requires_fixed_character():
    ring = FlagBase(A2, [0])
    cls = ring.line_class((0, 2))
    assert cls == LaurentPoly.monomial((0, 2))
    with pytest.raises(ValueError):
        ring.line_class((1, 0))


def test_flag_congruence():
    ring = FlagBase(A2, [0])
    rng = random.Random(10)
    chi = (0, 1)
    one = ring.one()
    for _ in range(10):
        h = rand_member(rng, ring, radius=1, terms=2)
        b = rand_member(rng, ring, radius=1, terms=2)
        a = ring.add(b, ring.mul(ring.sub(one, ring.line_class(chi)), h))
        assert ring.congruent(a, b, chi)
        assert not ring.congruent(ring.add(a, ring.scalar(1)), b, chi)


def test_flag_serialize_rejects_noninvariant():
    ring = FlagBase([[2]], [0])
    x = LaurentPoly.monomial((1,))
    with pytest.raises(ValueError):
        ring.deserialize(poly_to_obj(x))
    inv = x + LaurentPoly.monomial((-1,))
    assert ring.deserialize(ring.serialize(inv)) == inv


def test_flag_rank_probe_frozen_values():
    # rank of the parabolic invariants over the full invariants equals the
    # index of the Weyl subgroup
    cases = [
        ([[2]], [], 2),
        ([[2]], [0], 1),
        (A2, [], 6),
        (A2, [0], 3),
        ([[2, -1], [-2, 2]], [], 8),
        ([[2, -1], [-2, 2]], [0], 4),
    ]
    for cartan, ps, expected in cases:
        rep = flag_rank_probe(cartan, ps, max_radius=5)
        assert rep["conclusive"], rep
        assert rep["rank"] == expected == rep["expected_index"], rep


# --- character remap -------------------------------------------------------------


def test_char_remap_composes_line_classes():
    inner = FlagBase(A2, [0])
    remap = CharRemap(inner, [(0, 1)])
    assert remap.char_rank == 1
    assert remap.line_class((3,)) == LaurentPoly.monomial((0, 3))
    rng = random.Random(11)
    h = rand_member(rng, inner, radius=1, terms=2)
    b = rand_member(rng, inner, radius=1, terms=2)
    a = inner.add(b, inner.mul(inner.sub(inner.one(), remap.line_class((1,))), h))
    assert remap.congruent(a, b, (1,))
    assert remap.congruent(a, b, (1,)) == inner.congruent(a, b, (0, 1))


def test_char_remap_rejects_unfixed_columns():
    inner = FlagBase(A2, [0])
    with pytest.raises(ValueError):
        CharRemap(inner, [(1, 0)])
    with pytest.raises(ValueError):
        CharRemap(inner, [(0, 1, 2)])
