"""Tests for exact integer linear algebra.

Frozen expected values were derived by hand row reduction; property tests
use seeded randomness so failures reproduce.
"""

from __future__ import annotations

import random

import pytest

from kfan.intlat import (
    IntMatrix,
    IntSolver,
    det,
    hermite_normal_form,
    invariant_factors,
    kernel_basis,
    primitive,
    quotient_lattice,
    rank,
    rank_of_rows,
    smith_normal_form,
    solve_integer,
    solve_rational,
    sparse_kernel_basis,
    RowLattice,
)


def random_matrix(rng, rows, cols, bound=5):
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def is_echelon(h: IntMatrix) -> bool:
    last = -1
    seen_zero_row = False
    for row in h.data:
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            seen_zero_row = True
            continue
        if seen_zero_row or lead <= last:
            return False
        if row[lead] <= 0:
            return False
        last = lead
    return True


def test_hnf_hand_example():
    m = IntMatrix([[2, 4], [0, 3]])
    h, u = hermite_normal_form(m)
    assert h.data == [[2, 1], [0, 3]]
    assert u.mul(m).data == h.data
    assert abs(det(u)) == 1


def test_hnf_properties_random():
    rng = random.Random(11)
    for _ in range(120):
        rows = rng.randint(0, 5)
        cols = rng.randint(1, 5)
        m = random_matrix(rng, rows, cols)
        h, u = hermite_normal_form(m)
        assert u.mul(m).data == h.data
        if rows:
            assert abs(det(u)) == 1
        assert is_echelon(h)
        # Entries above each pivot are reduced into [0, pivot).
        for i, row in enumerate(h.data):
            lead = next((j for j, x in enumerate(row) if x), None)
            if lead is None:
                continue
            for k in range(i):
                assert 0 <= h.data[k][lead] < row[lead]


def test_snf_hand_examples():
    d, p, q = smith_normal_form(IntMatrix([[2, 0], [0, 3]]))
    assert [d.data[0][0], d.data[1][1]] == [1, 6]
    assert p.mul(IntMatrix([[2, 0], [0, 3]])).mul(q).data == d.data

    d2, _, _ = smith_normal_form(IntMatrix([[2, 0], [0, 2]]))
    assert [d2.data[0][0], d2.data[1][1]] == [2, 2]


def test_snf_properties_random():
    rng = random.Random(23)
    for _ in range(120):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = random_matrix(rng, rows, cols)
        d, p, q = smith_normal_form(m)
        assert p.mul(m).mul(q).data == d.data
        assert abs(det(p)) == 1
        assert abs(det(q)) == 1
        diag = [d.data[i][i] for i in range(min(rows, cols))]
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d.data[i][j] == 0
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and b >= 0
            if a:
                assert b % a == 0
            else:
                assert b == 0


def test_kernel_hand_example():
    m = IntMatrix([[1, 2]])
    k = kernel_basis(m)
    assert k.cols == 1
    assert m.mul(k).data == [[0]]
    assert sorted(abs(x) for x in k.column(0)) == [1, 2]


def test_kernel_properties_random():
    rng = random.Random(37)
    for _ in range(120):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 5)
        m = random_matrix(rng, rows, cols, bound=4)
        k = kernel_basis(m)
        assert k.cols == cols - rank(m)
        if k.cols:
            prod = m.mul(k)
            assert all(all(x == 0 for x in row) for row in prod.data)
            # Saturated: the kernel basis extends to a basis of the ambient
            # lattice, so its invariant factors are all 1.
            assert invariant_factors(k) == [1] * k.cols


def test_quotient_lattice_example():
    q = quotient_lattice(2, IntMatrix.from_columns([(1, 2)]))
    assert q.rank == 1
    assert q.project_vec((1, 2)) == (0,)
    assert q.project.mul(q.section).data == [[1]]


def test_quotient_lattice_saturates():
    # Quotient by span{(2, 4)} equals quotient by its saturation span{(1, 2)}.
    q = quotient_lattice(2, IntMatrix.from_columns([(2, 4)]))
    assert q.rank == 1
    assert q.project_vec((1, 2)) == (0,)


def test_quotient_lattice_rejects_dependent_columns():
    with pytest.raises(ValueError):
        quotient_lattice(2, IntMatrix.from_columns([(1, 2), (2, 4)]))


def test_quotient_lattice_properties_random():
    rng = random.Random(41)
    for _ in range(100):
        n = rng.randint(1, 5)
        k = rng.randint(0, n)
        cols = []
        for _ in range(k):
            cols.append([rng.randint(-4, 4) for _ in range(n)])
        sub = IntMatrix.from_columns(cols, rows=n)
        if k and rank(sub) < k:
            with pytest.raises(ValueError):
                quotient_lattice(n, sub)
            continue
        q = quotient_lattice(n, sub)
        assert q.rank == n - k
        assert q.project.mul(q.section).data == IntMatrix.identity(n - k).data
        if k:
            proj_sub = q.project.mul(sub)
            assert all(all(x == 0 for x in row) for row in proj_sub.data)


def test_primitive():
    assert primitive((2, 4)) == (1, 2)
    assert primitive((-2, -4)) == (-1, -2)
    assert primitive((0, 3, 0)) == (0, 1, 0)
    with pytest.raises(ValueError):
        primitive((0, 0))


def test_det_examples():
    assert det(IntMatrix([[2, 0], [0, 3]])) == 6
    assert det(IntMatrix([[0, 1], [1, 0]])) == -1
    assert det(IntMatrix([[1, 2], [2, 4]])) == 0


def test_det_matches_definition_random():
    rng = random.Random(53)
    import itertools

    def perm_det(m):
        n = m.rows
        total = 0
        for perm in itertools.permutations(range(n)):
            sign = 1
            seen = list(perm)
            for i in range(n):
                for j in range(i + 1, n):
                    if seen[i] > seen[j]:
                        sign = -sign
            term = 1
            for i in range(n):
                term *= m.data[i][perm[i]]
            total += sign * term
        return total

    for _ in range(60):
        n = rng.randint(1, 4)
        m = random_matrix(rng, n, n, bound=4)
        assert det(m) == perm_det(m)


def test_solve_rational():
    x = solve_rational(IntMatrix([[1, 0], [0, 2]]), [1, 1])
    assert [str(v) for v in x] == ["1", "1/2"]
    with pytest.raises(ValueError):
        solve_rational(IntMatrix([[1, 2], [2, 4]]), [1, 1])


def test_solve_integer_roundtrip_random():
    rng = random.Random(67)
    for _ in range(120):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        a = random_matrix(rng, rows, cols, bound=4)
        x = [rng.randint(-5, 5) for _ in range(cols)]
        b = a.mul_vec(x)
        got = solve_integer(a, b)
        assert got is not None
        assert a.mul_vec(got) == b


def test_solve_integer_unsolvable():
    assert solve_integer(IntMatrix([[2]]), [1]) is None
    assert solve_integer(IntMatrix([[1, 0], [0, 2]]), [1, 1]) is None
    assert solve_integer(IntMatrix([[1], [1]]), [1, 2]) is None


def test_int_solver_reuse():
    a = IntMatrix([[1, 2, 0], [0, 2, 2]])
    solver = IntSolver(a)
    rng = random.Random(71)
    for _ in range(50):
        x = [rng.randint(-6, 6) for _ in range(3)]
        b = a.mul_vec(x)
        got = solver.solve(b)
        assert got is not None and a.mul_vec(got) == b


def test_row_lattice_rank_matches_dense():
    rng = random.Random(31)
    for _ in range(40):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = random_matrix(rng, rows, cols)
        lat = RowLattice()
        for row in m.data:
            lat.insert(row)
        assert lat.rank == rank_of_rows(m.data)


def test_row_lattice_membership():
    lat = RowLattice()
    lat.insert([2, 0, 1])
    lat.insert([0, 3, 1])
    assert lat.contains([2, 3, 2])
    assert lat.contains([4, -3, 1])
    assert lat.contains([0, 0, 0])
    assert not lat.contains([1, 0, 0])
    assert not lat.contains([2, 3, 1])


def test_row_lattice_membership_random():
    rng = random.Random(32)
    for _ in range(30):
        rows = rng.randint(1, 5)
        cols = rng.randint(2, 6)
        m = random_matrix(rng, rows, cols)
        lat = RowLattice()
        for row in m.data:
            lat.insert(row)
        combo = [0] * cols
        for row in m.data:
            f = rng.randint(-3, 3)
            combo = [c + f * x for c, x in zip(combo, row)]
        assert lat.contains(combo)
        # inserting a member must never grow the rank
        r = lat.rank
        lat.insert(combo)
        assert lat.rank == r


def test_sparse_kernel_matches_dense():
    rng = random.Random(33)
    for _ in range(40):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 7)
        m = random_matrix(rng, rows, cols)
        dense = kernel_basis(m)
        sparse = sparse_kernel_basis(cols, [dict(enumerate(r)) for r in m.data])
        assert len(sparse) == dense.cols
        a = RowLattice()
        for j in range(dense.cols):
            a.insert(dense.column(j))
        b = RowLattice()
        for vec in sparse:
            b.insert(vec)
            full = [0] * cols
            for c, x in vec.items():
                full[c] = x
            assert all(sum(row[j] * full[j] for j in range(cols)) == 0 for row in m.data)
            assert a.contains(full)
        assert a.rank == b.rank
        for j in range(dense.cols):
            assert b.contains(dense.column(j))
