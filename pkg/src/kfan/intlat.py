"""Exact linear algebra over the integers.

Everything here runs on plain Python ints (arbitrary precision); no floats,
no modular shortcuts.  The module provides the small kit the rest of the
package leans on:

* Hermite and Smith normal forms with their unimodular transforms,
* saturated kernels, integer linear solving, exact rank and determinant,
* quotient lattices (by the saturation of a sublattice) with a section,
* primitive vectors and exact rational solving for barycentric work.

Matrices are dense and tiny by design; clarity over asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence


class IntMatrix:
    """Immutable-by-convention dense integer matrix (row major)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence[int]], cols: Optional[int] = None):
        rows = [list(map(int, row)) for row in data]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = 0 if cols is None else cols
        self.rows = len(rows)
        self.cols = width
        self.data = rows

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        cols = [list(map(int, c)) for c in columns]
        if cols:
            height = len(cols[0])
            if any(len(c) != height for c in cols):
                raise ValueError("ragged columns")
        else:
            height = 0 if rows is None else rows
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(height)], cols=len(cols))

    def column(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows)

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            row_i = self.data[i]
            out.append([sum(row_i[k] * other.data[k][j] for k in range(self.cols))
                        for j in range(other.cols)])
        return IntMatrix(out, cols=other.cols)

    def mul_vec(self, v: Sequence[int]) -> list:
        if self.cols != len(v):
            raise ValueError("shape mismatch in matrix-vector product")
        return [sum(row[k] * v[k] for k in range(self.cols)) for row in self.data]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.data == other.data and self.cols == other.cols

    def __repr__(self) -> str:
        return f"IntMatrix({self.data!r})"


def _swap_rows(a: list, i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]


def _add_row(a: list, dst: int, src: int, factor: int) -> None:
    if factor:
        row_d, row_s = a[dst], a[src]
        for k in range(len(row_d)):
            row_d[k] += factor * row_s[k]


def hermite_normal_form(m: IntMatrix) -> tuple:
    """Row-style Hermite normal form.

    Returns (h, u) with u unimodular and h = u * m.  Pivots are positive,
    entries above each pivot are reduced into [0, pivot), pivot columns
    increase strictly and zero rows come last.
    """
    h = [row[:] for row in m.data]
    u = [[1 if i == j else 0 for j in range(m.rows)] for i in range(m.rows)]
    pivot_row = 0
    for col in range(m.cols):
        while True:
            live = [i for i in range(pivot_row, m.rows) if h[i][col] != 0]
            if not live:
                break
            best = min(live, key=lambda i: abs(h[i][col]))
            if best != pivot_row:
                _swap_rows(h, pivot_row, best)
                _swap_rows(u, pivot_row, best)
            clean = True
            for i in range(pivot_row + 1, m.rows):
                if h[i][col]:
                    q = h[i][col] // h[pivot_row][col]
                    _add_row(h, i, pivot_row, -q)
                    _add_row(u, i, pivot_row, -q)
                    if h[i][col]:
                        clean = False
            if clean:
                break
        if pivot_row < m.rows and h[pivot_row][col] != 0:
            if h[pivot_row][col] < 0:
                h[pivot_row] = [-x for x in h[pivot_row]]
                u[pivot_row] = [-x for x in u[pivot_row]]
            piv = h[pivot_row][col]
            for i in range(pivot_row):
                q = h[i][col] // piv
                _add_row(h, i, pivot_row, -q)
                _add_row(u, i, pivot_row, -q)
            pivot_row += 1
            if pivot_row == m.rows:
                break
    return IntMatrix(h, cols=m.cols), IntMatrix(u, cols=m.rows)


def _snf_with_inverses(m: IntMatrix) -> tuple:
    """Smith normal form with transforms and their inverses.

    Returns (d, p, q, p_inv, q_inv) with p * m * q = d, d diagonal with
    d_1 | d_2 | ... and all diagonal entries nonnegative.
    """
    r, c = m.rows, m.cols
    a = [row[:] for row in m.data]
    p = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    p_inv = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    q = [[1 if i == j else 0 for j in range(c)] for i in range(c)]
    q_inv = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def row_op(dst: int, src: int, f: int) -> None:
        # a_dst += f * a_src; keeps p * m * q = a, updating p and p_inv.
        _add_row(a, dst, src, f)
        _add_row(p, dst, src, f)
        for i in range(r):
            p_inv[i][src] -= f * p_inv[i][dst]

    def col_op(dst: int, src: int, f: int) -> None:
        for i in range(r):
            a[i][dst] += f * a[i][src]
        for i in range(c):
            q[i][dst] += f * q[i][src]
        _add_row(q_inv, src, dst, -f)

    def row_swap(i: int, j: int) -> None:
        _swap_rows(a, i, j)
        _swap_rows(p, i, j)
        for k in range(r):
            p_inv[k][i], p_inv[k][j] = p_inv[k][j], p_inv[k][i]

    def col_swap(i: int, j: int) -> None:
        for k in range(r):
            a[k][i], a[k][j] = a[k][j], a[k][i]
        for k in range(c):
            q[k][i], q[k][j] = q[k][j], q[k][i]
        _swap_rows(q_inv, i, j)

    def row_negate(i: int) -> None:
        a[i] = [-x for x in a[i]]
        p[i] = [-x for x in p[i]]
        for k in range(r):
            p_inv[k][i] = -p_inv[k][i]

    for t in range(min(r, c)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, r) for j in range(t, c) if a[i][j]]
            if not entries:
                break
            _, bi, bj = min(entries)
            if bi != t:
                row_swap(t, bi)
            if bj != t:
                col_swap(t, bj)
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    row_op(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, c):
                if a[t][j]:
                    col_op(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            # Row and column are clear; enforce divisibility of the rest.
            offender = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, 1)
        if t < min(r, c) and a[t][t] < 0:
            row_negate(t)
    d = IntMatrix(a, cols=c)
    return d, IntMatrix(p), IntMatrix(q), IntMatrix(p_inv), IntMatrix(q_inv)


def smith_normal_form(m: IntMatrix) -> tuple:
    """Smith normal form: returns (d, p, q) with p * m * q = d diagonal,
    nonnegative, each diagonal entry dividing the next."""
    d, p, q, _, _ = _snf_with_inverses(m)
    return d, p, q


def invariant_factors(m: IntMatrix) -> list:
    d, _, _ = smith_normal_form(m)
    return [d.data[i][i] for i in range(min(d.rows, d.cols)) if d.data[i][i] != 0]


def rank_of_rows(rows: Sequence[Sequence[int]]) -> int:
    """Rank of the span of the given integer row vectors (exact)."""
    a = [list(map(int, row)) for row in rows if any(row)]
    if not a:
        return 0
    cols = len(a[0])
    rank = 0
    for col in range(cols):
        while True:
            live = [i for i in range(rank, len(a)) if a[i][col] != 0]
            if not live:
                break
            best = min(live, key=lambda i: abs(a[i][col]))
            if best != rank:
                _swap_rows(a, rank, best)
            clean = True
            for i in range(rank + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // a[rank][col]
                    _add_row(a, i, rank, -q)
                    if a[i][col]:
                        clean = False
            if clean:
                break
        if rank < len(a) and a[rank][col] != 0:
            rank += 1
            if rank == len(a):
                break
    return rank


def rank(m: IntMatrix) -> int:
    return rank_of_rows(m.data)


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [row[:] for row in m.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            _swap_rows(a, k, swap)
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Basis of the saturated integer kernel {x : m * x = 0}, as columns."""
    h, u = hermite_normal_form(m.transpose())
    zero_rows = [i for i in range(h.rows) if not any(h.data[i])]
    return IntMatrix.from_columns([u.data[i] for i in zero_rows], rows=m.cols)


def primitive(v: Sequence[int]) -> tuple:
    """Primitive integer vector on the same ray through the origin."""
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("primitive vector of the zero vector is undefined")
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class QuotientLattice:
    """Quotient of Z^ambient_rank by the saturation of a sublattice.

    project maps the ambient lattice onto Z^rank with kernel exactly the
    saturation; section is a right inverse (project * section = identity).
    """

    ambient_rank: int
    rank: int
    project: IntMatrix
    section: IntMatrix

    def project_vec(self, v: Sequence[int]) -> tuple:
        return tuple(self.project.mul_vec(list(v)))

    def section_vec(self, w: Sequence[int]) -> tuple:
        return tuple(self.section.mul_vec(list(w)))


def quotient_lattice(ambient_rank: int, sub_basis: IntMatrix) -> QuotientLattice:
    """Quotient of Z^ambient_rank by the saturation of the column span.

    Raises ValueError if the columns are dependent (they must form a basis
    of the sublattice they span).
    """
    n = ambient_rank
    k = sub_basis.cols
    if sub_basis.rows != n:
        raise ValueError("sub_basis rows must match ambient rank")
    if k == 0:
        eye = IntMatrix.identity(n)
        return QuotientLattice(n, n, eye, eye)
    d, p, _, p_inv, _ = _snf_with_inverses(sub_basis)
    nonzero = sum(1 for i in range(min(d.rows, d.cols)) if d.data[i][i] != 0)
    if nonzero != k:
        raise ValueError("dependent columns in sublattice basis")
    project = IntMatrix([p.data[i] for i in range(k, n)], cols=n)
    section = IntMatrix.from_columns([p_inv.column(j) for j in range(k, n)], rows=n)
    return QuotientLattice(n, n - k, project, section)


def solve_rational(a: IntMatrix, b: Sequence[int]) -> list:
    """Exact solution of a square nonsingular system over the rationals."""
    n = a.rows
    if a.cols != n or len(b) != n:
        raise ValueError("solve_rational expects a square system")
    m = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(a.data, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col] / pv
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


class IntSolver:
    """Factored integer linear system a * x = b, reusable across many b.

    The Hermite form of a^T is computed once; each solve is a forward
    substitution with exact divisibility checks.  solve returns None when
    no integer solution exists.
    """

    def __init__(self, a: IntMatrix):
        self.a = a
        self.n_vars = a.cols
        self.n_eqs = a.rows
        h, u = hermite_normal_form(a.transpose())
        self._h = h.data
        self._u = u.data
        self._pivots = []
        for i in range(h.rows):
            lead = next((j for j in range(h.cols) if h.data[i][j] != 0), None)
            if lead is None:
                break
            self._pivots.append((i, lead))

    def solve(self, b: Sequence[int]) -> Optional[list]:
        if len(b) != self.n_eqs:
            raise ValueError("right-hand side has wrong length")
        residual = list(map(int, b))
        y = {}
        for i, lead in self._pivots:
            piv = self._h[i][lead]
            val = residual[lead]
            if val % piv:
                return None
            t = val // piv
            if t:
                y[i] = t
                row = self._h[i]
                for j in range(lead, self.n_eqs):
                    if row[j]:
                        residual[j] -= t * row[j]
        if any(residual):
            return None
        x = [0] * self.n_vars
        for i, t in y.items():
            row = self._u[i]
            for j in range(self.n_vars):
                if row[j]:
                    x[j] += t * row[j]
        return x


def solve_integer(a: IntMatrix, b: Sequence[int]) -> Optional[list]:
    """One-shot integer solve of a * x = b; None when unsolvable over Z."""
    return IntSolver(a).solve(b)


def _ext_gcd(a: int, b: int) -> tuple:
    """(g, s, t) with g = gcd(a, b) = s*a + t*b, g > 0 for nonzero input."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class RowLattice:
    """Incremental echelon basis of the lattice spanned by inserted rows.

    Rows are sparse {column: coeff} dicts.  The basis stays in echelon form
    (one row per pivot column, positive leading entry), so the lattice rank
    is the number of pivots and exact integer membership is a leading-term
    reduction.  Insertions use gcd pivoting, which keeps entries from the
    determinant blow-up of fraction-free elimination.
    """

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @staticmethod
    def _sparse(row) -> dict:
        if isinstance(row, dict):
            return {int(c): int(x) for c, x in row.items() if x}
        return {c: int(x) for c, x in enumerate(row) if x}

    def insert(self, row) -> bool:
        """Add a row to the lattice; True when the rank grew."""
        before = len(self.pivots)
        stack = [self._sparse(row)]
        while stack:
            r = stack.pop()
            while r:
                c = min(r)
                piv = self.pivots.get(c)
                if piv is None:
                    if r[c] < 0:
                        r = {k: -v for k, v in r.items()}
                    self.pivots[c] = r
                    r = None
                    break
                a, b = piv[c], r[c]
                if b % a == 0:
                    f = b // a
                    r = _row_sub(r, f, piv)
                else:
                    g, s, t = _ext_gcd(a, b)
                    new = _row_comb(s, piv, t, r)
                    rem = _row_sub(piv, a // g, new)
                    r = _row_sub(r, b // g, new)
                    self.pivots[c] = new
                    if rem:
                        stack.append(rem)
        return len(self.pivots) > before

    def contains(self, row) -> bool:
        """Exact membership of the row in the current lattice."""
        r = self._sparse(row)
        while r:
            c = min(r)
            piv = self.pivots.get(c)
            if piv is None or r[c] % piv[c]:
                return False
            r = _row_sub(r, r[c] // piv[c], piv)
        return True


def _row_sub(r: dict, f: int, p: dict) -> dict:
    """r - f*p for sparse rows."""
    if not f:
        return dict(r)
    out = dict(r)
    for c, x in p.items():
        v = out.get(c, 0) - f * x
        if v:
            out[c] = v
        else:
            out.pop(c, None)
    return out


def _row_comb(s: int, p: dict, t: int, r: dict) -> dict:
    """s*p + t*r for sparse rows."""
    out = {}
    for c, x in p.items():
        v = s * x
        if v:
            out[c] = v
    for c, x in r.items():
        v = out.get(c, 0) + t * x
        if v:
            out[c] = v
        else:
            out.pop(c, None)
    return out


def sparse_kernel_basis(n_cols: int, rows) -> list:
    """Saturated kernel of a sparse system, for systems with many columns.

    `rows` is an iterable of sparse {column: coeff} constraint rows over
    n_cols variables.  Returns an echelon list of sparse kernel vectors
    spanning the full integer kernel lattice.  Same contract as
    kernel_basis, built by tracking coordinates through a RowLattice whose
    leading block holds the constraint values.
    """
    rows = [RowLattice._sparse(r) for r in rows]
    n_rows = len(rows)
    lat = RowLattice()
    for i in range(n_cols):
        vec = {}
        for j, row in enumerate(rows):
            x = row.get(i, 0)
            if x:
                vec[j] = x
        vec[n_rows + i] = 1
        lat.insert(vec)
    out = []
    for c in sorted(lat.pivots):
        if c >= n_rows:
            row = lat.pivots[c]
            out.append({k - n_rows: v for k, v in row.items()})
    return out
