"""Exact integer linear algebra: Smith normal form, solving, lattices.

Matrices are plain lists of rows of Python ints, so nothing ever overflows
or rounds.  The Smith routine tracks the unimodular row/column transforms
(and, on request, their inverses) by applying every elementary operation to
the bookkeeping matrices as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    cols = len(b[0])
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
        for i in range(len(a))
    ]


def mat_vec(a: Matrix, v: Sequence[int]) -> List[int]:
    return [sum(row[k] * v[k] for k in range(len(v))) for row in a]


def from_columns(columns: Sequence[Sequence[int]], rows: int) -> Matrix:
    return [[col[i] for col in columns] for i in range(rows)]


def determinant(a: Matrix) -> int:
    """Fraction-free Bareiss determinant (square matrices only)."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


@dataclass
class SmithDecomposition:
    """D = U * M * V with U, V unimodular and D diagonal, d1 | d2 | ...

    `factors` lists the nonzero diagonal entries (all positive).  `uinv`
    and `vinv` are filled only when the decomposition was computed with
    `want_inverses=True`.
    """

    factors: Tuple[int, ...]
    u: Matrix
    v: Matrix
    shape: Tuple[int, int]
    uinv: Optional[Matrix] = None
    vinv: Optional[Matrix] = None

    @property
    def rank(self) -> int:
        return len(self.factors)

    def diagonal_matrix(self) -> Matrix:
        rows, cols = self.shape
        d = [[0] * cols for _ in range(rows)]
        for i, f in enumerate(self.factors):
            d[i][i] = f
        return d


def smith_normal_form(m: Matrix, want_inverses: bool = False) -> SmithDecomposition:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Pivot choice is the smallest nonzero absolute value of the remaining
    block (ties broken by position), which keeps entry growth mild; a final
    pass repairs the divisibility chain.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [row[:] for row in m]
    u = identity(rows)
    v = identity(cols)
    uinv = identity(rows) if want_inverses else None
    vinv = identity(cols) if want_inverses else None

    def swap_rows(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        if uinv is not None:
            for r in range(rows):
                uinv[r][i], uinv[r][j] = uinv[r][j], uinv[r][i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]
        if vinv is not None:
            vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        if q == 0:
            return
        arow, srow = a[dst], a[src]
        for k in range(cols):
            arow[k] += q * srow[k]
        urow, usrc = u[dst], u[src]
        for k in range(rows):
            urow[k] += q * usrc[k]
        if uinv is not None:
            for r in range(rows):
                uinv[r][src] -= q * uinv[r][dst]

    def add_col(src, dst, q):
        # col dst += q * col src
        if q == 0:
            return
        for r in range(rows):
            a[r][dst] += q * a[r][src]
        for r in range(cols):
            v[r][dst] += q * v[r][src]
        if vinv is not None:
            vrow, vdst = vinv[src], vinv[dst]
            for k in range(cols):
                vrow[k] -= q * vdst[k]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        if uinv is not None:
            for r in range(rows):
                uinv[r][i] = -uinv[r][i]

    def balanced_quotient(value, pivot):
        q, r = divmod(value, pivot)
        if 2 * abs(r) > abs(pivot):
            q += 1
        return q

    def move_min_pivot(t) -> bool:
        best = None
        where = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                val = abs(row[j])
                if val and (best is None or val < best):
                    best = val
                    where = (i, j)
                    if val == 1:
                        break
            if best == 1:
                break
        if where is None:
            return False
        swap_rows(t, where[0])
        swap_cols(t, where[1])
        return True

    t = 0
    limit = min(rows, cols)
    while t < limit:
        if not move_min_pivot(t):
            break
        # Re-selecting the minimal pivot each round (with balanced
        # remainders) keeps entry growth tame and guarantees termination:
        # every retry strictly shrinks the smallest entry of the block.
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -balanced_quotient(a[i][t], p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -balanced_quotient(a[t][j], p))
                    if a[t][j]:
                        clean = False
            if not clean:
                move_min_pivot(t)
                continue
            stray = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        stray = i
                        break
                if stray is not None:
                    break
            if stray is None:
                break
            add_row(stray, t, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    factors = tuple(a[i][i] for i in range(t) if a[i][i])
    return SmithDecomposition(factors, u, v, (rows, cols), uinv, vinv)


def invariant_factors(m: Matrix) -> Tuple[int, ...]:
    return smith_normal_form(m).factors


class IntegerSolver:
    """Repeated exact solving of A x = b from a single decomposition."""

    def __init__(self, a: Matrix):
        self.rows = len(a)
        self.cols = len(a[0]) if self.rows else 0
        self.dec = smith_normal_form(a)

    def solve(self, b: Sequence[int]) -> Optional[List[int]]:
        """One integer solution of A x = b, or None when none exists."""
        d = self.dec
        c = mat_vec(d.u, list(b))
        y = [0] * self.cols
        for i in range(self.rows):
            if i < len(d.factors):
                if c[i] % d.factors[i]:
                    return None
                if i < self.cols:
                    y[i] = c[i] // d.factors[i]
            elif c[i]:
                return None
        return mat_vec(d.v, y)

    def solvable(self, b: Sequence[int]) -> bool:
        return self.solve(b) is not None


def kernel_basis(a: Matrix) -> List[List[int]]:
    """A lattice basis of {x : A x = 0}, as a list of column vectors."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    dec = smith_normal_form(a)
    return [[dec.v[i][j] for i in range(cols)] for j in range(dec.rank, cols)]


def column_lattice_basis(columns: Sequence[Sequence[int]], dim: int) -> List[List[int]]:
    """A basis of the lattice spanned by the given vectors in Z^dim."""
    live = [c for c in columns if any(c)]
    if not live:
        return []
    a = from_columns(live, dim)
    dec = smith_normal_form(a, want_inverses=True)
    basis = []
    for i, f in enumerate(dec.factors):
        basis.append([dec.uinv[r][i] * f for r in range(dim)])
    return basis


def quotient_invariants(
    ambient_rank: int, subgroup_columns: Sequence[Sequence[int]]
) -> Tuple[int, Tuple[int, ...]]:
    """Free rank and torsion of Z^ambient_rank / <columns>."""
    live = [c for c in subgroup_columns if any(c)]
    if not live:
        return ambient_rank, ()
    factors = invariant_factors(from_columns(live, ambient_rank))
    free = ambient_rank - len(factors)
    torsion = tuple(f for f in factors if f != 1)
    return free, torsion


def preimage_generators(
    m: Matrix, target_columns: Sequence[Sequence[int]], domain_dim: int
) -> List[List[int]]:
    """Generators of the lattice {v : M v lies in <target_columns>}.

    Computed as the projection onto the first `domain_dim` coordinates of
    the kernel of the block matrix [M | T].
    """
    rows = len(m)
    if rows == 0:
        return [[1 if i == j else 0 for i in range(domain_dim)] for j in range(domain_dim)]
    live = [c for c in target_columns if any(c)]
    block = [m[i][:] + [c[i] for c in live] for i in range(rows)]
    gens = []
    for vec in kernel_basis(block):
        head = vec[:domain_dim]
        gens.append(head)
    return gens
