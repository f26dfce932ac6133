"""Exact linear algebra over Q and over Q[x1, ..., xn].

Rational matrices are lists of rows. Determinants and ranks use Bareiss
fraction-free elimination on rows scaled to integers, so intermediate entries
stay integral; null spaces and solutions come from a rational row reduction.
"""

from __future__ import annotations

from functools import reduce
from math import lcm
from typing import Sequence

from gmpy2 import mpq, mpz

from .errors import ContractError, DimensionError, DomainError
from .polycore import Polynomial, to_rational


def to_matrix(rows) -> list[list]:
    rows = [[to_rational(v) for v in row] for row in rows]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DimensionError("ragged matrix")
    return rows


def _integer_rows(rows):
    out = []
    for row in rows:
        den = reduce(lcm, (int(v.denominator) for v in row), 1)
        out.append([mpz(v * den) for v in row])
    return out


def _bareiss(rows):
    """Fraction-free forward elimination in place; returns (rank, sign, last_pivot)."""
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    prev = mpz(1)
    sign = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = rows[r][c]
        for i in range(r + 1, m):
            a = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c + 1, ncols):
                # exact division is the Bareiss invariant
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
            row_i[c] = mpz(0)
        for i in range(r + 1, m):
            for j in range(c):
                rows[i][j] = mpz(0)
        prev = p
        r += 1
    return r, sign, prev


def rank(matrix) -> int:
    rows = _integer_rows(to_matrix(matrix))
    if not rows or not rows[0]:
        return 0
    return _bareiss(rows)[0]


def det(matrix):
    """Determinant of a square rational matrix."""
    mat = to_matrix(matrix)
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return mpq(1)
    scale = mpq(1)
    for row in mat:
        scale *= reduce(lcm, (int(v.denominator) for v in row), 1)
    rows = _integer_rows(mat)
    r, sign, last = _bareiss(rows)
    if r < n:
        return mpq(0)
    return mpq(sign * last) / scale


def rref(matrix):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in to_matrix(matrix)]
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def nullspace(matrix, ncols: int | None = None) -> list[list]:
    """Basis of ``{v : M v = 0}``; ``ncols`` is needed when ``M`` has no rows."""
    mat = to_matrix(matrix)
    if not mat:
        if ncols is None:
            raise ContractError("ncols required for an empty matrix")
        return [[mpq(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ncols = len(mat[0])
    rows, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(matrix, rhs: Sequence) -> list | None:
    """One solution of ``M v = rhs`` or ``None`` when the system is inconsistent."""
    mat = to_matrix(matrix)
    rhs = [to_rational(v) for v in rhs]
    if len(rhs) != len(mat):
        raise DimensionError("right-hand side length does not match row count")
    ncols = len(mat[0]) if mat else 0
    aug = [row + [b] for row, b in zip(mat, rhs)]
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    v = [mpq(0)] * ncols
    for row, pc in zip(rows, pivots):
        v[pc] = row[ncols]
    return v


def inverse(matrix) -> list[list]:
    mat = to_matrix(matrix)
    n = len(mat)
    aug = [row + [mpq(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise DomainError("singular matrix")
    return [row[n:] for row in rows[:n]]


def identity(n: int) -> list[list]:
    return [[mpq(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b) -> list[list]:
    return [[sum((x * y for x, y in zip(row, col)), mpq(0)) for col in zip(*b)] for row in a]


# ---------------------------------------------------------------------------
# matrices over the polynomial ring


def poly_det(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by Laplace expansion along rows, memoized on column subsets."""
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        raise ContractError("empty polynomial matrix")
    nvars = matrix[0][0].nvars
    memo = {}

    def minor(row, cols):
        # determinant of rows row..n-1 restricted to the column tuple cols
        if row == n:
            return Polynomial.one(nvars)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        total = Polynomial.zero(nvars)
        for k, c in enumerate(cols):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:k] + cols[k + 1:])
            term = entry * sub
            total = total - term if k % 2 else total + term
        memo[cols] = total
        return total

    return minor(0, tuple(range(n)))


def poly_minor(matrix, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    return poly_det([[matrix[r][c] for c in cols] for r in rows])


def poly_transpose(matrix):
    return [list(col) for col in zip(*matrix)]


def poly_matmul(a, b):
    nvars = a[0][0].nvars
    out = []
    for row in a:
        out_row = []
        for col in zip(*b):
            acc = Polynomial.zero(nvars)
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def poly_identity(n: int, nvars: int):
    return [[Polynomial.one(nvars) if i == j else Polynomial.zero(nvars) for j in range(n)]
            for i in range(n)]


def poly_inverse(matrix: Sequence[Sequence[Polynomial]]) -> list[list[Polynomial]]:
    """Inverse over the polynomial ring; exists iff the determinant is a nonzero constant."""
    n = len(matrix)
    d = poly_det(matrix)
    if d.is_zero() or not d.is_constant():
        raise DomainError(f"determinant {d} is not a nonzero constant; no polynomial inverse")
    if n == 1:
        return [[Polynomial.one(d.nvars) / d]]
    inv_d = 1 / d.constant_term
    idx = list(range(n))
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # adjugate entry (i, j) is the (j, i) cofactor
            cof = poly_minor(matrix, [r for r in idx if r != j], [c for c in idx if c != i])
            out[i][j] = cof.scale(inv_d if (i + j) % 2 == 0 else -inv_d)
    return out


def evaluate_matrix(matrix, point) -> list[list]:
    return [[entry.evaluate(point) for entry in row] for row in matrix]
