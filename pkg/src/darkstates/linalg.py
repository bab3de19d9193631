"""Exact dense linear algebra over complex rationals.

Everything here is division-exact: determinants use fraction-free
(Bareiss) elimination, rank uses the same update with full pivoting, and
null spaces come from reduced row echelon form.  Matrices are small
(tens of levels), so the algorithms are written for clarity, not scale.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .scalars import EC_ONE, EC_ZERO, ExactComplex

Matrix = Sequence[Sequence[ExactComplex]]
Vector = Sequence[ExactComplex]


class SingularMatrixError(ArithmeticError):
    """Raised when an exact inverse of a singular matrix is requested."""


def _rows(m: Matrix) -> list[list[ExactComplex]]:
    return [list(row) for row in m]


def zeros(n_rows: int, n_cols: int) -> list[list[ExactComplex]]:
    return [[EC_ZERO] * n_cols for _ in range(n_rows)]


def identity(n: int) -> list[list[ExactComplex]]:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = EC_ONE
    return m


def dagger(m: Matrix) -> list[list[ExactComplex]]:
    """Conjugate transpose."""
    if not m:
        return []
    return [[m[i][j].conjugate() for i in range(len(m))] for j in range(len(m[0]))]


def matmul(a: Matrix, b: Matrix) -> list[list[ExactComplex]]:
    n, k = len(a), len(b)
    cols = len(b[0]) if k else 0
    out = zeros(n, cols)
    for i in range(n):
        for j in range(cols):
            acc = EC_ZERO
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            out[i][j] = acc
    return out


def mat_vec(a: Matrix, v: Vector) -> list[ExactComplex]:
    out = []
    for row in a:
        acc = EC_ZERO
        for x, y in zip(row, v):
            acc = acc + x * y
        out.append(acc)
    return out


def gram(m: Matrix) -> list[list[ExactComplex]]:
    """The Hermitian product of a matrix with itself (columns against columns)."""
    return matmul(dagger(m), _rows(m)) if m else []


def det(m: Matrix) -> ExactComplex:
    """Exact determinant by fraction-free (Bareiss) elimination.

    The determinant of the empty matrix is 1.
    """
    n = len(m)
    if n == 0:
        return EC_ONE
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    a = _rows(m)
    sign = 1
    prev = EC_ONE
    for k in range(n - 1):
        if a[k][k].is_zero:
            for r in range(k + 1, n):
                if not a[r][k].is_zero:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return EC_ZERO
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) / prev
            a[i][k] = EC_ZERO
        prev = pivot
    result = a[n - 1][n - 1]
    return -result if sign < 0 else result


def rank(m: Matrix) -> int:
    """Exact rank by fraction-free elimination with full pivoting."""
    if not m or not m[0]:
        return 0
    a = _rows(m)
    n_rows, n_cols = len(a), len(a[0])
    r = 0
    prev = EC_ONE
    while r < min(n_rows, n_cols):
        pivot_pos = None
        for i in range(r, n_rows):
            for j in range(r, n_cols):
                if not a[i][j].is_zero:
                    pivot_pos = (i, j)
                    break
            if pivot_pos:
                break
        if pivot_pos is None:
            break
        pi, pj = pivot_pos
        if pi != r:
            a[r], a[pi] = a[pi], a[r]
        if pj != r:
            for row in a:
                row[r], row[pj] = row[pj], row[r]
        pivot = a[r][r]
        for i in range(r + 1, n_rows):
            for j in range(r + 1, n_cols):
                a[i][j] = (pivot * a[i][j] - a[i][r] * a[r][j]) / prev
            a[i][r] = EC_ZERO
        prev = pivot
        r += 1
    return r


def row_echelon(m: Matrix) -> tuple[list[list[ExactComplex]], list[int]]:
    """Unscaled row echelon form: nonzero rows and their pivot columns.

    Rows are combined but never rescaled, so inputs that are already in
    echelon form pass through unchanged.  Rows that become zero are
    dropped.
    """
    a = _rows(m)
    n_cols = len(a[0]) if a else 0
    pivot_cols: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, len(a)):
            if not a[i][c].is_zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        pivot = a[r][c]
        for i in range(r + 1, len(a)):
            if a[i][c].is_zero:
                continue
            factor = a[i][c] / pivot
            a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
            a[i][c] = EC_ZERO
        pivot_cols.append(c)
        r += 1
    return a[:r], pivot_cols


def rref(m: Matrix) -> tuple[list[list[ExactComplex]], list[int]]:
    """Reduced row echelon form with unit pivots, plus pivot columns."""
    rows, pivot_cols = row_echelon(m)
    for r in range(len(rows) - 1, -1, -1):
        c = pivot_cols[r]
        pivot = rows[r][c]
        rows[r] = [x / pivot for x in rows[r]]
        for i in range(r):
            factor = rows[i][c]
            if factor.is_zero:
                continue
            rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
            rows[i][c] = EC_ZERO
    return rows, pivot_cols


def null_space(m: Matrix, n_cols: int | None = None) -> list[list[ExactComplex]]:
    """Exact basis of the right null space ``{v : m v = 0}``.

    Each basis vector is content-reduced.  ``n_cols`` must be supplied for
    matrices with zero rows (it cannot be inferred from an empty list).
    """
    if n_cols is None:
        if not m:
            raise ValueError("n_cols required for an empty matrix")
        n_cols = len(m[0])
    rows, pivot_cols = rref(m) if m else ([], [])
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        v = [EC_ZERO] * n_cols
        v[f] = EC_ONE
        for r, p in enumerate(pivot_cols):
            v[p] = -rows[r][f]
        basis.append(content_reduce(v))
    return basis


def inverse(m: Matrix) -> list[list[ExactComplex]]:
    """Exact inverse via Gauss-Jordan on the augmented matrix."""
    n = len(m)
    if n == 0:
        return []
    aug = [list(row) + list(identity(n)[i]) for i, row in enumerate(m)]
    rows, pivot_cols = rref(aug)
    if pivot_cols[: n if len(pivot_cols) >= n else len(pivot_cols)] != list(range(n)):
        raise SingularMatrixError("matrix has no exact inverse")
    return [row[n:] for row in rows]


def mat_equal(a: Matrix, b: Matrix) -> bool:
    if len(a) != len(b):
        return False
    return all(tuple(ra) == tuple(rb) for ra, rb in zip(a, b))


def is_zero_vector(v: Vector) -> bool:
    return all(x.is_zero for x in v)


def _fraction_content(parts: Iterable[Fraction]) -> Fraction:
    """Positive rational g with parts/g integer and collectively coprime."""
    num = 0
    den = 1
    for p in parts:
        if p == 0:
            continue
        num = gcd(num, abs(p.numerator))
        den = den * p.denominator // gcd(den, p.denominator)
    return Fraction(num, den) if num else Fraction(1)


def content_reduce(v: Vector) -> list[ExactComplex]:
    """Divide out the positive rational content, giving a primitive vector.

    All real and imaginary parts become integers with no common factor.
    The zero vector is returned unchanged; no sign or phase is altered.
    """
    parts = [p for x in v for p in (x.re, x.im)]
    g = _fraction_content(parts)
    if g == 1:
        return list(v)
    inv = ExactComplex(1 / g)
    return [x * inv for x in v]


def canonical_ray(v: Vector) -> tuple[ExactComplex, ...]:
    """Canonical representative of the complex line through ``v``.

    Dividing by the first nonzero component kills any overall scalar
    (including complex phases); content reduction then picks a unique
    primitive integer form.  Two vectors are proportional iff their
    canonical rays are equal.
    """
    for x in v:
        if not x.is_zero:
            scaled = [y / x for y in v]
            return tuple(content_reduce(scaled))
    return tuple(v)


def proportional(v: Vector, w: Vector) -> bool:
    """Exact test that two nonzero vectors span the same complex line."""
    if len(v) != len(w) or is_zero_vector(v) or is_zero_vector(w):
        return False
    return canonical_ray(v) == canonical_ray(w)


def norm_sq(v: Vector) -> Fraction:
    """Exact squared Euclidean norm."""
    total = Fraction(0)
    for x in v:
        total += x.abs2()
    return total
