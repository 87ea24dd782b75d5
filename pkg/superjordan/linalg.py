"""
Exact dense linear algebra over any field carrier of exactfield.

Matrices are lists of rows, vectors are lists of scalars. Nothing here
mutates its arguments.
"""

from typing import List, Optional, Sequence, Tuple

from .exactfield import Field, FieldScalar

Vector = List[FieldScalar]
Matrix = List[List[FieldScalar]]


def zeros(rows: int, cols: int, field: Field) -> Matrix:
    return [[field.zero] * cols for _ in range(rows)]


def identity(n: int, field: Field) -> Matrix:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[FieldScalar]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence[FieldScalar]], b: Sequence[Sequence[FieldScalar]], field: Field) -> Matrix:
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new_row = [field.zero] * cols
        for k, x in enumerate(row):
            if x.is_zero():
                continue
            for j, y in enumerate(b[k]):
                if not y.is_zero():
                    new_row[j] = new_row[j] + x * y
        out.append(new_row)
    return out


def vec_mat(v: Sequence[FieldScalar], m: Sequence[Sequence[FieldScalar]], field: Field) -> Vector:
    """Row vector times matrix."""
    return mat_mul([list(v)], m, field)[0] if m else []


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c: FieldScalar) -> Matrix:
    return [[c * x for x in row] for row in a]


def is_zero_matrix(a: Sequence[Sequence[FieldScalar]]) -> bool:
    return all(x.is_zero() for row in a for x in row)


def rref(m: Sequence[Sequence[FieldScalar]], field: Field) -> Tuple[Matrix, List[int]]:
    """
    Reduced row echelon form by Gauss-Jordan elimination.

    Returns:
        Tuple[Matrix, List[int]]: the reduced matrix (zero rows kept at the
        bottom) and the pivot column of each nonzero row.
    """
    rows = [list(r) for r in m]
    if not rows:
        return rows, []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n_rows):
            if i != r and not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m: Sequence[Sequence[FieldScalar]], field: Field) -> int:
    if not m:
        return 0
    return len(rref(m, field)[1])


def nullspace(m: Sequence[Sequence[FieldScalar]], field: Field, n_cols: Optional[int] = None) -> List[Vector]:
    """Basis of {v : m v = 0}; n_cols is required when m has no rows."""
    if n_cols is None:
        n_cols = len(m[0])
    if not m:
        return identity(n_cols, field)
    reduced, pivots = rref(m, field)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * n_cols
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -reduced[i][f]
        basis.append(v)
    return basis


def solve(m: Sequence[Sequence[FieldScalar]], b: Sequence[FieldScalar], field: Field,
          n_cols: Optional[int] = None) -> Optional[Tuple[Vector, List[Vector]]]:
    """
    Solve m x = b exactly.

    Returns:
        Optional[Tuple[Vector, List[Vector]]]: a particular solution (free
        variables set to zero) and a basis of the kernel, or None when the
        system is inconsistent.
    """
    if n_cols is None:
        n_cols = len(m[0])
    if not m:
        return [field.zero] * n_cols, identity(n_cols, field)
    augmented = [list(row) + [rhs] for row, rhs in zip(m, b)]
    reduced, pivots = rref(augmented, field)
    if n_cols in pivots:
        return None
    x = [field.zero] * n_cols
    for i, pc in enumerate(pivots):
        x[pc] = reduced[i][n_cols]
    return x, nullspace(m, field, n_cols)


def determinant(m: Sequence[Sequence[FieldScalar]], field: Field) -> FieldScalar:
    rows = [list(r) for r in m]
    n = len(rows)
    det = field.one
    for c in range(n):
        pivot = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
        if pivot is None:
            return field.zero
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                factor = rows[i][c] * inv
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[c])]
    return det


def inverse(m: Sequence[Sequence[FieldScalar]], field: Field) -> Optional[Matrix]:
    n = len(m)
    augmented = [list(row) + ident for row, ident in zip(m, identity(n, field))]
    reduced, pivots = rref(augmented, field)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in reduced]


def span_basis(vectors: Sequence[Sequence[FieldScalar]], field: Field) -> Matrix:
    """Reduced basis of the span of the given vectors."""
    if not vectors:
        return []
    reduced, pivots = rref(vectors, field)
    return reduced[:len(pivots)]


def coordinates(basis: Sequence[Sequence[FieldScalar]], v: Sequence[FieldScalar], field: Field) -> Optional[Vector]:
    """Coefficients c with sum c_i basis_i = v, or None when v is outside the span."""
    if not basis:
        return [] if all(x.is_zero() for x in v) else None
    solution = solve(transpose(basis), v, field, n_cols=len(basis))
    if solution is None:
        return None
    return solution[0]
