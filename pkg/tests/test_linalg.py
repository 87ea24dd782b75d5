from superjordan.exactfield import RATIONALS, PrimeField
from superjordan.linalg import (
    coordinates,
    determinant,
    identity,
    inverse,
    mat_mul,
    nullspace,
    rank,
    rref,
    solve,
    span_basis,
)

Q = RATIONALS


def q(rows):
    return [[Q.coerce(x) for x in row] for row in rows]


def test_rref_and_rank():
    m = q([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    reduced, pivots = rref(m, Q)
    assert pivots == [0, 1]
    assert rank(m, Q) == 2
    assert reduced[2] == [0, 0, 0]


def test_nullspace_vectors_are_killed():
    m = q([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    kernel = nullspace(m, Q)
    assert len(kernel) == 1
    for row in m:
        assert sum((a * b for a, b in zip(row, kernel[0])), Q.zero) == 0


def test_nullspace_of_empty_system_is_everything():
    assert nullspace([], Q, 2) == identity(2, Q)


def test_solve_returns_particular_solution_and_kernel():
    m = q([[1, 1], [2, 2]])
    x, kernel = solve(m, q([[3, 6]])[0], Q)
    assert x[0] + x[1] == 3
    assert len(kernel) == 1
    assert solve(m, q([[3, 7]])[0], Q) is None


def test_determinant_and_inverse():
    m = q([[2, 1], [1, 1]])
    assert determinant(m, Q) == 1
    assert mat_mul(m, inverse(m, Q), Q) == identity(2, Q)
    assert inverse(q([[1, 2], [2, 4]]), Q) is None


def test_inverse_over_prime_field():
    gf = PrimeField(5)
    m = [[gf.coerce(x) for x in row] for row in [[1, 2], [3, 4]]]
    assert determinant(m, gf) == -2
    assert mat_mul(m, inverse(m, gf), gf) == identity(2, gf)


def test_span_basis_and_coordinates():
    vectors = q([[1, 0, 1], [0, 1, 1], [1, 1, 2]])
    basis = span_basis(vectors, Q)
    assert len(basis) == 2
    coeffs = coordinates(basis, q([[2, 3, 5]])[0], Q)
    assert coeffs is not None
    assert coordinates(basis, q([[0, 0, 1]])[0], Q) is None
