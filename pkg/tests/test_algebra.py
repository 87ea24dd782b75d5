import random

import pytest

from superjordan import catalog
from superjordan.algebra import (
    SuperAlgebra,
    annihilator_dimension,
    build_superform,
    change_basis,
    check_jordan_ungraded,
    check_super_jordan,
    check_supercommutativity,
    direct_sum,
    even_part,
    find_unit,
    forget_grading,
    is_associative,
    is_nilpotent,
    jordan_defect,
    multiply,
    odd_square_dimension,
    parse_element,
    reduce_algebra,
    split_by_involution,
    square_dimension,
)
from superjordan.errors import AlgebraError, GradingError
from superjordan.exactfield import RATIONALS, PrimeField

Q = RATIONALS


def test_grading_closure_is_enforced():
    with pytest.raises(GradingError):
        SuperAlgebra.from_products(1, 1, Q, {("e1", "e1"): {"o1": 1}})


def test_labels_must_be_distinct():
    with pytest.raises(AlgebraError):
        SuperAlgebra(2, 0, Q, labels=["a", "a"])


def test_from_products_completes_by_supercommutativity():
    a = SuperAlgebra.from_products(1, 2, Q, {("e1", "o1"): {"o2": 1}, ("o1", "o2"): {"e1": 1}})
    o1, o2, e1 = a.basis_element("o1"), a.basis_element("o2"), a.basis_element("e1")
    assert o2 * o1 == -e1
    assert o1 * e1 == o2
    assert check_supercommutativity(a).holds


def test_element_arithmetic_and_parity(k3):
    e, x, y = k3.basis()
    assert (x * y) == e
    assert (e * x) == x * Q.half()
    assert (e + x).parity() is None
    assert x.parity() == 1
    assert k3.zero_element().parity() == 0
    assert str(e + x * Q.half()) == "e + 1/2*x"


def test_parse_element():
    a = catalog.get("S3_13").algebra
    v = parse_element(a, "e1 + e2 - 1/2*o1")
    assert v.coords == (1, 1, Q.parse("-1/2"))
    with pytest.raises(AlgebraError):
        parse_element(a, "e7")


def test_every_small_catalog_entry_is_a_jordan_superalgebra():
    entries = [e for e in catalog.entries() if e.dim <= 3] + [catalog.get("KAC10"), catalog.get("SHESTAKOV7")]
    for entry in entries:
        assert check_supercommutativity(entry.algebra).holds, entry.name
        assert check_super_jordan(entry.algebra).holds, entry.name


def test_ungraded_identity_holds_exactly_when_odd_square_vanishes():
    for entry in catalog.entries():
        if entry.dim > 3:
            continue
        algebra = entry.algebra
        ungraded = check_jordan_ungraded(forget_grading(algebra)).holds
        assert ungraded == (odd_square_dimension(algebra) == 0), entry.name


def test_kaplansky_counterexample(k3):
    e, x, y = k3.basis()
    a = e + x
    assert jordan_defect(a, y) == a


def test_corrupted_table_reports_violations():
    s37 = catalog.get("S3_7").algebra
    bad = SuperAlgebra.from_products(1, 2, Q, {("e1", "e1"): {"e1": 1}, ("e1", "o1"): {"o1": "1/2"},
                                              ("e1", "o2"): {"o2": "1/2"}, ("o1", "o2"): {"e1": 2}},
                                     labels=s37.labels)
    report = check_super_jordan(bad)
    assert not report.holds
    assert all(len(v.indices) == 4 for v in report.violations)


def test_noncommutative_input_is_flagged():
    a = SuperAlgebra.from_products(2, 0, Q, {("e1", "e2"): {"e1": 1}}, complete=False)
    assert not check_supercommutativity(a).holds
    assert check_super_jordan(a).notes


def test_exhaustive_ungraded_check_over_gf3_carries_banner():
    a = reduce_algebra(catalog.get("U1").algebra, PrimeField(3))
    report = check_jordan_ungraded(a, exhaustive=True)
    assert report.holds
    assert report.notes


def test_invariants_of_b2_and_b1():
    b1 = catalog.get("B1").algebra
    assert is_associative(b1)
    assert find_unit(b1) is not None
    assert find_unit(catalog.get("B2").algebra) is None
    assert is_nilpotent(catalog.get("U2").algebra)
    assert not is_nilpotent(catalog.get("U1").algebra)
    assert square_dimension(catalog.get("U2").algebra) == 0
    assert annihilator_dimension(catalog.get("U2").algebra) == 1


def test_change_basis_rewrites_the_table():
    s31 = catalog.get("S3_1").algebra
    swapped = change_basis(s31, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    o1, o2, e1 = swapped.basis_element(1), swapped.basis_element(2), swapped.basis_element(0)
    assert e1 * o2 == o1
    assert o2 * o1 == e1
    with pytest.raises(AlgebraError):
        change_basis(s31, [[1, 0, 0], [0, 1, 0], [0, 1, 0]])


def test_direct_sum_places_even_parts_first():
    s = direct_sum(catalog.get("S1_2").algebra, catalog.get("U1").algebra)
    assert s.type == (2, 1)
    assert s.name == "S1_2+U1"
    assert check_super_jordan(s).holds
    single = catalog.get("U1").algebra
    assert direct_sum(single) is single


@pytest.mark.parametrize("left, right", [
    ("S1_2", "U1"),
    ("S3_7", "B1"),
    ("K3", "S3_13"),
    ("S2_2", "S1_1"),
    ("T5", "S3_8"),
])
def test_direct_sum_of_superalgebras_is_a_superalgebra(left, right):
    a, b = catalog.get(left).algebra, catalog.get(right).algebra
    s = direct_sum(a, b)
    assert check_super_jordan(s).holds
    n = s.dim_even
    first = list(range(a.dim_even)) + [n + i for i in range(a.dim_odd)]
    second = [i for i in range(s.dim) if i not in first]
    for i in first:
        for j in second:
            assert (s.basis_element(i) * s.basis_element(j)).is_zero(), (s.labels[i], s.labels[j])
            assert (s.basis_element(j) * s.basis_element(i)).is_zero(), (s.labels[j], s.labels[i])


def test_even_part_of_kac10():
    even = even_part(catalog.get("KAC10").algebra)
    assert even.type == (6, 0)
    assert check_jordan_ungraded(even).holds


def test_split_by_involution_recovers_s2_2_from_b1():
    b1 = catalog.get("B1").algebra
    # fixes the unit and negates e2
    phi = [[1, 0], [0, -1]]
    graded = split_by_involution(b1, phi)
    assert graded.type == (1, 1)
    assert check_super_jordan(graded).holds
    with pytest.raises(AlgebraError):
        split_by_involution(b1, [[1, 0], [0, 2]])


def test_superform_algebra_matches_s3_8():
    j = build_superform(0, 2, [[0, 1], [-1, 0]])
    assert j == catalog.get("S3_8").algebra
    with pytest.raises(AlgebraError):
        build_superform(0, 2, [[0, 1], [1, 0]])


def random_element(algebra, rng):
    field = algebra.field
    return algebra.element([field.coerce(rng.randint(-6, 6)) / field.coerce(rng.randint(1, 4))
                            for _ in range(algebra.dim)])


@pytest.mark.parametrize("name", ["S3_7", "S3_13", "K3", "T5", "SHESTAKOV7", "KAC10"])
@pytest.mark.parametrize("field", [Q, PrimeField(7)], ids=["Q", "GF7"])
def test_multiply_is_bilinear(name, field):
    algebra = reduce_algebra(catalog.get(name).algebra, field)
    rng = random.Random(f"{name}-{field}")
    for _ in range(10):
        a, b, c = (random_element(algebra, rng) for _ in range(3))
        alpha = field.coerce(rng.randint(-9, 9))
        assert multiply(a * alpha + b, c) == multiply(a, c) * alpha + multiply(b, c)
        assert multiply(c, a * alpha + b) == multiply(c, a) * alpha + multiply(c, b)


@pytest.mark.parametrize("name", ["S1_2", "S3_1", "S3_7", "S3_13", "K3", "SHESTAKOV7", "KAC10"])
def test_splitting_by_the_grading_involution_gives_the_algebra_back(name):
    algebra = catalog.get(name).algebra
    phi = [[(1 if i < algebra.dim_even else -1) if i == j else 0 for j in range(algebra.dim)]
           for i in range(algebra.dim)]
    graded = split_by_involution(algebra, phi)
    assert graded == algebra
    assert list(graded.labels) == list(algebra.labels)


def test_split_t6_by_negating_e3_gives_s3_12():
    t6 = catalog.get("T6").algebra
    graded = split_by_involution(t6, [[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    assert graded.type == (2, 1)
    assert graded == catalog.get("S3_12").algebra
    assert check_super_jordan(graded).holds


def test_split_t1_by_negating_e2():
    t1 = catalog.get("T1").algebra
    graded = split_by_involution(t1, [[1, 0, 0], [0, -1, 0], [0, 0, 1]])
    assert graded.type == (2, 1)
    assert list(graded.labels) == ["e1", "e3", "e2"]
    e1, e3, e2 = graded.basis()
    assert e2 * e2 == e3
    assert e1 * e2 == e2
    # e2 squares to a nonzero even element, so the graded T1 is not supercommutative
    assert not check_supercommutativity(graded).holds


def test_identity_involution_gives_the_trivial_grading():
    b1 = catalog.get("B1").algebra
    graded = split_by_involution(b1, [[1, 0], [0, 1]])
    assert graded.type == (2, 0)
    assert graded == b1
