import pytest

from superjordan import catalog
from superjordan.algebra import SuperAlgebra, change_basis, forget_grading, parse_element
from superjordan.errors import CatalogError
from superjordan.exactfield import PrimeField
from superjordan.linalg import coordinates
from superjordan.peirce import peirce_decompose, refined_peirce
from superjordan.utils import render_table


def test_dimension_lists():
    assert [len(catalog.all_of_dimension(d)) for d in (1, 2, 3)] == [3, 11, 48]
    with pytest.raises(CatalogError):
        catalog.all_of_dimension(4)


def test_dimension_three_entries_are_distinct_tables():
    algebras = [e.algebra for e in catalog.all_of_dimension(3)]
    assert all(a.dim == 3 for a in algebras)
    assert len(set(algebras)) == len(algebras)


def test_unknown_name():
    with pytest.raises(CatalogError):
        catalog.get("NOPE")


def test_named_entries():
    assert catalog.get("KAC10").type == (6, 4)
    assert catalog.shestakov7().type == (3, 4)
    assert catalog.get("SHESTAKOV7").algebra.labels == ("e1", "n1", "n2", "o1", "o2", "o3", "o4")
    assert catalog.get("K3").algebra.constants == catalog.get("S3_7").algebra.constants
    assert catalog.get("K3").has("simple")
    assert catalog.get("S3_8").has("unital")
    assert catalog.get("U1s+U1s").has("decomposable")
    assert catalog.get("U1s+U1s").has("trivial-grading")
    assert catalog.get("B1s+S1_1").underlying_algebra == "B1+U2"


def test_correspondences_recover_the_underlying_table():
    for entry in catalog.entries():
        if not entry.correspondence:
            continue
        ungraded = forget_grading(entry.algebra)
        rows = [list(parse_element(ungraded, text).coords) for text in entry.correspondence]
        rebuilt = change_basis(ungraded, rows, dim_even=ungraded.dim)
        base = catalog.get(entry.underlying_algebra).algebra
        assert rebuilt == base, entry.name


def test_peirce_annotations_are_reproduced():
    checked = 0
    for entry in catalog.entries():
        for idem, expected in entry.peirce_annotations.items():
            e = parse_element(entry.algebra, idem)
            decomposition = peirce_decompose(entry.algebra, e)
            found = sorted(key for key, n in decomposition.odd_dimensions().items() for _ in range(n))
            assert found == sorted(expected), entry.name
            checked += 1
    assert checked == 14


def test_refined_annotations_are_reproduced():
    for entry in catalog.entries():
        if not entry.refined_annotations:
            continue
        es = [parse_element(entry.algebra, text) for text in entry.refined_idempotents]
        refined = refined_peirce(entry.algebra, es)
        for label, key in entry.refined_annotations.items():
            basis = [list(v.coords) for v in refined.components[key]]
            target = list(entry.algebra.basis_element(label).coords)
            assert coordinates(basis, target, entry.algebra.field) is not None, entry.name


def test_get_algebra_reduces_into_a_prime_field():
    a = catalog.get_algebra("S3_7", PrimeField(5))
    assert a.field == PrimeField(5)
    assert a.constants[0][1][1] == 3


def test_even_algebra_builds_ungraded_sums():
    a = catalog.even_algebra("U1+U2")
    assert isinstance(a, SuperAlgebra)
    assert a.type == (2, 0)
    with pytest.raises(CatalogError):
        catalog.even_algebra("U7")


def test_render_table_shows_s3_13_products():
    text = render_table(catalog.get("S3_13").algebra)
    assert text.splitlines()[0].startswith("S3_13  type (2,1)")
    row = next(line for line in text.splitlines() if line.startswith("e2 "))
    assert "1/2*o1" in row


def test_summary_line():
    assert catalog.get("S3_9").summary().startswith("S3_9")
