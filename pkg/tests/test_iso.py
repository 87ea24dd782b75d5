import itertools
import random

import pytest

from superjordan import catalog
from superjordan.algebra import parse_element, reduce_algebra
from superjordan.errors import IsomorphismError
from superjordan.iso import (
    GradedMap,
    apply_basis_change,
    find_graded_isomorphism,
    fingerprint,
    fingerprint_diff,
    random_graded_map,
    verify_homomorphism,
)


def test_identity_map_is_an_automorphism(gf5):
    s37 = reduce_algebra(catalog.get("S3_7").algebra, gf5)
    f = GradedMap.identity(s37)
    assert f.is_invertible()
    assert verify_homomorphism(f, isomorphism=True).holds
    x = parse_element(s37, "2*e1 + o2")
    assert f.apply(x) == x


def test_compose_with_inverse_gives_identity(gf5):
    s37 = reduce_algebra(catalog.get("S3_7").algebra, gf5)
    f = random_graded_map(s37, random.Random(11))
    assert f.compose(f.inverse()) == GradedMap.identity(s37)
    assert f.inverse().compose(f) == GradedMap.identity(s37)


def test_singular_map_has_no_inverse(gf5):
    s37 = reduce_algebra(catalog.get("S3_7").algebra, gf5)
    f = GradedMap(s37, s37, [[1]], [[1, 0], [2, 0]])
    assert not f.is_invertible()
    with pytest.raises(IsomorphismError):
        f.inverse()


def test_block_shapes_are_checked(gf5):
    s37 = reduce_algebra(catalog.get("S3_7").algebra, gf5)
    with pytest.raises(IsomorphismError):
        GradedMap(s37, s37, [[1, 0]], [[1, 0], [0, 1]])


def test_basis_change_carries_its_own_isomorphism(gf5):
    s37 = reduce_algebra(catalog.get("S3_7").algebra, gf5)
    g = random_graded_map(s37, random.Random(3))
    changed = apply_basis_change(s37, g)
    assert verify_homomorphism(GradedMap(changed, s37, g.even_block, g.odd_block), isomorphism=True).holds


@pytest.mark.parametrize("name", ["S3_7", "S3_13", "S3_1", "K3"])
def test_search_recovers_random_basis_change(gf5, name):
    algebra = reduce_algebra(catalog.get(name).algebra, gf5)
    changed = apply_basis_change(algebra, random_graded_map(algebra, random.Random(name)))
    assert fingerprint(changed) == fingerprint(algebra)
    found = find_graded_isomorphism(changed, algebra)
    assert found is not None
    assert verify_homomorphism(found, isomorphism=True).holds


def test_parallel_search_finds_the_same_map(gf5):
    algebra = reduce_algebra(catalog.get("S3_13").algebra, gf5)
    changed = apply_basis_change(algebra, random_graded_map(algebra, random.Random(5)))
    assert find_graded_isomorphism(changed, algebra, workers=3) == find_graded_isomorphism(changed, algebra, workers=1)


def test_fingerprints_separate_s3_9_from_s3_12(gf5):
    a = reduce_algebra(catalog.get("S3_9").algebra, gf5)
    b = reduce_algebra(catalog.get("S3_12").algebra, gf5)
    assert find_graded_isomorphism(a, b) is None
    diff = fingerprint_diff(fingerprint(a), fingerprint(b))
    assert diff
    assert any(line.startswith("even_part.") for line in diff)


def test_different_types_are_never_isomorphic(gf5):
    a = reduce_algebra(catalog.get("S3_9").algebra, gf5)
    b = reduce_algebra(catalog.get("S3_7").algebra, gf5)
    assert find_graded_isomorphism(a, b) is None


def test_search_refuses_infinite_fields():
    s37 = catalog.get("S3_7").algebra
    with pytest.raises(IsomorphismError):
        find_graded_isomorphism(s37, s37)


def test_search_refuses_mixed_fields(gf5):
    s37 = catalog.get("S3_7").algebra
    with pytest.raises(IsomorphismError):
        find_graded_isomorphism(reduce_algebra(s37, gf5), s37)


def test_search_refuses_large_blocks(gf5):
    kac = reduce_algebra(catalog.get("KAC10").algebra, gf5)
    with pytest.raises(IsomorphismError):
        find_graded_isomorphism(kac, kac)


def test_distinct_dimension_three_entries_are_not_isomorphic(gf5):
    algebras = [(e.name, reduce_algebra(e.algebra, gf5)) for e in catalog.all_of_dimension(3)]
    for (name_a, a), (name_b, b) in itertools.combinations(algebras, 2):
        assert find_graded_isomorphism(a, b) is None, f"{name_a} ~ {name_b}"
