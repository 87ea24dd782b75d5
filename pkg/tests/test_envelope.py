import json
import random

import pytest

from superjordan import catalog
from superjordan.algebra import reduce_algebra
from superjordan.envelope import (
    NCPolynomial,
    RewriteSystem,
    clifford_superalgebra,
    format_polynomial,
    k3_witness,
    load_rewrite_system,
    matrix_superalgebra,
    odd_weyl_superalgebra,
    parse_polynomial,
    s13_witness,
    s83_witness,
    search_embedding,
    super_jordan_product,
    tensor,
    universal_envelope_t6,
    ut6_witness,
    verify_special_embedding,
    weyl_algebra,
)
from superjordan.errors import EnvelopeError, RewriteError


def nf(text, system):
    return format_polynomial(parse_polynomial(text, system), system)


def test_weyl_normal_forms():
    w = weyl_algebra()
    assert nf("xi*eta", w) == "1 + eta*xi"
    assert nf("xi*xi*eta", w) == "2*xi + eta*xi*xi"
    assert nf("xi*eta - eta*xi", w) == "1"


def test_clifford_relations():
    cl = clifford_superalgebra(2)
    assert nf("e1*e1", cl) == "1"
    assert nf("e2*e1", cl) == "-e1*e2"
    assert nf("e1*e2*e1*e2", cl) == "-1"


def test_odd_weyl_relations():
    commutator = odd_weyl_superalgebra()
    assert nf("y*x", commutator) == "-1 + x*y"
    anti = odd_weyl_superalgebra(relation="anticommutator")
    assert nf("y*x", anti) == "1 - x*y"
    assert nf("x*x", anti) == "0"
    with pytest.raises(RewriteError):
        odd_weyl_superalgebra(relation="bracket")


def test_matrix_units_multiply_with_signs():
    m = matrix_superalgebra(1, 1, weyl_algebra())
    assert nf("e12*e21", m) == "e11"
    assert nf("e12*e12", m) == "0"
    assert nf("1", m) == "e11 + e22"
    with pytest.raises(EnvelopeError):
        parse_polynomial("e13", m)


def test_tensor_generators_supercommute():
    t = tensor(clifford_superalgebra(1), clifford_superalgebra(1))
    assert t.generators == ("e1", "e1'")
    assert nf("e1'*e1", t) == "-e1*e1'"


def test_non_confluent_rules_are_rejected():
    with pytest.raises(RewriteError):
        RewriteSystem([("a", 0), ("b", 0)], {("b", "a"): {("a", "b"): 2}, ("b", "b"): {("a",): 1}})


def test_rules_must_decrease():
    with pytest.raises(RewriteError):
        RewriteSystem([("a", 0), ("b", 0)], {("a", "b"): {("b", "a"): 1}})


def test_rules_must_keep_parity():
    with pytest.raises(RewriteError):
        RewriteSystem([("a", 0), ("b", 1)], {("b", "a"): {("a",): 1}})


def test_bad_factor_is_reported():
    with pytest.raises(EnvelopeError):
        parse_polynomial("2*zeta", weyl_algebra())


def test_plus_product_of_odd_elements_is_the_anticommutator_half():
    system = odd_weyl_superalgebra()
    x = parse_polynomial("x", system)
    y = parse_polynomial("y", system)
    assert format_polynomial(super_jordan_product(x, y, system), system) == "1/2"
    with pytest.raises(EnvelopeError):
        super_jordan_product(x + parse_polynomial("1", system), y, system)


def test_rewrite_system_from_json(tmp_path):
    path = tmp_path / "weyl.json"
    path.write_text(json.dumps({
        "name": "W1",
        "generators": [{"name": "eta"}, {"name": "xi"}],
        "rules": [{"lhs": "xi*eta", "rhs": "eta*xi + 1"}],
    }), encoding="utf-8")
    loaded = load_rewrite_system(path)
    assert loaded.generators == ("eta", "xi")
    assert nf("xi*eta", loaded) == nf("xi*eta", weyl_algebra())


def test_k3_witness_holds():
    result = k3_witness()
    assert result.report.holds
    assert result.target == "M(1|1;W1)"
    assert "embedding verified" in result.render()


def test_s13_witness_holds():
    assert s13_witness().report.holds


def test_s13_images_as_printed_fail_on_the_odd_pair():
    result = s13_witness({"e1": "e23", "o1": "e13 + 4*e31", "o2": "2*e21"})
    assert not result.report.holds
    assert any(v.where == "(o1,o2)" for v in result.report.violations)


def test_s83_found_in_the_odd_weyl_superalgebra():
    result = s83_witness()
    assert result.report.holds
    assert result.images == {"e1": "1", "o1": "x", "o2": "2*y"}


def test_s83_not_found_with_the_anticommutator_reading():
    result = s83_witness("anticommutator")
    assert not result.report.holds
    assert result.images == {}


def test_search_embeds_two_odd_lines_into_matrices():
    algebra = catalog.get("S1_1+S1_1").algebra
    system = matrix_superalgebra(1, 2)
    found = search_embedding(algebra, system)
    assert found is not None
    assert verify_special_embedding(algebra, found, system).holds


def test_search_is_limited_to_small_algebras():
    with pytest.raises(EnvelopeError):
        search_embedding(catalog.get("KAC10").algebra, matrix_superalgebra(1, 1))


def test_dependent_images_are_not_an_embedding():
    algebra = catalog.get("S1_1+S1_1").algebra
    system = matrix_superalgebra(1, 2)
    images = {label: parse_polynomial(text, system) for label, text in zip(algebra.labels, ["e12", "2*e12"])}
    report = verify_special_embedding(algebra, images, system)
    assert not report.holds
    assert report.violations[-1].indices == ("injective",)


def test_wrong_parity_image_raises():
    k3 = catalog.get("K3").algebra
    system = matrix_superalgebra(1, 1, weyl_algebra())
    images = {"e": parse_polynomial("e11", system), "x": parse_polynomial("e11", system),
              "y": parse_polynomial("e12", system)}
    with pytest.raises(EnvelopeError):
        verify_special_embedding(k3, images, system)


def test_embeddings_are_certified_over_q(gf5):
    k3 = reduce_algebra(catalog.get("K3").algebra, gf5)
    with pytest.raises(EnvelopeError):
        verify_special_embedding(k3, {}, matrix_superalgebra(1, 1, weyl_algebra()))


def test_t6_envelope_is_associative_and_contains_t6():
    assert ut6_witness(graded=False).report.holds


def test_graded_t6_envelope_contains_s3_12():
    envelope = universal_envelope_t6(graded=True)
    assert envelope.type == (4, 1)
    result = ut6_witness(graded=True)
    assert result.report.holds
    assert result.images["o1"] == "e3"


def test_zero_polynomial_has_no_terms():
    assert NCPolynomial({((1, 1), ()): 0}).is_zero()


REWRITE_SYSTEMS = {
    "weyl": weyl_algebra,
    "clifford": lambda: clifford_superalgebra(3),
    "odd-weyl": odd_weyl_superalgebra,
    "odd-weyl-anti": lambda: odd_weyl_superalgebra(relation="anticommutator"),
    "matrix-weyl": lambda: matrix_superalgebra(1, 1, weyl_algebra()),
    "matrix-clifford": lambda: matrix_superalgebra(1, 2, clifford_superalgebra(2)),
}


def random_monomial(system, rng):
    word = tuple(rng.randrange(len(system.generators)) for _ in range(rng.randint(0, 6)))
    unit = rng.choice(system.units()) if system.matrix else None
    return NCPolynomial.monomial(unit, word, rng.randint(-3, 3) or 1)


@pytest.mark.parametrize("name", sorted(REWRITE_SYSTEMS))
def test_normal_form_is_idempotent_and_keeps_parity(name):
    system = REWRITE_SYSTEMS[name]()
    rng = random.Random(name)
    for _ in range(40):
        p = random_monomial(system, rng)
        (key,) = p.terms
        reduced = system.normal_form(p)
        assert system.normal_form(reduced) == reduced
        assert all(system.is_normal_word(word) for _, word in reduced.terms)
        if not reduced.is_zero():
            assert system.parity(reduced) == system.monomial_parity(key)


@pytest.mark.parametrize("name", sorted(REWRITE_SYSTEMS))
def test_products_of_random_words_have_additive_parity(name):
    system = REWRITE_SYSTEMS[name]()
    rng = random.Random(f"{name}-product")
    for _ in range(20):
        p, q = random_monomial(system, rng), random_monomial(system, rng)
        product = system.multiply(p, q)
        assert system.normal_form(product) == product
        if not product.is_zero():
            assert system.parity(product) == (system.parity(p) + system.parity(q)) % 2
