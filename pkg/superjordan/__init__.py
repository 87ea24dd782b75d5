"""
superjordan - an exact-arithmetic workbench for low-dimensional Jordan superalgebras.

Checks the super Jordan identity on structure-constant tables, computes Peirce
decompositions, carries a catalog of the small algebras and superalgebras,
decides graded isomorphism over finite fields, regenerates classifications
from templates and certifies speciality through explicit embeddings.
"""

from .algebra import (
    Element,
    SuperAlgebra,
    check_jordan_ungraded,
    check_super_jordan,
    check_supercommutativity,
    direct_sum,
    jordan_defect,
    parse_element,
)
from .catalog import get, get_algebra, names
from .classify import build_template, classify, enumerate_solutions, generate_constraints, orbit_partition
from .envelope import (
    RewriteSystem,
    k3_witness,
    s13_witness,
    s83_witness,
    search_embedding,
    super_jordan_product,
    ut6_witness,
    verify_associative_envelope_table,
    verify_special_embedding,
)
from .exactfield import RATIONALS, PrimeField, QuadraticField, make_field
from .iso import GradedMap, find_graded_isomorphism, fingerprint
from .peirce import find_idempotents, peirce_decompose, refined_peirce
from .scafile import load_sca, save_sca

__version__ = "0.1.0"
__author__ = "Unclecode"
__license__ = "Apache-2.0"
__description__ = "Exact computations with Jordan superalgebras of small dimension."
__all__ = [
    "Element",
    "SuperAlgebra",
    "check_jordan_ungraded",
    "check_super_jordan",
    "check_supercommutativity",
    "direct_sum",
    "jordan_defect",
    "parse_element",
    "get",
    "get_algebra",
    "names",
    "build_template",
    "classify",
    "enumerate_solutions",
    "generate_constraints",
    "orbit_partition",
    "RewriteSystem",
    "k3_witness",
    "s13_witness",
    "s83_witness",
    "search_embedding",
    "super_jordan_product",
    "ut6_witness",
    "verify_associative_envelope_table",
    "verify_special_embedding",
    "RATIONALS",
    "PrimeField",
    "QuadraticField",
    "make_field",
    "GradedMap",
    "find_graded_isomorphism",
    "fingerprint",
    "find_idempotents",
    "peirce_decompose",
    "refined_peirce",
    "load_sca",
    "save_sca",
]
