"""
Catalog of the tabulated Jordan algebras and superalgebras of dimension at
most 3, the Kaplansky superalgebra, the 10-dimensional Kac superalgebra and
the 7-dimensional exceptional superalgebra with even part T7.

Tables are written in the same "left*right=result" syntax that
SuperAlgebra.products_text prints; omitted transposes follow
supercommutativity.
"""

from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .algebra import SuperAlgebra, default_labels, direct_sum, parse_element, reduce_algebra
from .errors import CatalogError
from .exactfield import RATIONALS, Field as ScalarField
from .logger import get_logger

logger = get_logger(__name__)

TAGS = ("associative", "unital", "simple", "trivial-grading", "decomposable")


class CatalogEntry(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    algebra: Any = Field(..., exclude=True, description="SuperAlgebra over Q")
    annotations: List[str] = Field(default_factory=list, description="Subset of TAGS")
    underlying_algebra: Optional[str] = Field(None, description="Ungraded Jordan algebra obtained by forgetting the grading")
    correspondence: Optional[List[str]] = Field(
        None, description="Images of the underlying algebra's basis, written in this entry's labels")
    source: str = ""
    peirce_annotations: Dict[str, List[str]] = Field(
        default_factory=dict, description="Idempotent -> sorted Peirce components of the odd basis")
    refined_idempotents: List[str] = Field(default_factory=list)
    refined_annotations: Dict[str, Tuple[int, int]] = Field(
        default_factory=dict, description="Odd basis label -> refined component P_ij")

    @property
    def type(self) -> Tuple[int, int]:
        return self.algebra.type

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def has(self, tag: str) -> bool:
        return tag in self.annotations

    def summary(self) -> str:
        n, m = self.type
        tags = ", ".join(self.annotations) or "-"
        under = f"  underlying {self.underlying_algebra}" if self.underlying_algebra else ""
        return f"{self.name:<16} ({n},{m})  [{tags}]{under}"


def table(name: str, dim_even: int, dim_odd: int, text: str, labels: Optional[Sequence[str]] = None) -> SuperAlgebra:
    """Build a rational algebra from "l*r=expr" tokens separated by whitespace."""
    labels = list(labels) if labels else default_labels(dim_even, dim_odd)
    scratch = SuperAlgebra(dim_even, dim_odd, RATIONALS, labels=labels)
    products: Dict[Tuple[str, str], Dict[str, Any]] = {}
    for token in text.split():
        lhs, rhs = token.split("=")
        left, right = lhs.split("*")
        value = parse_element(scratch, rhs)
        products[(left, right)] = {labels[k]: c for k, c in value.sparse().items()}
    return SuperAlgebra.from_products(dim_even, dim_odd, RATIONALS, products, labels=labels, name=name)


# Indecomposable Jordan algebras of dimension <= 3
JORDAN_ALGEBRAS = {
    "U1": (1, "e1*e1=e1"),
    "U2": (1, ""),
    "B1": (2, "e1*e1=e1 e1*e2=e2"),
    "B2": (2, "e1*e1=e1 e1*e2=1/2*e2"),
    "B3": (2, "e1*e1=e2"),
    "T1": (3, "e1*e1=e1 e2*e2=e3 e1*e2=e2 e1*e3=e3"),
    "T2": (3, "e1*e1=e1 e1*e2=e2 e1*e3=e3"),
    "T3": (3, "e1*e1=e2 e1*e2=e3"),
    "T4": (3, "e1*e1=e2 e1*e3=e2"),
    "T5": (3, "e1*e1=e1 e2*e2=e2 e3*e3=e1+e2 e1*e3=1/2*e3 e2*e3=1/2*e3"),
    "T6": (3, "e1*e1=e1 e1*e2=1/2*e2 e1*e3=e3"),
    "T7": (3, "e1*e1=e1 e1*e2=1/2*e2 e1*e3=1/2*e3"),
    "T8": (3, "e1*e1=e1 e2*e2=e3 e1*e2=1/2*e2"),
    "T9": (3, "e1*e1=e1 e2*e2=e3 e1*e2=1/2*e2 e1*e3=e3"),
    "T10": (3, "e1*e1=e1 e2*e2=e2 e1*e3=1/2*e3 e2*e3=1/2*e3"),
}

# Indecomposable superalgebras with nonzero odd part: (n, m, products)
SUPERALGEBRAS = {
    "S1_1": (0, 1, ""),
    "S1_2": (1, 1, "e1*e1=e1 e1*o1=1/2*o1"),
    "S2_2": (1, 1, "e1*e1=e1 e1*o1=o1"),
    "S3_1": (1, 2, "e1*o1=o2 o1*o2=e1"),
    "S3_2": (1, 2, "o1*o2=e1"),
    "S3_3": (1, 2, "e1*o1=o2"),
    "S3_4": (1, 2, "e1*e1=e1 e1*o1=o1 e1*o2=1/2*o2"),
    "S3_5": (1, 2, "e1*e1=e1 e1*o1=1/2*o1 e1*o2=1/2*o2"),
    "S3_6": (1, 2, "e1*e1=e1 e1*o1=o1 e1*o2=o2"),
    "S3_7": (1, 2, "e1*e1=e1 e1*o1=1/2*o1 e1*o2=1/2*o2 o1*o2=e1"),
    "S3_8": (1, 2, "e1*e1=e1 e1*o1=o1 e1*o2=o2 o1*o2=e1"),
    "S3_9": (2, 1, "e1*e1=e1 e1*e2=e2 e1*o1=1/2*o1"),
    "S3_10": (2, 1, "e1*e1=e1 e1*e2=e2 e1*o1=o1"),
    "S3_11": (2, 1, "e1*e1=e1 e1*e2=1/2*e2 e1*o1=1/2*o1"),
    "S3_12": (2, 1, "e1*e1=e1 e1*e2=1/2*e2 e1*o1=o1"),
    "S3_13": (2, 1, "e1*e1=e1 e2*e2=e2 e1*o1=1/2*o1 e2*o1=1/2*o1"),
}

KAC10_LABELS = ["a1", "a2", "a3", "a4", "a5", "a6", "xi1", "xi2", "xi3", "xi4"]
KAC10_PRODUCTS = " ".join(
    [f"a1*a{i}=a{i}" for i in range(1, 6)]
    + [f"a1*xi{i}=1/2*xi{i}" for i in range(1, 5)]
    + ["a2*a3=a1", "a2*xi3=xi1", "a2*xi4=xi2", "a3*xi1=1/2*xi3", "a3*xi2=1/2*xi4",
       "a4*a5=a1", "a4*xi2=xi1", "a4*xi4=xi3", "a5*xi1=1/2*xi2", "a5*xi3=1/2*xi4",
       "a6*a6=a6"]
    + [f"a6*xi{i}=1/2*xi{i}" for i in range(1, 5)]
    + ["xi1*xi2=a2", "xi1*xi3=a4", "xi1*xi4=a1+a6", "xi2*xi3=a1+a6", "xi2*xi4=a5", "xi3*xi4=a3"]
)

SHESTAKOV7_LABELS = ["e1", "n1", "n2", "o1", "o2", "o3", "o4"]
SHESTAKOV7_PRODUCTS = ("e1*e1=e1 e1*n1=1/2*n1 e1*n2=1/2*n2 "
                       "e1*o2=1/2*o2 e1*o3=1/2*o3 n1*o1=o2 n1*o3=o4 n2*o1=o3 n2*o2=-o4 o1*o2=n2")

# Names whose trivially graded copies carry these tags
ASSOCIATIVE = {"U1", "U2", "B1", "B3", "T1", "T2", "T3", "T4",
               "S1_1", "S2_2", "S3_2", "S3_3", "S3_6", "S3_10"}
UNITAL = {"U1", "B1", "T1", "T2", "T5", "T10", "S2_2", "S3_6", "S3_8", "S3_10", "S3_13", "KAC10"}
SIMPLE = {"U1", "S3_7", "K3", "S3_8", "KAC10"}

# entry -> (underlying ungraded Jordan algebra, images of its basis)
CORRESPONDENCES = {
    "S1_2": ("B2", ["e1", "o1"]),
    "S2_2": ("B1", ["e1", "o1"]),
    "S3_3": ("T4", ["1/2*e1+o1", "o2", "e1"]),
    "S3_4": ("T6", ["e1", "o2", "o1"]),
    "S3_5": ("T7", ["e1", "o1", "o2"]),
    "S3_6": ("T2", ["e1", "o1", "o2"]),
    "S3_9": ("T6", ["e1", "o1", "e2"]),
    "S3_10": ("T2", ["e1", "e2", "o1"]),
    "S3_11": ("T7", ["e1", "e2", "o1"]),
    "S3_12": ("T6", ["e1", "e2", "o1"]),
    "S3_13": ("T10", ["e1", "e2", "o1"]),
}

PEIRCE_ANNOTATIONS = {
    "S1_2+S1_1": {"e1": ["0", "1/2"]},
    "S2_2+S1_1": {"e1": ["0", "1"]},
    "U1s+S1_1+S1_1": {"e1": ["0", "0"]},
    "S3_4": {"e1": ["1", "1/2"]},
    "S3_5": {"e1": ["1/2", "1/2"]},
    "S3_6": {"e1": ["1", "1"]},
    "S3_7": {"e1": ["1/2", "1/2"]},
    "S3_8": {"e1": ["1", "1"]},
    "B1s+S1_1": {"e1": ["0"]},
    "S3_9": {"e1": ["1/2"]},
    "S3_10": {"e1": ["1"]},
    "B2s+S1_1": {"e1": ["0"]},
    "S3_11": {"e1": ["1/2"]},
    "S3_12": {"e1": ["1"]},
}

REFINED_ANNOTATIONS = {
    "S3_13": {"o1": (1, 2)},
    "U1s+U1s+S1_1": {"o1": (0, 0)},
    "S1_2+U1s": {"o1": (0, 1)},
    "S2_2+U1s": {"o1": (1, 1)},
}

DIMENSION_LISTS = {
    1: ["U1s", "U2s", "S1_1"],
    2: ["S2_2", "B1s", "S1_2", "B2s", "B3s",
        "U1s+U1s", "U1s+S1_1", "U1s+U2s", "S1_1+S1_1", "U2s+S1_1", "U2s+U2s"],
    3: ["T1s", "S3_6", "S3_10", "T2s", "T3s", "S3_3", "T4s", "T5s",
        "S3_4", "S3_12", "S3_9", "T6s", "S3_5", "S3_11", "T7s", "T8s", "T9s", "S3_13", "T10s",
        "S2_2+U1s", "B1s+U1s", "S2_2+S1_1", "S2_2+U2s", "B1s+S1_1", "B1s+U2s",
        "S1_2+U1s", "B2s+U1s", "S1_2+S1_1", "S1_2+U2s", "B2s+S1_1", "B2s+U2s",
        "B3s+U1s", "B3s+S1_1", "B3s+U2s",
        "U1s+U1s+U1s", "U1s+U1s+S1_1", "U1s+U1s+U2s",
        "U1s+S1_1+S1_1", "U1s+U2s+S1_1", "U1s+U2s+U2s",
        "S1_1+S1_1+S1_1", "U2s+S1_1+S1_1", "U2s+U2s+S1_1", "U2s+U2s+U2s",
        "S3_1", "S3_2", "S3_7", "S3_8"],
}


def _base_name(part: str) -> str:
    return part[:-1] if part.endswith("s") else part


def _tags(name: str, trivial: bool = False) -> List[str]:
    tags = []
    if name in ASSOCIATIVE:
        tags.append("associative")
    if name in UNITAL:
        tags.append("unital")
    if name in SIMPLE:
        tags.append("simple")
    if trivial:
        tags.append("trivial-grading")
    return tags


def _entry(name: str, algebra: SuperAlgebra, tags: List[str], source: str, **extra) -> CatalogEntry:
    under = CORRESPONDENCES.get(name)
    if under and "underlying_algebra" not in extra:
        extra["underlying_algebra"], extra["correspondence"] = under
    peirce = PEIRCE_ANNOTATIONS.get(name, {})
    refined = REFINED_ANNOTATIONS.get(name, {})
    return CatalogEntry(name=name, algebra=algebra, annotations=tags, source=source,
                        peirce_annotations=peirce,
                        refined_idempotents=["e1", "e2"] if refined else [],
                        refined_annotations=refined, **extra)


def _sum_entry(name: str, registry: Dict[str, CatalogEntry]) -> CatalogEntry:
    parts = name.split("+")
    summands = [registry[p] for p in parts]
    algebra = direct_sum(*(s.algebra for s in summands), name=name)
    tags = []
    if all(s.has("associative") for s in summands):
        tags.append("associative")
    if all(s.has("unital") for s in summands):
        tags.append("unital")
    if all(s.algebra.dim_odd == 0 for s in summands):
        tags.append("trivial-grading")
    tags.append("decomposable")
    underlying = []
    for s in summands:
        base = s.underlying_algebra or _base_name(s.name)
        underlying.append("U2" if s.name == "S1_1" else base)
    return _entry(name, algebra, tags, "decomposable direct sum", underlying_algebra="+".join(underlying))


@lru_cache(maxsize=None)
def _registry() -> Dict[str, CatalogEntry]:
    registry: Dict[str, CatalogEntry] = {}
    for name, (d, text) in JORDAN_ALGEBRAS.items():
        algebra = table(name, d, 0, text)
        registry[name] = _entry(name, algebra, _tags(name), "indecomposable Jordan algebra of dimension <= 3")
        graded = SuperAlgebra(d, 0, RATIONALS, algebra.constants, algebra.labels, name=f"{name}s")
        registry[f"{name}s"] = _entry(f"{name}s", graded, _tags(name, trivial=True), "trivial grading",
                                      underlying_algebra=name, correspondence=list(algebra.labels))
    for name, (n, m, text) in SUPERALGEBRAS.items():
        registry[name] = _entry(name, table(name, n, m, text), _tags(name),
                                "Jordan superalgebra of dimension <= 3")
    k3 = registry["S3_7"].algebra
    registry["K3"] = _entry("K3", SuperAlgebra(1, 2, RATIONALS, k3.constants, ["e", "x", "y"], name="K3"),
                            _tags("K3"), "Kaplansky superalgebra, same table as S3_7")
    registry["KAC10"] = _entry("KAC10", table("KAC10", 6, 4, KAC10_PRODUCTS, KAC10_LABELS), _tags("KAC10"),
                               "10-dimensional Kac superalgebra")
    registry["SHESTAKOV7"] = _entry("SHESTAKOV7", table("SHESTAKOV7", 3, 4, SHESTAKOV7_PRODUCTS, SHESTAKOV7_LABELS),
                                    [], "7-dimensional exceptional superalgebra with even part T7",
                                    underlying_algebra=None)
    for d in (2, 3):
        for name in DIMENSION_LISTS[d]:
            if "+" in name and name not in registry:
                registry[name] = _sum_entry(name, registry)
    return registry


def names() -> List[str]:
    return list(_registry())


def entries() -> List[CatalogEntry]:
    return list(_registry().values())


def get(name: str) -> CatalogEntry:
    try:
        return _registry()[name]
    except KeyError:
        raise CatalogError(f"unknown catalog entry {name!r}") from None


def get_algebra(name: str, field: ScalarField = RATIONALS) -> SuperAlgebra:
    """The entry's table with constants reduced into `field`."""
    return reduce_algebra(get(name).algebra, field)


def all_of_dimension(d: int) -> List[CatalogEntry]:
    if d not in DIMENSION_LISTS:
        raise CatalogError(f"the classification covers dimensions 1..3, not {d}")
    return [get(name) for name in DIMENSION_LISTS[d]]


def shestakov7() -> CatalogEntry:
    return get("SHESTAKOV7")


def even_algebra(name: str, field: ScalarField = RATIONALS) -> SuperAlgebra:
    """
    An ungraded Jordan algebra named like "B1" or "U1+U2" (summands taken
    from the indecomposable list).
    """
    parts = name.split("+")
    for part in parts:
        if part not in JORDAN_ALGEBRAS:
            raise CatalogError(f"unknown Jordan algebra {part!r}")
    algebra = direct_sum(*(get(part).algebra for part in parts), name=name)
    return reduce_algebra(algebra, field)
