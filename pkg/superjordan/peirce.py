"""
Idempotents and Peirce decompositions, single and refined, computed as
exact kernels inside each parity block.
"""

import itertools
from typing import Any, Dict, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .algebra import Element, SuperAlgebra, right_multiplication
from .errors import PeirceError
from .linalg import coordinates, identity, is_zero_matrix, mat_add, mat_mul, mat_scale, mat_sub, nullspace, transpose
from .logger import get_logger
from .models import IdentityReport

logger = get_logger(__name__)

EIGENVALUES = ("0", "1/2", "1")


class PeirceDecomposition(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    algebra: Any = Field(..., exclude=True)
    idempotent: Any = Field(..., description="The even idempotent e")
    p0: List[Any] = Field(default_factory=list, description="Basis of {x : x*e = 0}")
    p_half: List[Any] = Field(default_factory=list, description="Basis of {x : x*e = x/2}")
    p1: List[Any] = Field(default_factory=list, description="Basis of {x : x*e = x}")
    graded_components: Dict[str, List[Any]] = Field(default_factory=dict,
                                                    description="Odd basis vectors of each component")

    @property
    def components(self) -> Dict[str, List[Element]]:
        return {"0": self.p0, "1/2": self.p_half, "1": self.p1}

    def dimensions(self) -> Dict[str, int]:
        return {key: len(basis) for key, basis in self.components.items()}

    def odd_dimensions(self) -> Dict[str, int]:
        return {key: len(basis) for key, basis in self.graded_components.items()}


class RefinedPeirce(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    algebra: Any = Field(..., exclude=True)
    idempotents: List[Any]
    components: Dict[Tuple[int, int], List[Any]] = Field(default_factory=dict)

    def odd_components(self) -> Dict[Tuple[int, int], List[Element]]:
        return {key: [v for v in basis if v.parity() == 1] for key, basis in self.components.items()}


def find_idempotents(algebra: SuperAlgebra) -> List[Element]:
    """All nonzero even x with x*x = x, by exhaustive scan of the even part."""
    field = algebra.field
    if not field.is_finite:
        raise PeirceError("idempotent search needs a finite field; verify known candidates with verify_idempotent")
    zero = field.zero
    found = []
    for head in itertools.product(field.elements(), repeat=algebra.dim_even):
        x = Element(algebra, list(head) + [zero] * algebra.dim_odd)
        if x.is_zero():
            continue
        if x * x == x:
            found.append(x)
    found.sort(key=lambda x: x.sort_key())
    logger.debug("%d idempotents in %s", len(found), algebra)
    return found


def verify_idempotent(algebra: SuperAlgebra, e: Element) -> bool:
    return e.parent == algebra and e.parity() == 0 and e * e == e


def _block_eigenspace(algebra: SuperAlgebra, conditions: Sequence[Tuple[List, Any]], block: range) -> List[Element]:
    """
    Vectors v supported on `block` with v R = lam v for every (R, lam) in
    conditions.
    """
    field = algebra.field
    size = len(block)
    if size == 0:
        return []
    rows = []
    for r_matrix, lam in conditions:
        sub = [[r_matrix[i][j] for j in block] for i in block]
        shifted = mat_sub(sub, mat_scale(identity(size, field), lam))
        rows += transpose(shifted)
    kernel = nullspace(rows, field, size)
    out = []
    for v in kernel:
        coords = [field.zero] * algebra.dim
        for pos, k in enumerate(block):
            coords[k] = v[pos]
        out.append(Element(algebra, coords))
    return out


def _eigen(field, label):
    return {"0": field.zero, "1/2": field.half(), "1": field.one}[label]


def peirce_operator_defect(algebra: SuperAlgebra, e: Element):
    """2R^3 - 3R^2 + R for the right multiplication R by e."""
    field = algebra.field
    r = right_multiplication(algebra, e)
    r2 = mat_mul(r, r, field)
    r3 = mat_mul(r2, r, field)
    return mat_add(mat_sub(mat_scale(r3, field.from_int(2)), mat_scale(r2, field.from_int(3))), r)


def peirce_decompose(algebra: SuperAlgebra, e: Element) -> PeirceDecomposition:
    """
    Split the algebra into the eigenspaces of R_e at 0, 1/2 and 1.

    Raises:
        PeirceError: e is not an even idempotent, or 2R^3 - 3R^2 + R != 0.
    """
    if not verify_idempotent(algebra, e):
        raise PeirceError(f"{e} is not an even idempotent of {algebra}")
    if not is_zero_matrix(peirce_operator_defect(algebra, e)):
        raise PeirceError(f"2R^3 - 3R^2 + R does not vanish for e = {e}; the input is not a Jordan superalgebra")
    r = right_multiplication(algebra, e)
    field = algebra.field
    parts = {}
    graded = {}
    for label in EIGENVALUES:
        lam = _eigen(field, label)
        even = _block_eigenspace(algebra, [(r, lam)], algebra.even_indices())
        odd = _block_eigenspace(algebra, [(r, lam)], algebra.odd_indices())
        parts[label] = even + odd
        graded[label] = odd
    total = sum(len(v) for v in parts.values())
    if total != algebra.dim:
        raise PeirceError(f"Peirce components span {total} of {algebra.dim} dimensions")
    return PeirceDecomposition(algebra=algebra, idempotent=e, p0=parts["0"], p_half=parts["1/2"],
                               p1=parts["1"], graded_components=graded)


def components_of(decomposition: PeirceDecomposition, x: Element) -> Dict[str, Element]:
    """The projections of x onto P0, P1/2 and P1."""
    algebra = decomposition.algebra
    keys, basis = [], []
    for key, vectors in decomposition.components.items():
        for v in vectors:
            keys.append(key)
            basis.append(list(v.coords))
    coeffs = coordinates(basis, list(x.coords), algebra.field)
    if coeffs is None:
        raise PeirceError(f"{x} is outside the span of the decomposition")
    out = {key: algebra.zero_element() for key in decomposition.components}
    for key, c, v in zip(keys, coeffs, basis):
        if not c.is_zero():
            out[key] = out[key] + Element(algebra, v) * c
    return out


# (left, right) -> components a product may land in
PEIRCE_RULES = {
    ("0", "0"): {"0"},
    ("1", "1"): {"1"},
    ("0", "1"): set(),
    ("0", "1/2"): {"1/2"},
    ("1", "1/2"): {"1/2"},
    ("1/2", "1/2"): {"0", "1"},
}


def check_peirce_multiplication(decomposition: PeirceDecomposition) -> IdentityReport:
    report = IdentityReport(identity=f"Peirce containments at e = {decomposition.idempotent}")
    parts = decomposition.components
    for (left, right), allowed in PEIRCE_RULES.items():
        for u in parts[left]:
            for v in parts[right]:
                prod = u * v
                if prod.is_zero():
                    continue
                stray = {key: part for key, part in components_of(decomposition, prod).items()
                         if key not in allowed and not part.is_zero()}
                if stray:
                    where = f"P{left}*P{right}: ({u})*({v})"
                    defect = ", ".join(f"P{key} part {part}" for key, part in stray.items())
                    report.add((left, right), defect, where, prod)
    return report


def _is_unit(algebra: SuperAlgebra, e: Element) -> bool:
    return all(b * e == b and e * b == b for b in algebra.basis())


def refined_peirce(algebra: SuperAlgebra, idempotents: Sequence[Element]) -> RefinedPeirce:
    """
    Components P_ij, 0 <= i <= j <= n, for pairwise orthogonal even
    idempotents e_1..e_n; index 0 stands for the complement of their sum.
    """
    es = list(idempotents)
    if not es:
        raise PeirceError("at least one idempotent is required")
    for e in es:
        if not verify_idempotent(algebra, e):
            raise PeirceError(f"{e} is not an even idempotent")
    for a, b in itertools.combinations(range(len(es)), 2):
        if not (es[a] * es[b]).is_zero():
            raise PeirceError(f"{es[a]} and {es[b]} are not orthogonal")

    field = algebra.field
    zero, half, one = field.zero, field.half(), field.one
    rs = [right_multiplication(algebra, e) for e in es]
    n = len(es)

    def eigenvalues(i, j):
        lam = [zero] * n
        if i == 0 and j == 0:
            return lam
        if i == 0:
            lam[j - 1] = half
        elif i == j:
            lam[i - 1] = one
        else:
            lam[i - 1] = half
            lam[j - 1] = half
        return lam

    components = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            conditions = list(zip(rs, eigenvalues(i, j)))
            components[(i, j)] = (_block_eigenspace(algebra, conditions, algebra.even_indices())
                                  + _block_eigenspace(algebra, conditions, algebra.odd_indices()))
    total = sum(len(v) for v in components.values())
    if total != algebra.dim:
        raise PeirceError(f"refined components span {total} of {algebra.dim} dimensions")
    total_e = es[0]
    for e in es[1:]:
        total_e = total_e + e
    if _is_unit(algebra, total_e):
        leftover = [key for key, basis in components.items() if key[0] == 0 and basis]
        if leftover:
            raise PeirceError(f"the idempotents sum to the unit but P{leftover[0]} is nonzero")
    return RefinedPeirce(algebra=algebra, idempotents=es, components=components)


def refined_target(left: Tuple[int, int], right: Tuple[int, int]) -> set:
    """Components allowed to receive P_left * P_right."""
    s, t = sorted(left), sorted(right)
    if s == t:
        i, j = s
        return {(i, i)} if i == j else {(i, i), (j, j)}
    common = set(s) & set(t)
    if not common:
        return set()
    c = common.pop()
    a = list(s)
    a.remove(c)
    b = list(t)
    b.remove(c)
    return {tuple(sorted((a[0], b[0])))}


def check_refined_multiplication(refined: RefinedPeirce) -> IdentityReport:
    algebra = refined.algebra
    report = IdentityReport(identity="refined Peirce relations")
    keys, basis = [], []
    for key, vectors in refined.components.items():
        for v in vectors:
            keys.append(key)
            basis.append(list(v.coords))
    for left, right in itertools.product(refined.components, repeat=2):
        allowed = refined_target(left, right)
        for u in refined.components[left]:
            for v in refined.components[right]:
                prod = u * v
                if prod.is_zero():
                    continue
                coeffs = coordinates(basis, list(prod.coords), algebra.field)
                stray = sorted({key for key, c in zip(keys, coeffs) if not c.is_zero() and key not in allowed})
                if stray:
                    report.add(left + right, f"lands in {', '.join(f'P{k[0]}{k[1]}' for k in stray)}",
                               f"P{left[0]}{left[1]}*P{right[0]}{right[1]}: ({u})*({v})", prod)
    return report


def render_decomposition(decomposition) -> str:
    """Labeled basis lists, one component per line."""
    if isinstance(decomposition, RefinedPeirce):
        lines = ["idempotents: " + ", ".join(str(e) for e in decomposition.idempotents)]
        for (i, j), basis in decomposition.components.items():
            lines.append(f"  P{i}{j}: " + (", ".join(str(v) for v in basis) or "0"))
        return "\n".join(lines)
    lines = [f"idempotent: {decomposition.idempotent}"]
    for key, basis in decomposition.components.items():
        odd = decomposition.graded_components[key]
        lines.append(f"  P{key}: " + (", ".join(str(v) for v in basis) or "0")
                     + f"   (odd: {', '.join(str(v) for v in odd) or '0'})")
    return "\n".join(lines)
