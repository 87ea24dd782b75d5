"""
Superalgebras given by structure constants, their elements, and the identity
checkers for supercommutativity, the super Jordan identity and the ordinary
Jordan identity.

Basis index i is even for i < dim_even and odd otherwise. Structure
constants c[i][j][k] give b_i * b_j = sum_k c[i][j][k] b_k.
"""

import itertools
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import AlgebraError, GradingError
from .exactfield import RATIONALS, Field, FieldScalar, Rational, warn_characteristic
from .linalg import (Matrix, identity, inverse, mat_mul, mat_sub, nullspace, rank,
                     solve, span_basis, transpose, vec_mat)
from .logger import get_logger
from .models import IdentityReport

logger = get_logger(__name__)

Sparse = Dict[int, FieldScalar]

EXHAUSTIVE_REPORT_LIMIT = 100


def default_labels(dim_even: int, dim_odd: int) -> List[str]:
    return [f"e{i + 1}" for i in range(dim_even)] + [f"o{i + 1}" for i in range(dim_odd)]


class SuperAlgebra:
    """
    A finite-dimensional superalgebra over an exact field.

    Instances are immutable: constants are frozen into tuples and a sparse
    product table is built once at construction.
    """

    __slots__ = ("dim_even", "dim_odd", "field", "labels", "constants", "name", "_table", "_hash")

    def __init__(self, dim_even: int, dim_odd: int, field: Field = RATIONALS,
                 constants: Optional[Sequence] = None, labels: Optional[Sequence[str]] = None,
                 name: Optional[str] = None):
        d = dim_even + dim_odd
        if dim_even < 0 or dim_odd < 0 or d < 1:
            raise AlgebraError(f"type ({dim_even},{dim_odd}) has no basis")
        self.dim_even = dim_even
        self.dim_odd = dim_odd
        self.field = field
        self.name = name
        labels = list(labels) if labels is not None else default_labels(dim_even, dim_odd)
        if len(labels) != d or len(set(labels)) != d:
            raise AlgebraError(f"need {d} distinct basis labels, got {labels}")
        self.labels = tuple(labels)

        zero = field.zero
        if constants is None:
            frozen = tuple(tuple(tuple(zero for _ in range(d)) for _ in range(d)) for _ in range(d))
        else:
            if len(constants) != d or any(len(row) != d or any(len(v) != d for v in row) for row in constants):
                raise AlgebraError(f"constants must be a {d}x{d}x{d} tensor")
            frozen = tuple(tuple(tuple(field.coerce(c) for c in v) for v in row) for row in constants)
        self.constants = frozen

        broken = [(i, j, k) for i in range(d) for j in range(d) for k in range(d)
                  if not frozen[i][j][k].is_zero() and self.parity(k) != (self.parity(i) + self.parity(j)) % 2]
        if broken:
            i, j, k = broken[0]
            raise GradingError(
                f"product {self.labels[i]}*{self.labels[j]} has a {self.labels[k]} component; "
                f"grading closure fails at {len(broken)} place(s)")

        self._table = tuple(
            tuple(tuple((k, c) for k, c in enumerate(frozen[i][j]) if not c.is_zero()) for j in range(d))
            for i in range(d))
        self._hash = hash((dim_even, dim_odd, field, frozen))

    @classmethod
    def from_products(cls, dim_even: int, dim_odd: int, field: Field,
                      products: Mapping[Tuple[str, str], Mapping[str, object]],
                      labels: Optional[Sequence[str]] = None, complete: bool = True,
                      name: Optional[str] = None) -> "SuperAlgebra":
        """
        Build an algebra from its nonzero products.

        Args:
            products: maps (left label, right label) to {label: coefficient};
                coefficients may be ints, Fractions, scalars or scalar strings.
            complete: fill each missing transposed product b_j*b_i from b_i*b_j
                by supercommutativity.
        """
        labels = list(labels) if labels is not None else default_labels(dim_even, dim_odd)
        d = dim_even + dim_odd
        index = {label: i for i, label in enumerate(labels)}
        zero = field.zero
        constants = [[[zero] * d for _ in range(d)] for _ in range(d)]

        def parity(i):
            return 0 if i < dim_even else 1

        given = set()
        for (left, right), result in products.items():
            try:
                i, j = index[left], index[right]
            except KeyError as ex:
                raise AlgebraError(f"unknown basis label {ex.args[0]!r}") from None
            given.add((i, j))
            for label, coeff in result.items():
                if label not in index:
                    raise AlgebraError(f"unknown basis label {label!r}")
                constants[i][j][index[label]] = constants[i][j][index[label]] + field(coeff)
        if complete:
            for (i, j) in sorted(given):
                if (j, i) in given:
                    continue
                sign = -1 if parity(i) and parity(j) else 1
                for k in range(d):
                    constants[j][i][k] = constants[i][j][k] * sign
        return cls(dim_even, dim_odd, field, constants, labels, name=name)

    @property
    def dim(self) -> int:
        return self.dim_even + self.dim_odd

    @property
    def type(self) -> Tuple[int, int]:
        return (self.dim_even, self.dim_odd)

    @property
    def table(self):
        """Sparse products: table[i][j] is a tuple of (k, c) with c nonzero."""
        return self._table

    def parity(self, i: int) -> int:
        return 0 if i < self.dim_even else 1

    def index(self, label: Union[str, int]) -> int:
        if isinstance(label, int):
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise AlgebraError(f"unknown basis label {label!r}") from None

    def even_indices(self) -> range:
        return range(self.dim_even)

    def odd_indices(self) -> range:
        return range(self.dim_even, self.dim)

    def element(self, coords: Sequence) -> "Element":
        return Element(self, coords)

    def zero_element(self) -> "Element":
        return Element(self, [self.field.zero] * self.dim)

    def basis_element(self, label: Union[str, int]) -> "Element":
        i = self.index(label)
        coords = [self.field.zero] * self.dim
        coords[i] = self.field.one
        return Element(self, coords)

    def basis(self) -> List["Element"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def structure_vector(self) -> tuple:
        """All constants in (i, j, k) order; compared by sort keys for canonical choices."""
        return tuple(c for row in self.constants for v in row for c in v)

    def sort_key(self) -> tuple:
        return tuple(c.sort_key() for c in self.structure_vector())

    def same_table(self, other: "SuperAlgebra") -> bool:
        return (self.type == other.type and self.field == other.field
                and self.constants == other.constants)

    def __eq__(self, other):
        if not isinstance(other, SuperAlgebra):
            return NotImplemented
        return self.same_table(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        title = self.name or "SuperAlgebra"
        return f"<{title} type=({self.dim_even},{self.dim_odd}) over {self.field}>"

    def products_text(self) -> str:
        """Nonzero products b_i*b_j with i <= j, e.g. "e1*e1=e1 e1*o1=1/2*o1"."""
        parts = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                if self._table[i][j]:
                    parts.append(f"{self.labels[i]}*{self.labels[j]}={format_sparse(self, dict(self._table[i][j]))}")
        return " ".join(parts) if parts else "(zero product)"


class Element:
    __slots__ = ("parent", "coords")

    def __init__(self, parent: SuperAlgebra, coords: Sequence):
        if len(coords) != parent.dim:
            raise AlgebraError(f"expected {parent.dim} coordinates, got {len(coords)}")
        self.parent = parent
        self.coords = tuple(parent.field.coerce(c) for c in coords)

    def _check(self, other: "Element"):
        if not isinstance(other, Element) or not (other.parent is self.parent or other.parent == self.parent):
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return Element(self.parent, [x + y for x, y in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return Element(self.parent, [x - y for x, y in zip(self.coords, other.coords)])

    def __neg__(self):
        return Element(self.parent, [-x for x in self.coords])

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, FieldScalar)):
            c = self.parent.field.coerce(other)
            return Element(self.parent, [c * x for x in self.coords])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, FieldScalar)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.parent == other.parent and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.coords)

    def support(self) -> List[int]:
        return [i for i, x in enumerate(self.coords) if not x.is_zero()]

    def parity(self) -> Optional[int]:
        """0 or 1 for homogeneous elements (the zero element counts as even), None otherwise."""
        parities = {self.parent.parity(i) for i in self.support()}
        if not parities:
            return 0
        if len(parities) == 1:
            return parities.pop()
        return None

    def sparse(self) -> Sparse:
        return {i: x for i, x in enumerate(self.coords) if not x.is_zero()}

    def sort_key(self) -> tuple:
        return tuple(x.sort_key() for x in self.coords)

    def __str__(self):
        return format_sparse(self.parent, self.sparse())

    def __repr__(self):
        return f"Element({self})"


def format_sparse(algebra: SuperAlgebra, vec: Mapping[int, FieldScalar]) -> str:
    terms = []
    for k in sorted(vec):
        c = vec[k]
        if c.is_zero():
            continue
        negative = isinstance(c, Rational) and c.value < 0
        mag = -c if negative else c
        body = algebra.labels[k] if mag.is_one() else f"{mag}*{algebra.labels[k]}"
        if not terms:
            terms.append(f"-{body}" if negative else body)
        else:
            terms.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(terms) if terms else "0"


def _split_terms(text: str) -> List[str]:
    terms, depth, current = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and current.strip() and current.rstrip()[-1] not in "*(":
            terms.append(current)
            current = ch
        else:
            current += ch
    if current.strip():
        terms.append(current)
    return terms


def parse_element(algebra: SuperAlgebra, text: str) -> Element:
    """
    Parse a linear combination such as "e1+e2", "2*o1 - 1/2*o2" or
    "(1+2*s)*o1" over the algebra's labels.
    """
    field = algebra.field
    coords = [field.zero] * algebra.dim
    if text.strip() in ("", "0"):
        return Element(algebra, coords)
    for raw in _split_terms(text):
        term = raw.strip()
        sign = 1
        if term[0] in "+-":
            sign = -1 if term[0] == "-" else 1
            term = term[1:].strip()
        if term in algebra.labels:
            coeff, label = field.one, term
        else:
            match = re.fullmatch(r"(\(.*\)|[^*\s]+)\s*\*?\s*(\S+)", term)
            if not match or match.group(2) not in algebra.labels:
                raise AlgebraError(f"cannot read term {raw.strip()!r}")
            coeff_text, label = match.group(1), match.group(2)
            if coeff_text.startswith("("):
                coeff_text = coeff_text[1:-1]
            coeff = field.parse(coeff_text)
        k = algebra.index(label)
        coords[k] = coords[k] + coeff * sign
    return Element(algebra, coords)


def sparse_multiply(algebra: SuperAlgebra, u: Sparse, v: Sparse) -> Sparse:
    out: Sparse = {}
    table = algebra._table
    for i, x in u.items():
        row = table[i]
        for j, y in v.items():
            entries = row[j]
            if not entries:
                continue
            xy = x * y
            for k, c in entries:
                out[k] = out[k] + xy * c if k in out else xy * c
    return {k: c for k, c in out.items() if not c.is_zero()}


def sparse_add(u: Sparse, v: Sparse, scale: Optional[FieldScalar] = None) -> Sparse:
    out = dict(u)
    for k, c in v.items():
        if scale is not None:
            c = c * scale
        out[k] = out[k] + c if k in out else c
    return {k: c for k, c in out.items() if not c.is_zero()}


def multiply(a: Element, b: Element) -> Element:
    """Bilinear product of two elements of the same algebra."""
    a._check(b)
    algebra = a.parent
    out = [algebra.field.zero] * algebra.dim
    for k, c in sparse_multiply(algebra, a.sparse(), b.sparse()).items():
        out[k] = c
    return Element(algebra, out)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _where(algebra: SuperAlgebra, indices: Iterable[int]) -> str:
    return "(" + ",".join(algebra.labels[i] for i in indices) + ")"


def check_supercommutativity(algebra: SuperAlgebra) -> IdentityReport:
    """a*b = (-1)^{|a||b|} b*a on every ordered basis pair."""
    report = IdentityReport(identity="supercommutativity")
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            s = _sign(algebra.parity(i) * algebra.parity(j))
            defect = sparse_add(dict(algebra.table[i][j]), dict(algebra.table[j][i]), algebra.field.coerce(-s))
            if defect:
                report.add((i, j), format_sparse(algebra, defect), _where(algebra, (i, j)),
                           _to_element(algebra, defect))
    return report


def _to_element(algebra: SuperAlgebra, vec: Sparse) -> Element:
    coords = [algebra.field.zero] * algebra.dim
    for k, c in vec.items():
        coords[k] = c
    return Element(algebra, coords)


def _quadruple_defects(algebra: SuperAlgebra, graded: bool):
    """
    Yield (a, b, c, d, defect) for every basis quadruple where the (super)
    linearized Jordan identity fails.
    """
    d = algebra.dim
    pairs = [[dict(algebra.table[i][j]) for j in range(d)] for i in range(d)]
    basis = [{k: algebra.field.one} for k in range(d)]
    triples = [[[sparse_multiply(algebra, pairs[i][j], basis[k]) for k in range(d)] for j in range(d)]
               for i in range(d)]
    par = [algebra.parity(i) if graded else 0 for i in range(d)]
    neg_one = algebra.field.coerce(-1)
    one = algebra.field.one

    for a, b, c, e in itertools.product(range(d), repeat=4):
        pa, pb, pc, pe = par[a], par[b], par[c], par[e]
        terms = (
            (pairs[a][b], pairs[c][e], 0),
            (pairs[a][c], pairs[b][e], pb * pc),
            (pairs[a][e], pairs[b][c], pb * pe + pc * pe),
        )
        defect: Sparse = {}
        for left, right, exponent in terms:
            if left and right:
                defect = sparse_add(defect, sparse_multiply(algebra, left, right),
                                    neg_one if exponent % 2 else one)
        rhs = (
            (triples[a][b][c], e, 0),
            (triples[a][e][c], b, pc * pe + pb * pc),
            (triples[b][e][c], a, pa * pb + pa * pc + pa * pe + pc * pe),
        )
        for left, last, exponent in rhs:
            if left:
                defect = sparse_add(defect, sparse_multiply(algebra, left, basis[last]),
                                    one if exponent % 2 else neg_one)
        if defect:
            yield a, b, c, e, defect


def check_super_jordan(algebra: SuperAlgebra) -> IdentityReport:
    """
    The super Jordan identity on every homogeneous basis quadruple, with the
    sign factors (-1)^{|b||c|}, (-1)^{|b||d|+|c||d|} on the left and
    (-1)^{|c||d|+|b||c|}, (-1)^{|a||b|+|a||c|+|a||d|+|c||d|} on the right.
    The identity is multilinear, so basis quadruples suffice.
    """
    report = IdentityReport(identity="super Jordan identity")
    if not check_supercommutativity(algebra).holds:
        logger.warning("%s is not supercommutative; super Jordan check is evaluated anyway", algebra)
        report.note("supercommutativity fails, so the super Jordan identity is not meaningful here")
    banner = warn_characteristic(algebra.field)
    if banner:
        report.note(banner)
    for a, b, c, e, defect in _quadruple_defects(algebra, graded=True):
        report.add((a, b, c, e), format_sparse(algebra, defect), _where(algebra, (a, b, c, e)),
                   _to_element(algebra, defect))
    return report


def jordan_defect(a: Element, b: Element) -> Element:
    """(a^2 * b) * a - a^2 * (b * a)."""
    a2 = a * a
    return (a2 * b) * a - a2 * (b * a)


def check_jordan_ungraded(algebra: SuperAlgebra, exhaustive: bool = False) -> IdentityReport:
    """
    Commutativity and the linearized Jordan identity with the grading ignored.
    With exhaustive=True over a finite field, the identity
    (a^2*b)*a = a^2*(b*a) is also tested on every pair of elements.
    """
    report = IdentityReport(identity="Jordan identity (ungraded)")
    banner = warn_characteristic(algebra.field)
    if banner:
        report.note(banner)
    neg_one = algebra.field.coerce(-1)
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            defect = sparse_add(dict(algebra.table[i][j]), dict(algebra.table[j][i]), neg_one)
            if defect:
                report.add((i, j), format_sparse(algebra, defect), "commutativity " + _where(algebra, (i, j)),
                           _to_element(algebra, defect))
    for a, b, c, e, defect in _quadruple_defects(algebra, graded=False):
        report.add((a, b, c, e), format_sparse(algebra, defect), _where(algebra, (a, b, c, e)),
                   _to_element(algebra, defect))

    if exhaustive:
        if not algebra.field.is_finite:
            report.note("exhaustive check skipped: the field is infinite")
            return report
        elements = [Element(algebra, coords)
                    for coords in itertools.product(algebra.field.elements(), repeat=algebra.dim)]
        failures = 0
        for x in elements:
            for y in elements:
                defect = jordan_defect(x, y)
                if defect.is_zero():
                    continue
                failures += 1
                if failures <= EXHAUSTIVE_REPORT_LIMIT:
                    report.add(("pair",), str(defect), f"a={x}, b={y}", defect)
        if failures > EXHAUSTIVE_REPORT_LIMIT:
            report.note(f"{failures} failing element pairs; the first {EXHAUSTIVE_REPORT_LIMIT} are listed")
    return report


def _span_rank(algebra: SuperAlgebra, vectors: List[Sparse]) -> int:
    rows = [[v.get(k, algebra.field.zero) for k in range(algebra.dim)] for v in vectors if v]
    return rank(rows, algebra.field)


def odd_square_dimension(algebra: SuperAlgebra) -> int:
    odd = algebra.odd_indices()
    return _span_rank(algebra, [dict(algebra.table[i][j]) for i in odd for j in odd])


def square_dimension(algebra: SuperAlgebra) -> int:
    d = algebra.dim
    return _span_rank(algebra, [dict(algebra.table[i][j]) for i in range(d) for j in range(d)])


def annihilator_dimension(algebra: SuperAlgebra) -> int:
    """dim {x : x*b = 0 for all b}."""
    d = algebra.dim
    rows = [[algebra.constants[i][j][k] for i in range(d)] for j in range(d) for k in range(d)]
    return d - rank(rows, algebra.field)


def associator_report(algebra: SuperAlgebra) -> IdentityReport:
    report = IdentityReport(identity="associativity")
    d = algebra.dim
    basis = [{k: algebra.field.one} for k in range(d)]
    neg_one = algebra.field.coerce(-1)
    for i, j, k in itertools.product(range(d), repeat=3):
        left = sparse_multiply(algebra, dict(algebra.table[i][j]), basis[k])
        right = sparse_multiply(algebra, basis[i], dict(algebra.table[j][k]))
        defect = sparse_add(left, right, neg_one)
        if defect:
            report.add((i, j, k), format_sparse(algebra, defect), _where(algebra, (i, j, k)),
                       _to_element(algebra, defect))
    return report


def is_associative(algebra: SuperAlgebra) -> bool:
    return associator_report(algebra).holds


def find_unit(algebra: SuperAlgebra) -> Optional[Element]:
    """The two-sided unit, found by an exact linear solve; None when there is none."""
    d = algebra.dim
    field = algebra.field
    rows, rhs = [], []
    for j in range(d):
        for k in range(d):
            target = field.one if j == k else field.zero
            rows.append([algebra.constants[i][j][k] for i in range(d)])
            rhs.append(target)
            rows.append([algebra.constants[j][i][k] for i in range(d)])
            rhs.append(target)
    solution = solve(rows, rhs, field, n_cols=d)
    if solution is None:
        return None
    return Element(algebra, solution[0])


def _span_product(algebra: SuperAlgebra, left: Matrix, right: Matrix) -> Matrix:
    field = algebra.field
    vectors = []
    for u in left:
        su = {k: c for k, c in enumerate(u) if not c.is_zero()}
        for v in right:
            sv = {k: c for k, c in enumerate(v) if not c.is_zero()}
            prod = sparse_multiply(algebra, su, sv)
            if prod:
                vectors.append([prod.get(k, field.zero) for k in range(algebra.dim)])
    return span_basis(vectors, field)


def is_nilpotent(algebra: SuperAlgebra) -> bool:
    """
    True when some power J^n = sum_{i+j=n} J^i J^j vanishes. The chain is
    followed for 2*dim+2 steps.
    """
    powers = {1: identity(algebra.dim, algebra.field)}
    for n in range(2, 2 * algebra.dim + 3):
        vectors: Matrix = []
        for i in range(1, n):
            vectors += _span_product(algebra, powers[i], powers[n - i])
        powers[n] = span_basis(vectors, algebra.field)
        if not powers[n]:
            return True
    return False


def right_multiplication(algebra: SuperAlgebra, x: Element) -> Matrix:
    """Matrix R with row i the coordinates of b_i * x, so that v*x = v R."""
    rows = []
    xs = x.sparse()
    for i in range(algebra.dim):
        prod = sparse_multiply(algebra, {i: algebra.field.one}, xs)
        rows.append([prod.get(k, algebra.field.zero) for k in range(algebra.dim)])
    return rows


def change_basis(algebra: SuperAlgebra, rows: Sequence[Sequence[FieldScalar]], dim_even: Optional[int] = None,
                 labels: Optional[Sequence[str]] = None, name: Optional[str] = None) -> SuperAlgebra:
    """
    Rewrite the table in the basis whose i-th vector has old coordinates rows[i].
    The first dim_even new vectors are declared even.
    """
    field = algebra.field
    d = algebra.dim
    rows = [[field.coerce(c) for c in r] for r in rows]
    inv = inverse(rows, field)
    if inv is None:
        raise AlgebraError("change of basis is not invertible")
    n = algebra.dim_even if dim_even is None else dim_even
    sparse_rows = [{k: c for k, c in enumerate(r) if not c.is_zero()} for r in rows]
    constants = []
    for i in range(d):
        block = []
        for j in range(d):
            prod = sparse_multiply(algebra, sparse_rows[i], sparse_rows[j])
            old = [prod.get(k, field.zero) for k in range(d)]
            block.append(vec_mat(old, inv, field))
        constants.append(block)
    return SuperAlgebra(n, d - n, field, constants, labels, name=name)


def forget_grading(algebra: SuperAlgebra) -> SuperAlgebra:
    return SuperAlgebra(algebra.dim, 0, algebra.field, algebra.constants, algebra.labels, name=algebra.name)


def even_part(algebra: SuperAlgebra) -> SuperAlgebra:
    n = algebra.dim_even
    if n == 0:
        raise AlgebraError("the even part is zero")
    constants = [[[algebra.constants[i][j][k] for k in range(n)] for j in range(n)] for i in range(n)]
    return SuperAlgebra(n, 0, algebra.field, constants, algebra.labels[:n])


def reduce_algebra(algebra: SuperAlgebra, field: Field) -> SuperAlgebra:
    """The same table with every constant coerced into another field."""
    if field == algebra.field:
        return algebra
    return SuperAlgebra(algebra.dim_even, algebra.dim_odd, field, algebra.constants, algebra.labels,
                        name=algebra.name)


def _is_default(algebra: SuperAlgebra) -> bool:
    return list(algebra.labels) == default_labels(algebra.dim_even, algebra.dim_odd)


def direct_sum(*algebras: SuperAlgebra, name: Optional[str] = None) -> SuperAlgebra:
    """
    Block-diagonal sum: the even parts in order, then the odd parts in order.
    Labels are renumbered when every summand uses default labels, otherwise
    suffixed with the summand position on collision.
    """
    if not algebras:
        raise AlgebraError("direct sum of nothing")
    if len(algebras) == 1:
        return algebras[0]
    field = algebras[0].field
    if any(a.field != field for a in algebras):
        raise AlgebraError("summands live over different fields")
    n = sum(a.dim_even for a in algebras)
    m = sum(a.dim_odd for a in algebras)
    d = n + m
    position = []
    even_offset, odd_offset = 0, n
    for a in algebras:
        mapping = []
        for i in range(a.dim):
            if i < a.dim_even:
                mapping.append(even_offset + i)
            else:
                mapping.append(odd_offset + i - a.dim_even)
        even_offset += a.dim_even
        odd_offset += a.dim_odd
        position.append(mapping)

    zero = field.zero
    constants = [[[zero] * d for _ in range(d)] for _ in range(d)]
    for a, mapping in zip(algebras, position):
        for i in range(a.dim):
            for j in range(a.dim):
                for k, c in a.table[i][j]:
                    constants[mapping[i]][mapping[j]][mapping[k]] = c

    if all(_is_default(a) for a in algebras):
        labels = None
    else:
        labels = [""] * d
        flat = [label for a in algebras for label in a.labels]
        collide = {label for label in flat if flat.count(label) > 1}
        for pos, (a, mapping) in enumerate(zip(algebras, position), 1):
            for i, label in enumerate(a.labels):
                labels[mapping[i]] = f"{label}_{pos}" if label in collide else label
    if name is None and all(a.name for a in algebras):
        name = "+".join(a.name for a in algebras)
    return SuperAlgebra(n, m, field, constants, labels, name=name)


def split_by_involution(algebra: SuperAlgebra, phi: Sequence[Sequence]) -> SuperAlgebra:
    """
    Grade an algebra by an involutive automorphism: even part the fixed
    vectors, odd part the negated ones. phi[i] holds the coordinates of the
    image of b_i; the grading of the input is ignored.
    """
    field = algebra.field
    d = algebra.dim
    phi = [[field.coerce(c) for c in row] for row in phi]
    if len(phi) != d or any(len(row) != d for row in phi):
        raise AlgebraError(f"phi must be a {d}x{d} matrix")
    if mat_mul(phi, phi, field) != identity(d, field):
        raise AlgebraError("phi is not an involution")
    for i in range(d):
        for j in range(d):
            prod = dict(algebra.table[i][j])
            lhs = vec_mat([prod.get(k, field.zero) for k in range(d)], phi, field)
            image = sparse_multiply(algebra, {k: c for k, c in enumerate(phi[i]) if not c.is_zero()},
                                    {k: c for k, c in enumerate(phi[j]) if not c.is_zero()})
            rhs = [image.get(k, field.zero) for k in range(d)]
            if lhs != rhs:
                raise AlgebraError(f"phi is not an automorphism at ({algebra.labels[i]},{algebra.labels[j]})")
    phi_t = transpose(phi)
    ident = identity(d, field)
    even = nullspace(mat_sub(phi_t, ident), field, d)
    odd = nullspace([[x + y for x, y in zip(r, s)] for r, s in zip(phi_t, ident)], field, d)
    rows = even + odd

    def unit_index(v):
        support = [k for k, c in enumerate(v) if not c.is_zero()]
        if len(support) == 1 and v[support[0]].is_one():
            return support[0]
        return None

    units = [unit_index(v) for v in rows]
    labels = [algebra.labels[k] for k in units] if None not in units else None
    return change_basis(algebra, rows, dim_even=len(even), labels=labels)


def build_superform(dim_even: int, dim_odd: int, f: Sequence[Sequence], field: Field = RATIONALS) -> SuperAlgebra:
    """
    J(V, f) = k*1 + V for a supersymmetric bilinear form f on V = V0 + V1,
    with (a1 + v)(b1 + w) = (ab + f(v, w))1 + (aw + bv). Basis order: the
    unit, V0, then V1.
    """
    size = dim_even + dim_odd
    if dim_odd % 2:
        raise AlgebraError("the odd part of a superform space must have even dimension")
    f = [[field.coerce(c) for c in row] for row in f]
    if len(f) != size or any(len(row) != size for row in f):
        raise AlgebraError(f"f must be a {size}x{size} matrix")
    for i in range(size):
        for j in range(size):
            pi, pj = int(i >= dim_even), int(j >= dim_even)
            if pi != pj and not f[i][j].is_zero():
                raise AlgebraError("f pairs even with odd vectors")
            if pi == pj == 0 and f[i][j] != f[j][i]:
                raise AlgebraError("f is not symmetric on the even part")
            if pi == pj == 1 and f[i][j] != -f[j][i]:
                raise AlgebraError("f is not skew-symmetric on the odd part")
    d = size + 1
    zero, one = field.zero, field.one
    constants = [[[zero] * d for _ in range(d)] for _ in range(d)]
    constants[0][0][0] = one
    for v in range(1, d):
        constants[0][v][v] = one
        constants[v][0][v] = one
        for w in range(1, d):
            constants[v][w][0] = f[v - 1][w - 1]
    return SuperAlgebra(dim_even + 1, dim_odd, field, constants)
