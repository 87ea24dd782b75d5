"""
Graded maps between superalgebras, isomorphism invariants, and exhaustive
graded isomorphism search over finite fields.
"""

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import List, Optional, Sequence

from .algebra import Element, SuperAlgebra, annihilator_dimension, change_basis, even_part, find_unit, \
    is_associative, is_nilpotent, odd_square_dimension, reduce_algebra, square_dimension
from .config import PROBE_PRIME, WORKERS
from .errors import FieldError, IsomorphismError
from .exactfield import PrimeField
from .linalg import Matrix, determinant, identity, inverse, mat_mul, nullspace, span_basis, vec_mat, zeros
from .logger import get_logger
from .models import Fingerprint, IdentityReport
from .utils import chunk

logger = get_logger(__name__)

MAX_SEARCH_BLOCK = 3


class GradedMap:
    """
    Block-diagonal linear map. Row i of even_block holds the target even
    coordinates of the image of the i-th even source basis vector; likewise
    for odd_block.
    """

    __slots__ = ("source", "target", "even_block", "odd_block")

    def __init__(self, source: SuperAlgebra, target: SuperAlgebra, even_block: Sequence[Sequence],
                 odd_block: Sequence[Sequence]):
        if source.field != target.field:
            raise IsomorphismError("source and target live over different fields")
        field = target.field
        self.source = source
        self.target = target
        self.even_block = [[field.coerce(c) for c in row] for row in even_block]
        self.odd_block = [[field.coerce(c) for c in row] for row in odd_block]
        if len(self.even_block) != source.dim_even or any(len(r) != target.dim_even for r in self.even_block):
            raise IsomorphismError(f"even block must be {source.dim_even}x{target.dim_even}")
        if len(self.odd_block) != source.dim_odd or any(len(r) != target.dim_odd for r in self.odd_block):
            raise IsomorphismError(f"odd block must be {source.dim_odd}x{target.dim_odd}")

    @classmethod
    def identity(cls, algebra: SuperAlgebra) -> "GradedMap":
        return cls(algebra, algebra, identity(algebra.dim_even, algebra.field),
                   identity(algebra.dim_odd, algebra.field))

    def matrix(self) -> Matrix:
        """The full (block-diagonal) matrix in the row convention."""
        field = self.target.field
        n, m = self.source.dim_even, self.source.dim_odd
        out = zeros(self.source.dim, self.target.dim, field)
        for i in range(n):
            for j in range(self.target.dim_even):
                out[i][j] = self.even_block[i][j]
        for i in range(m):
            for j in range(self.target.dim_odd):
                out[n + i][self.target.dim_even + j] = self.odd_block[i][j]
        return out

    def apply(self, x: Element) -> Element:
        if x.parent != self.source:
            raise IsomorphismError("element does not belong to the source algebra")
        return Element(self.target, vec_mat(list(x.coords), self.matrix(), self.target.field))

    def is_invertible(self) -> bool:
        if self.source.type != self.target.type:
            return False
        field = self.target.field
        return (not determinant(self.even_block, field).is_zero()
                and not determinant(self.odd_block, field).is_zero())

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self followed by other."""
        if self.target != other.source:
            raise IsomorphismError("maps do not compose")
        field = self.target.field
        return GradedMap(self.source, other.target, mat_mul(self.even_block, other.even_block, field),
                         mat_mul(self.odd_block, other.odd_block, field))

    def inverse(self) -> "GradedMap":
        field = self.target.field
        even = inverse(self.even_block, field)
        odd = inverse(self.odd_block, field)
        if even is None or odd is None or self.source.type != self.target.type:
            raise IsomorphismError("map is not invertible")
        return GradedMap(self.target, self.source, even, odd)

    def sort_key(self) -> tuple:
        return tuple(c.sort_key() for row in self.even_block + self.odd_block for c in row)

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.even_block == other.even_block and self.odd_block == other.odd_block)

    def __repr__(self):
        even = "; ".join(" ".join(str(c) for c in row) for row in self.even_block)
        odd = "; ".join(" ".join(str(c) for c in row) for row in self.odd_block)
        return f"GradedMap(even=[{even}], odd=[{odd}])"


def verify_homomorphism(f: GradedMap, isomorphism: bool = False) -> IdentityReport:
    """f(x*y) = f(x)*f(y) on every basis pair; with isomorphism=True both blocks must be invertible."""
    report = IdentityReport(identity="isomorphism" if isomorphism else "homomorphism")
    source = f.source
    images = [f.apply(b) for b in source.basis()]
    for i in range(source.dim):
        for j in range(source.dim):
            lhs = f.apply(source.basis_element(i) * source.basis_element(j))
            rhs = images[i] * images[j]
            if lhs != rhs:
                report.add((i, j), str(lhs - rhs), f"({source.labels[i]},{source.labels[j]})", lhs - rhs)
    if isomorphism and not f.is_invertible():
        report.add(("invertible",), "a block is singular", "determinant")
    return report


def apply_basis_change(algebra: SuperAlgebra, g: GradedMap) -> SuperAlgebra:
    """
    The algebra rewritten in the basis given by the rows of g; the returned
    algebra B comes with the isomorphism GradedMap(B, algebra, g blocks).
    """
    if g.source.type != algebra.type or not g.is_invertible():
        raise IsomorphismError("basis change must be an invertible graded map of matching type")
    return change_basis(algebra, g.matrix(), dim_even=algebra.dim_even)


def random_graded_map(algebra: SuperAlgebra, rng: Optional[random.Random] = None) -> GradedMap:
    """Uniformly random invertible graded map of a finite-field algebra onto itself."""
    field = algebra.field
    if not field.is_finite:
        raise IsomorphismError("random maps need a finite field")
    rng = rng or random.Random()
    elements = field.elements()

    def block(size):
        while True:
            rows = [[rng.choice(elements) for _ in range(size)] for _ in range(size)]
            if not determinant(rows, field).is_zero():
                return rows

    return GradedMap(algebra, algebra, block(algebra.dim_even), block(algebra.dim_odd))


def _idempotent_count(algebra: SuperAlgebra) -> int:
    from .peirce import find_idempotents

    probe = algebra
    if not algebra.field.is_finite:
        try:
            probe = reduce_algebra(algebra, PrimeField(PROBE_PRIME))
        except FieldError:
            logger.warning("%s does not reduce mod %d; idempotents not counted", algebra, PROBE_PRIME)
            return -1
    return len(find_idempotents(probe))


@lru_cache(maxsize=4096)
def fingerprint(algebra: SuperAlgebra) -> Fingerprint:
    even = None
    if algebra.dim_odd and algebra.dim_even:
        even = fingerprint(even_part(algebra))
    return Fingerprint(
        type=algebra.type,
        is_associative=is_associative(algebra),
        is_unital=find_unit(algebra) is not None,
        dim_square=square_dimension(algebra),
        dim_annihilator=annihilator_dimension(algebra),
        dim_odd_square=odd_square_dimension(algebra),
        is_nilpotent=is_nilpotent(algebra),
        idempotent_count=_idempotent_count(algebra),
        even_part=even,
    )


def fingerprint_diff(a: Fingerprint, b: Fingerprint, prefix: str = "") -> List[str]:
    """Human-readable list of the fields where two fingerprints differ."""
    out = []
    for name in Fingerprint.model_fields:
        x, y = getattr(a, name), getattr(b, name)
        if name == "even_part":
            if x is not None and y is not None:
                out += fingerprint_diff(x, y, prefix=f"{prefix}even_part.")
            elif x != y:
                out.append(f"{prefix}{name}: {'present' if x else 'absent'} vs {'present' if y else 'absent'}")
        elif x != y:
            out.append(f"{prefix}{name}: {x} vs {y}")
    return out


class _Search:
    """Row-by-row scan for a graded isomorphism A -> B in lexicographic order."""

    def __init__(self, a: SuperAlgebra, b: SuperAlgebra):
        self.a, self.b = a, b
        self.field = b.field
        self.n, self.m = a.dim_even, a.dim_odd
        self.vectors = [list(v) for v in itertools.product(self.field.elements(), repeat=self.n)]
        self.elements = self.field.elements()
        n = self.n
        # pairs (i, j) of even indices whose product only involves rows <= step
        self.pairs_at = [[] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                support = [k for k, _ in a.table[i][j]]
                self.pairs_at[max([i, j] + support)].append((i, j))

    def _even_product(self, u, v):
        """Even coordinates of u*v in B, u and v even coordinate vectors."""
        b, field = self.b, self.field
        out = [field.zero] * self.n
        for l, x in enumerate(u):
            if x.is_zero():
                continue
            for r, y in enumerate(v):
                if y.is_zero():
                    continue
                for k, c in b.table[l][r]:
                    out[k] = out[k] + x * y * c
        return out

    def _image(self, coeffs, rows):
        out = [self.field.zero] * self.n
        for k, c in coeffs:
            out = [o + c * r for o, r in zip(out, rows[k])]
        return out

    def _even_ok(self, rows, step) -> bool:
        for i, j in self.pairs_at[step]:
            lhs = self._image(self.a.table[i][j], rows)
            if lhs != self._even_product(rows[i], rows[j]):
                return False
        return True

    def _odd_block(self, rows) -> Optional[Matrix]:
        a, b, n, m, field = self.a, self.b, self.n, self.m, self.field
        if m == 0:
            return []
        size = m * m
        equations = []
        for i in range(n):
            for j in range(m):
                for t in range(m):
                    for left in (True, False):
                        eq = [field.zero] * size
                        pair = a.constants[i][n + j] if left else a.constants[n + j][i]
                        for k in range(m):
                            c = pair[n + k]
                            if not c.is_zero():
                                eq[k * m + t] = eq[k * m + t] + c
                        for l in range(n):
                            g = rows[i][l]
                            if g.is_zero():
                                continue
                            for s in range(m):
                                c = b.constants[l][n + s][n + t] if left else b.constants[n + s][l][n + t]
                                if not c.is_zero():
                                    eq[j * m + s] = eq[j * m + s] - g * c
                        if any(not x.is_zero() for x in eq):
                            equations.append(eq)
        kernel = span_basis(nullspace(equations, field, size), field)
        logger.debug("odd block solution space has dimension %d", len(kernel))
        for coeffs in itertools.product(self.elements, repeat=len(kernel)):
            flat = [field.zero] * size
            for c, v in zip(coeffs, kernel):
                if not c.is_zero():
                    flat = [x + c * y for x, y in zip(flat, v)]
            x = [flat[r * m:(r + 1) * m] for r in range(m)]
            if determinant(x, field).is_zero():
                continue
            if self._odd_products_ok(rows, x):
                return x
        return None

    def _odd_products_ok(self, rows, x) -> bool:
        a, b, n, m, field = self.a, self.b, self.n, self.m, self.field
        for i in range(m):
            for j in range(m):
                lhs = self._image([(k, c) for k, c in a.table[n + i][n + j]], rows)
                rhs = [field.zero] * n
                for s, xs in enumerate(x[i]):
                    if xs.is_zero():
                        continue
                    for r, xr in enumerate(x[j]):
                        if xr.is_zero():
                            continue
                        for k, c in b.table[n + s][n + r]:
                            rhs[k] = rhs[k] + xs * xr * c
                if lhs != rhs:
                    return False
        return True

    def _independent(self, rows) -> bool:
        return len(span_basis(rows, self.field)) == len(rows)

    def run(self, first_rows: Sequence) -> Optional[GradedMap]:
        if self.n == 0:
            odd = self._odd_block([])
            return None if odd is None else GradedMap(self.a, self.b, [], odd)
        for first in first_rows:
            found = self._extend([first])
            if found is not None:
                return found
        return None

    def _extend(self, rows) -> Optional[GradedMap]:
        step = len(rows) - 1
        if not self._independent(rows) or not self._even_ok(rows, step):
            return None
        if len(rows) == self.n:
            odd = self._odd_block(rows)
            if odd is None:
                return None
            return GradedMap(self.a, self.b, [list(r) for r in rows], odd)
        for v in self.vectors:
            found = self._extend(rows + [v])
            if found is not None:
                return found
        return None


def find_graded_isomorphism(a: SuperAlgebra, b: SuperAlgebra, workers: Optional[int] = None) -> Optional[GradedMap]:
    """
    The lexicographically least graded isomorphism A -> B (even block then odd
    block, row-major), or None.

    With workers > 1 the scan is split into contiguous chunks on a thread
    pool. The scan is pure Python and holds the GIL, so this gives no
    speedup; the result is the same map as the serial scan.

    Raises:
        IsomorphismError: infinite field, different fields, or a block larger than 3.
    """
    if a.field != b.field:
        raise IsomorphismError(f"{a.field} and {b.field} differ")
    if not a.field.is_finite:
        raise IsomorphismError("isomorphism search needs a finite field; verify an explicit map over Q instead")
    if a.type != b.type:
        return None
    if a.dim_even > MAX_SEARCH_BLOCK or a.dim_odd > MAX_SEARCH_BLOCK:
        raise IsomorphismError(f"type {a.type} is beyond the exhaustive search range")
    if fingerprint(a) != fingerprint(b):
        return None

    search = _Search(a, b)
    workers = WORKERS if workers is None else workers
    logger.debug("graded isomorphism search %s -> %s over %s", a, b, a.field)
    if workers <= 1 or a.dim_even == 0:
        found = search.run(search.vectors)
    else:
        chunks = chunk(search.vectors, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            local = list(pool.map(search.run, chunks))
        # chunks are contiguous in scan order, so the first hit is the global minimum
        found = next((f for f in local if f is not None), None)
    if found is not None and not verify_homomorphism(found, isomorphism=True).holds:
        raise IsomorphismError("search produced a map that fails verification")
    logger.info("isomorphism %s -> %s: %s", a.name or a, b.name or b, "found" if found else "none")
    return found
