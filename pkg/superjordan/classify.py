"""
Classification by brute force: parameterized structure-constant templates,
their super Jordan constraint polynomials, enumeration of all solutions over
a small finite field, and the split of the solutions into graded
isomorphism classes matched against the catalog.
"""

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Symbol, sympify
from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from . import catalog
from .algebra import SuperAlgebra, check_super_jordan, default_labels, reduce_algebra
from .config import WORKERS
from .errors import ClassificationError, FieldError
from .exactfield import Field, PrimeField, RATIONALS, warn_characteristic
from .iso import find_graded_isomorphism, fingerprint
from .logger import get_logger
from .models import ClassificationReport, OrbitReport
from .scafile import save_sca
from .utils import chunk, ensure_dir, progress

logger = get_logger(__name__)

UNKNOWN_NAMES = ("alpha", "beta", "gamma", "delta", "epsilon", "zeta")
MAX_UNKNOWNS = 6


class Template:
    """
    A type (n, m) skeleton whose even part is a fixed Jordan algebra and whose
    even*odd and odd*odd products are unknowns.

    placements holds (i, j, k, unknown, sign): c[i][j][k] = sign * unknown.
    """

    __slots__ = ("base", "unknowns", "placements", "even_name")

    def __init__(self, base: SuperAlgebra, unknowns: Sequence[str], placements: Sequence[Tuple[int, int, int, str, int]],
                 even_name: str = ""):
        if len(set(unknowns)) != len(unknowns):
            raise ClassificationError("unknown names must be unique")
        for i, j, k, name, _ in placements:
            if name not in unknowns:
                raise ClassificationError(f"placement uses undeclared unknown {name!r}")
            if base.parity(k) != (base.parity(i) + base.parity(j)) % 2:
                raise ClassificationError(f"placement ({i},{j},{k}) breaks grading closure")
        self.base = base
        self.unknowns = tuple(unknowns)
        self.placements = tuple(placements)
        self.even_name = even_name

    @property
    def type(self) -> Tuple[int, int]:
        return self.base.type

    @property
    def label(self) -> str:
        n, m = self.type
        return f"({n},{m})/{self.even_name or '-'}"

    def instantiate(self, values: Sequence, field: Field) -> SuperAlgebra:
        if len(values) != len(self.unknowns):
            raise ClassificationError(f"expected {len(self.unknowns)} values")
        base = reduce_algebra(self.base, field)
        constants = [[list(v) for v in row] for row in base.constants]
        assignment = dict(zip(self.unknowns, (field.coerce(v) for v in values)))
        for i, j, k, name, sign in self.placements:
            constants[i][j][k] = constants[i][j][k] + assignment[name] * sign
        return SuperAlgebra(base.dim_even, base.dim_odd, field, constants, base.labels)

    def __repr__(self):
        return f"<Template {self.label} unknowns={','.join(self.unknowns) or '-'}>"


def build_template(n: int, m: int, even_name: Optional[str] = None) -> Template:
    """
    The general template of type (n, m): e_i*o_j = sum_t x o_t and
    o_i*o_j = sum_k y e_k (i < j), with transposes by supercommutativity.
    Unknowns are named alpha, beta, ... in that order; type (1,1) uses beta.
    """
    if m < 1 or n < 0 or n + m > 3:
        raise ClassificationError(f"templates cover n+m <= 3 with m >= 1, not ({n},{m})")
    if n == 0:
        if even_name:
            raise ClassificationError("type (0,m) has no even part")
        constants = None
    else:
        if not even_name:
            raise ClassificationError(f"type ({n},{m}) needs an even part")
        even = catalog.even_algebra(even_name)
        if even.dim != n:
            raise ClassificationError(f"{even_name} has dimension {even.dim}, not {n}")
        d = n + m
        zero = RATIONALS.zero
        constants = [[[zero] * d for _ in range(d)] for _ in range(d)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    constants[i][j][k] = even.constants[i][j][k]
    base = SuperAlgebra(n, m, RATIONALS, constants, default_labels(n, m))

    slots = []
    for i in range(n):
        for j in range(m):
            for t in range(m):
                slots.append(((i, n + j, n + t), 1))
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(n):
                slots.append(((n + i, n + j, k), -1))
    if (n, m) == (1, 1):
        names = ["beta"]
    else:
        names = list(UNKNOWN_NAMES[:len(slots)])
    if len(slots) > MAX_UNKNOWNS:
        raise ClassificationError(f"{len(slots)} unknowns exceed the enumeration limit")

    placements = []
    for ((i, j, k), transpose_sign), name in zip(slots, names):
        placements.append((i, j, k, name, 1))
        placements.append((j, i, k, name, transpose_sign))
    return Template(base, names, placements, even_name or "")


class ConstraintPolynomial:
    __slots__ = ("poly", "tags", "terms")

    def __init__(self, poly, tags: List[Tuple[Tuple[int, int, int, int], int]]):
        self.poly = poly
        self.tags = tags
        _, cleared = poly.clear_denoms()
        self.terms = [(int(c.numerator), monom) for monom, c in cleared.terms()]

    def __str__(self):
        return str(self.poly.as_expr())


class ConstraintSystem:
    """
    Coefficient polynomials of the super Jordan identity of a template, one
    per (basis quadruple, basis component) after removing scalar multiples.
    """

    def __init__(self, template: Template, polys: Sequence[ConstraintPolynomial], poly_ring, names: Sequence[str]):
        self.template = template
        self.polynomials = list(polys)
        self.ring = poly_ring
        self.names = list(names)

    def distinct(self) -> List[ConstraintPolynomial]:
        return list(self.polynomials)

    def _normalize(self, poly):
        return tuple(sorted(poly.monic().terms())) if poly else ()

    def contains_up_to_scalar(self, text: str) -> bool:
        """True when some constraint equals the given polynomial up to a nonzero scalar."""
        local = {name: Symbol(name) for name in self.names}
        target = self._normalize(self.ring.from_expr(sympify(text, locals=local)))
        return any(self._normalize(p.poly) == target for p in self.polynomials)

    def evaluate(self, values: Sequence, field: Field) -> bool:
        """All constraints vanish at the assignment."""
        if isinstance(field, PrimeField):
            p = field.p
            ints = [field.coerce(v).value for v in values]
            for poly in self.polynomials:
                acc = 0
                for c, monom in poly.terms:
                    term = c
                    for x, e in zip(ints, monom):
                        if e:
                            term = term * pow(x, e, p)
                    acc += term
                if acc % p:
                    return False
            return True
        scalars = [field.coerce(v) for v in values]
        for poly in self.polynomials:
            acc = field.zero
            for c, monom in poly.terms:
                term = field.coerce(c)
                for x, e in zip(scalars, monom):
                    if e:
                        term = term * x ** e
                acc = acc + term
            if not acc.is_zero():
                return False
        return True

    def render(self) -> str:
        lines = [f"{self.template.label}: {len(self.polynomials)} constraint polynomial(s)"]
        lines += [f"  {p} = 0" for p in self.polynomials]
        return "\n".join(lines)


def _to_qq(scalar) -> object:
    value = Fraction(scalar.value)
    return QQ(value.numerator, value.denominator)


def generate_constraints(template: Template) -> ConstraintSystem:
    """
    Evaluate the super Jordan identity symbolically on every basis quadruple
    and collect the coefficient polynomials of the defects.
    """
    names = list(template.unknowns) or ["t"]
    poly_ring, *gens = ring(names, QQ)
    symbol = dict(zip(names, gens))
    base = template.base
    d = base.dim

    table: Dict[Tuple[int, int], Dict[int, object]] = {}
    for i in range(d):
        for j in range(d):
            entry = {k: poly_ring.ground_new(_to_qq(c)) for k, c in base.table[i][j]}
            table[(i, j)] = entry
    for i, j, k, name, sign in template.placements:
        entry = table[(i, j)]
        entry[k] = entry.get(k, poly_ring.zero) + symbol[name] * sign

    def mul(u, v):
        out = {}
        for i, x in u.items():
            for j, y in v.items():
                for k, c in table[(i, j)].items():
                    out[k] = out.get(k, poly_ring.zero) + x * y * c
        return {k: c for k, c in out.items() if c}

    def acc(into, vec, sign):
        for k, c in vec.items():
            into[k] = into.get(k, poly_ring.zero) + c * sign

    one = poly_ring.one
    basis = [{k: one} for k in range(d)]
    pairs = {(i, j): mul(basis[i], basis[j]) for i in range(d) for j in range(d)}
    par = [base.parity(i) for i in range(d)]

    seen: Dict[tuple, ConstraintPolynomial] = {}
    for a, b, c, e in itertools.product(range(d), repeat=4):
        pa, pb, pc, pe = par[a], par[b], par[c], par[e]
        defect: Dict[int, object] = {}
        acc(defect, mul(pairs[(a, b)], pairs[(c, e)]), 1)
        acc(defect, mul(pairs[(a, c)], pairs[(b, e)]), -1 if (pb * pc) % 2 else 1)
        acc(defect, mul(pairs[(a, e)], pairs[(b, c)]), -1 if (pb * pe + pc * pe) % 2 else 1)
        acc(defect, mul(mul(pairs[(a, b)], basis[c]), basis[e]), -1)
        acc(defect, mul(mul(pairs[(a, e)], basis[c]), basis[b]), 1 if (pc * pe + pb * pc) % 2 else -1)
        acc(defect, mul(mul(pairs[(b, e)], basis[c]), basis[a]),
            1 if (pa * pb + pa * pc + pa * pe + pc * pe) % 2 else -1)
        for k, poly in sorted(defect.items()):
            if not poly:
                continue
            key = tuple(sorted(poly.monic().terms()))
            if key in seen:
                seen[key].tags.append(((a, b, c, e), k))
            else:
                seen[key] = ConstraintPolynomial(poly, [((a, b, c, e), k)])
    logger.debug("%s: %d distinct constraint polynomials", template.label, len(seen))
    return ConstraintSystem(template, list(seen.values()), poly_ring, names)


def _scan(system: ConstraintSystem, field: Field, heads: Sequence, k: int) -> List[Tuple]:
    elements = field.elements()
    found = []
    for head in heads:
        for tail in itertools.product(elements, repeat=k - 1):
            values = (head,) + tail
            if system.evaluate(values, field):
                found.append(values)
    return found


def enumerate_solutions(template: Template, field: Field, workers: Optional[int] = None,
                        show_progress: Optional[bool] = None) -> List[SuperAlgebra]:
    """
    Every assignment of the unknowns over a finite field at which all
    constraints vanish, instantiated and cross-checked with check_super_jordan.
    Worker threads split the scan by the first unknown and leave the result
    order unchanged; they do not make the scan faster.
    """
    if not field.is_finite:
        raise ClassificationError("enumeration needs a finite field")
    if len(template.unknowns) > MAX_UNKNOWNS:
        raise ClassificationError(f"too many unknowns ({len(template.unknowns)})")
    warn_characteristic(field)
    system = generate_constraints(template)
    k = len(template.unknowns)
    logger.debug("enumerating %d assignments of %s over %s", field.order ** k, template.label, field)
    if k == 0:
        assignments = [()]
    else:
        workers = WORKERS if workers is None else workers
        heads = list(progress(field.elements(), desc=template.label, enabled=show_progress))
        if workers <= 1:
            assignments = _scan(system, field, heads, k)
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(lambda hs: _scan(system, field, hs, k), chunk(heads, workers)))
            assignments = [a for part in parts for a in part]

    solutions = []
    for values in assignments:
        algebra = template.instantiate(values, field)
        if not check_super_jordan(algebra).holds:
            raise ClassificationError(f"constraint solution {values} fails the super Jordan identity")
        solutions.append(algebra)
    logger.info("%s over %s: %d solutions", template.label, field, len(solutions))
    return solutions


def orbit_partition(algebras: Sequence[SuperAlgebra], field: Optional[Field] = None,
                    workers: Optional[int] = None) -> List[List[SuperAlgebra]]:
    """
    Split algebras into graded isomorphism classes. Each class is sorted by
    structure vector, so its first member is the canonical representative;
    classes are ordered by representative.
    """
    if not algebras:
        return []
    field = field or algebras[0].field
    if any(a.field != field or a.type != algebras[0].type for a in algebras):
        raise ClassificationError("orbit partition needs algebras of one type over one field")
    buckets: Dict[object, List[List[SuperAlgebra]]] = {}
    for algebra in sorted(algebras, key=lambda a: a.sort_key()):
        orbits = buckets.setdefault(fingerprint(algebra), [])
        for orbit in orbits:
            if orbit[0] == algebra or find_graded_isomorphism(orbit[0], algebra, workers=workers) is not None:
                orbit.append(algebra)
                break
        else:
            orbits.append([algebra])
    classes = [orbit for orbits in buckets.values() for orbit in orbits]
    classes.sort(key=lambda orbit: orbit[0].sort_key())
    return classes


def locate_in_catalog(representative: SuperAlgebra,
                      allow_quadratic_extension: bool = True) -> Optional[Tuple[str, Field]]:
    """The matching catalog name and the field where the isomorphism was found."""
    field = representative.field
    if not field.is_finite:
        raise ClassificationError("catalog matching needs a finite field")
    candidates = [e for e in catalog.all_of_dimension(representative.dim) if e.type == representative.type]
    fields = [field]
    if allow_quadratic_extension and isinstance(field, PrimeField):
        fields.append(field.extension())
    for target_field in fields:
        rep = reduce_algebra(representative, target_field)
        for entry in candidates:
            try:
                reduced = reduce_algebra(entry.algebra, target_field)
            except FieldError as ex:
                raise ClassificationError(f"{entry.name} does not reduce to {target_field}: {ex}") from None
            if fingerprint(reduced) != fingerprint(rep):
                continue
            if find_graded_isomorphism(rep, reduced) is not None:
                return entry.name, target_field
    return None


def match_catalog(representative: SuperAlgebra, allow_quadratic_extension: bool = True) -> Optional[str]:
    found = locate_in_catalog(representative, allow_quadratic_extension)
    return found[0] if found else None


def classify(n: int, m: int, even_name: Optional[str], field: Field, allow_quadratic_extension: bool = True,
             workers: Optional[int] = None, show_progress: Optional[bool] = None) -> ClassificationReport:
    template = build_template(n, m, even_name)
    solutions = enumerate_solutions(template, field, workers=workers, show_progress=show_progress)
    classes = orbit_partition(solutions, field, workers=workers)
    report = ClassificationReport(
        template=template.label,
        field=str(field),
        unknowns=list(template.unknowns),
        solution_count=len(solutions),
        orbit_count=len(classes),
    )
    banner = warn_characteristic(field)
    if banner:
        report.warnings.append(banner)
    for k, orbit in enumerate(classes, 1):
        rep = orbit[0]
        found = locate_in_catalog(rep, allow_quadratic_extension)
        name = found[0] if found else None
        rep = SuperAlgebra(rep.dim_even, rep.dim_odd, rep.field, rep.constants, rep.labels,
                           name=name or f"orbit{k}")
        report.orbits.append(OrbitReport(representative=rep.products_text(), size=len(orbit), catalog_name=name,
                                         field=str(found[1]) if found else str(field)))
        report.representatives.append(rep)
        if name is None:
            report.unmatched.append(rep.products_text())
    return report


def write_representatives(report: ClassificationReport, directory: str) -> List[str]:
    """One ".sca" file per orbit representative; returns the written paths."""
    ensure_dir(directory)
    slug = report.template.replace("(", "").replace(")", "").replace(",", "-").replace("/", "_").replace("+", "")
    paths = []
    for k, rep in enumerate(report.representatives, 1):
        path = os.path.join(directory, f"{slug}_{k}_{rep.name}.sca")
        save_sca(rep, path)
        paths.append(path)
    return paths
