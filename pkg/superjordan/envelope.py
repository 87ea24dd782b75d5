"""
Associative superalgebras given by generators and two-letter rewrite rules,
optionally with a layer of matrix units on top, and the superized plus
product a.b = 1/2 (ab + (-1)^{|a||b|} ba) used to certify embeddings of
Jordan superalgebras.

A monomial is a pair (unit, word): unit is a matrix unit (i, j), 1-based, or
None when the system has no matrix layer; word is a tuple of generator
indices in normal form. The monomial stands for word * unit.
"""

import itertools
import json
import re
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from . import catalog
from .algebra import Element, SuperAlgebra, _split_terms, associator_report, parse_element
from .config import SEARCH_COEFFICIENTS, SEARCH_DEGREE, SEARCH_MAX_TERMS
from .errors import EnvelopeError, FieldError, RewriteError, ScaParseError
from .exactfield import RATIONALS, Rational
from .linalg import rank, solve
from .logger import get_logger
from .models import IdentityReport

logger = get_logger(__name__)

Word = Tuple[int, ...]
Unit = Optional[Tuple[int, int]]
Monomial = Tuple[Unit, Word]

HALF = Rational(RATIONALS.half())
MAX_FREE_ASSIGNMENTS = 100000


class NCPolynomial:
    """Finite linear combination of monomials with rational coefficients; zero terms are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None):
        clean = {}
        for key, c in (terms or {}).items():
            c = RATIONALS.coerce(c)
            if not c.is_zero():
                clean[key] = c
        self.terms: Dict[Monomial, Rational] = clean

    @classmethod
    def monomial(cls, unit: Unit = None, word: Word = (), coeff=1) -> "NCPolynomial":
        return cls({(unit, tuple(word)): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out[key] + c if key in out else c
        return NCPolynomial(out)

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def scale(self, c) -> "NCPolynomial":
        c = RATIONALS.coerce(c)
        return NCPolynomial({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"NCPolynomial({len(self.terms)} terms)"


def _deglex(word: Word) -> Tuple[int, Word]:
    return (len(word), word)


class RewriteSystem:
    """
    Generators with parities and rules ab -> polynomial in strictly smaller
    words (graded degree-lexicographic order, generators in declared order).
    Local confluence is checked on every overlap ab, bc at construction.
    """

    __slots__ = ("name", "generators", "parities", "rules", "matrix", "_nf", "_products")

    def __init__(self, generators: Sequence[Tuple[str, int]],
                 rules: Mapping[Tuple[str, str], Mapping[Tuple[str, ...], object]],
                 matrix: Optional[Tuple[int, int]] = None, name: str = ""):
        names = [g for g, _ in generators]
        if len(set(names)) != len(names):
            raise RewriteError("generator names must be unique")
        self.name = name
        self.generators = tuple(names)
        self.parities = tuple(int(p) % 2 for _, p in generators)
        self.matrix = tuple(matrix) if matrix else None
        self._nf: Dict[Word, Dict[Word, Rational]] = {}
        self._products: Dict[Tuple[Monomial, Monomial], Dict[Monomial, Rational]] = {}
        index = {g: i for i, g in enumerate(names)}

        def word_of(seq):
            try:
                return tuple(index[g] for g in seq)
            except KeyError as ex:
                raise RewriteError(f"unknown generator {ex.args[0]!r}") from None

        compiled: Dict[Tuple[int, int], Dict[Word, Rational]] = {}
        for lhs, rhs in rules.items():
            left = word_of(lhs)
            if len(left) != 2:
                raise RewriteError(f"rule {lhs} must have a two-letter left side")
            right = {}
            for seq, c in rhs.items():
                w = word_of(seq)
                if _deglex(w) >= _deglex(left):
                    raise RewriteError(f"rule {'*'.join(lhs)} does not decrease: {'*'.join(seq) or '1'}")
                if self.word_parity(w) != self.word_parity(left):
                    raise RewriteError(f"rule {'*'.join(lhs)} mixes parities")
                right[w] = RATIONALS.coerce(c)
            compiled[left] = {w: c for w, c in right.items() if not c.is_zero()}
        self.rules = compiled
        self._check_confluence()

    def word_parity(self, word: Word) -> int:
        return sum(self.parities[g] for g in word) % 2

    def unit_parity(self, unit: Unit) -> int:
        if unit is None:
            return 0
        p = self.matrix[0]
        return (int(unit[0] > p) + int(unit[1] > p)) % 2

    def monomial_parity(self, key: Monomial) -> int:
        return (self.unit_parity(key[0]) + self.word_parity(key[1])) % 2

    def units(self) -> List[Tuple[int, int]]:
        if not self.matrix:
            return []
        size = sum(self.matrix)
        return [(i, j) for i in range(1, size + 1) for j in range(1, size + 1)]

    def reduce_word(self, word: Word) -> Dict[Word, Rational]:
        """Normal form of a single word, memoized."""
        cached = self._nf.get(word)
        if cached is not None:
            return cached
        for pos in range(len(word) - 1):
            rule = self.rules.get((word[pos], word[pos + 1]))
            if rule is None:
                continue
            out: Dict[Word, Rational] = {}
            for w, c in rule.items():
                for v, d in self.reduce_word(word[:pos] + w + word[pos + 2:]).items():
                    out[v] = out[v] + c * d if v in out else c * d
            result = {v: c for v, c in out.items() if not c.is_zero()}
            break
        else:
            result = {word: RATIONALS.one}
        self._nf[word] = result
        return result

    def is_normal_word(self, word: Word) -> bool:
        return all((word[i], word[i + 1]) not in self.rules for i in range(len(word) - 1))

    def _check_confluence(self):
        for (a, b), (b2, c) in itertools.product(self.rules, repeat=2):
            if b != b2:
                continue
            left: Dict[Word, Rational] = {}
            for w, k in self.rules[(a, b)].items():
                for v, d in self.reduce_word(w + (c,)).items():
                    left[v] = left[v] + k * d if v in left else k * d
            right: Dict[Word, Rational] = {}
            for w, k in self.rules[(b, c)].items():
                for v, d in self.reduce_word((a,) + w).items():
                    right[v] = right[v] + k * d if v in right else k * d
            left = {v: k for v, k in left.items() if not k.is_zero()}
            right = {v: k for v, k in right.items() if not k.is_zero()}
            if left != right:
                triple = "*".join(self.generators[g] for g in (a, b, c))
                raise RewriteError(f"rules are not confluent on the overlap {triple}")

    def _expand_identity(self, p: NCPolynomial) -> NCPolynomial:
        if not self.matrix or not any(unit is None for unit, _ in p.terms):
            return p
        out: Dict[Monomial, Rational] = {}
        size = sum(self.matrix)
        for (unit, word), c in p.terms.items():
            targets = [(i, i) for i in range(1, size + 1)] if unit is None else [unit]
            for u in targets:
                key = (u, word)
                out[key] = out[key] + c if key in out else c
        return NCPolynomial(out)

    def normal_form(self, p: NCPolynomial) -> NCPolynomial:
        out: Dict[Monomial, Rational] = {}
        for (unit, word), c in self._expand_identity(p).terms.items():
            for w, d in self.reduce_word(word).items():
                key = (unit, w)
                out[key] = out[key] + c * d if key in out else c * d
        return NCPolynomial(out)

    def _monomial_product(self, left: Monomial, right: Monomial) -> Dict[Monomial, Rational]:
        cached = self._products.get((left, right))
        if cached is not None:
            return cached
        (u1, w1), (u2, w2) = left, right
        if u1 is not None and u2 is not None:
            if u1[1] != u2[0]:
                self._products[(left, right)] = {}
                return {}
            unit = (u1[0], u2[1])
        else:
            unit = u1 if u1 is not None else u2
        sign = -1 if self.unit_parity(u1) * self.word_parity(w2) else 1
        result = {(unit, w): c * sign for w, c in self.reduce_word(w1 + w2).items()}
        self._products[(left, right)] = result
        return result

    def multiply(self, p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
        """Product in normal form; (w1 u1)(w2 u2) = (-1)^{|u1||w2|} w1 w2 u1 u2."""
        p = self._expand_identity(p)
        q = self._expand_identity(q)
        out: Dict[Monomial, Rational] = {}
        for k1, c1 in p.terms.items():
            for k2, c2 in q.terms.items():
                for key, d in self._monomial_product(k1, k2).items():
                    v = c1 * c2 * d
                    out[key] = out[key] + v if key in out else v
        return NCPolynomial(out)

    def parity(self, p: NCPolynomial) -> Optional[int]:
        """Common parity of all terms (0 for the zero polynomial), None when mixed."""
        parities = {self.monomial_parity(key) for key in p.terms}
        if not parities:
            return 0
        return parities.pop() if len(parities) == 1 else None

    def normal_monomials(self, degree: int) -> List[Monomial]:
        """Every normal monomial whose word has length <= degree, in canonical order."""
        words = [w for d in range(degree + 1) for w in itertools.product(range(len(self.generators)), repeat=d)
                 if self.is_normal_word(w)]
        units = self.units() or [None]
        return [(u, w) for u in units for w in words]

    def __repr__(self):
        return f"<RewriteSystem {self.name or ','.join(self.generators)}>"


def monomial_sort_key(key: Monomial) -> tuple:
    unit, word = key
    return (unit or (0, 0), len(word), word)


def parse_polynomial(text: str, system: RewriteSystem) -> NCPolynomial:
    """
    Read a polynomial such as "2*e12 + 2*xi*e21", "eta*xi + 1" or
    "(1/2)*x*y" over the generators (and matrix units eIJ) of the system.
    """
    index = {g: i for i, g in enumerate(system.generators)}
    compact = text.replace(" ", "")
    if not compact:
        raise EnvelopeError("empty polynomial")
    result = NCPolynomial()
    for raw in _split_terms(compact):
        sign = -1 if raw[0] == "-" else 1
        body = raw[1:] if raw[0] in "+-" else raw
        if not body:
            raise EnvelopeError(f"dangling sign in {text!r}")
        term = NCPolynomial.monomial(None, (), sign)
        for factor in body.split("*"):
            factor = factor.strip("()") if factor.startswith("(") else factor
            if factor in index:
                piece = NCPolynomial.monomial(None, (index[factor],))
            elif system.matrix and re.fullmatch(r"e\d\d", factor):
                i, j = int(factor[1]), int(factor[2])
                if not (1 <= i <= sum(system.matrix) and 1 <= j <= sum(system.matrix)):
                    raise EnvelopeError(f"matrix unit {factor} out of range")
                piece = NCPolynomial.monomial((i, j), ())
            else:
                try:
                    piece = NCPolynomial.monomial(None, (), RATIONALS.parse(factor))
                except (FieldError, ValueError, ZeroDivisionError):
                    raise EnvelopeError(f"cannot read factor {factor!r} in {text!r}") from None
            term = system.multiply(term, piece)
        result = result + term
    return system.normal_form(result)


def format_polynomial(p: NCPolynomial, system: RewriteSystem) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for key in sorted(p.terms, key=monomial_sort_key):
        c = p.terms[key]
        unit, word = key
        factors = [system.generators[g] for g in word]
        if unit is not None:
            factors.append(f"e{unit[0]}{unit[1]}")
        body = "*".join(factors)
        negative = c.value < 0
        mag = -c if negative else c
        if not body:
            text = str(mag)
        elif mag.is_one():
            text = body
        else:
            text = f"{mag}*{body}"
        if parts:
            parts.append(f"- {text}" if negative else f"+ {text}")
        else:
            parts.append(f"-{text}" if negative else text)
    return " ".join(parts)


def weyl_algebra() -> RewriteSystem:
    """W1: even generators eta < xi with xi*eta = eta*xi + 1."""
    return RewriteSystem([("eta", 0), ("xi", 0)], {("xi", "eta"): {("eta", "xi"): 1, (): 1}}, name="W1")


def clifford_superalgebra(n: int) -> RewriteSystem:
    """Cl(n): odd e1..en with ei*ei = 1 and ej*ei = -ei*ej for j > i."""
    gens = [(f"e{i}", 1) for i in range(1, n + 1)]
    rules = {}
    for i in range(1, n + 1):
        rules[(f"e{i}", f"e{i}")] = {(): 1}
        for j in range(i + 1, n + 1):
            rules[(f"e{j}", f"e{i}")] = {(f"e{i}", f"e{j}"): -1}
    return RewriteSystem(gens, rules, name=f"Cl({n})")


def odd_weyl_superalgebra(m: int = 1, relation: str = "commutator") -> RewriteSystem:
    """
    Odd generators x1..xm, y1..ym with [x_i, y_j] = delta_ij.

    relation="commutator" reads the bracket as xy - yx (an infinite-dimensional
    carrier with normal words x^a y^b); relation="anticommutator" reads it as
    xy + yx together with x^2 = y^2 = 0 (dimension 4^m).
    """
    xs = [f"x{i}" if m > 1 else "x" for i in range(1, m + 1)]
    ys = [f"y{i}" if m > 1 else "y" for i in range(1, m + 1)]
    gens = [(g, 1) for g in xs + ys]
    rules = {}
    if relation == "commutator":
        for group in (xs, ys):
            for a, b in itertools.combinations(group, 2):
                rules[(b, a)] = {(a, b): 1}
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                rules[(y, x)] = {(x, y): 1, (): -1} if i == j else {(x, y): 1}
    elif relation == "anticommutator":
        for group in (xs, ys):
            for g in group:
                rules[(g, g)] = {}
            for a, b in itertools.combinations(group, 2):
                rules[(b, a)] = {(a, b): -1}
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                rules[(y, x)] = {(x, y): -1, (): 1} if i == j else {(x, y): -1}
    else:
        raise RewriteError(f"unknown relation {relation!r}")
    name = "W(1|1)" if m == 1 else f"W({m}|{m})"
    return RewriteSystem(gens, rules, name=f"{name}-{relation}")


def tensor(first: RewriteSystem, second: RewriteSystem) -> RewriteSystem:
    """Super tensor product: generators of `second` supercommute past those of `first`."""
    if first.matrix or second.matrix:
        raise RewriteError("tensor products are taken before adding a matrix layer")
    names = list(first.generators)
    renamed = [g if g not in names else f"{g}'" for g in second.generators]
    gens = list(zip(first.generators, first.parities)) + list(zip(renamed, second.parities))
    rules = {}
    for system, labels in ((first, list(first.generators)), (second, renamed)):
        for (a, b), rhs in system.rules.items():
            rules[(labels[a], labels[b])] = {tuple(labels[g] for g in w): c for w, c in rhs.items()}
    for a, pa in zip(first.generators, first.parities):
        for b, pb in zip(renamed, second.parities):
            rules[(b, a)] = {(a, b): -1 if pa * pb else 1}
    return RewriteSystem(gens, rules, name=f"{first.name}(x){second.name}")


def matrix_superalgebra(p: int, q: int, coefficients: Optional[RewriteSystem] = None) -> RewriteSystem:
    """M_{p|q}(R): matrix units e_ij (indices 1..p even, p+1..p+q odd) over R."""
    if p < 0 or q < 0 or p + q < 1 or p + q > 9:
        raise RewriteError(f"matrix size {p}|{q} is out of range")
    base = coefficients or RewriteSystem([], {}, name="k")
    gens = list(zip(base.generators, base.parities))
    rules = {}
    for (a, b), rhs in base.rules.items():
        rules[(base.generators[a], base.generators[b])] = {tuple(base.generators[g] for g in w): c
                                                          for w, c in rhs.items()}
    return RewriteSystem(gens, rules, matrix=(p, q), name=f"M({p}|{q};{base.name})")


class GeneratorSpec(BaseModel):
    name: str
    parity: int = Field(0, ge=0, le=1)


class RuleSpec(BaseModel):
    lhs: str = Field(..., description='Two generators, e.g. "y*x"')
    rhs: str = Field("0", description="Polynomial in smaller words")


class RewriteDocument(BaseModel):
    name: str = ""
    generators: List[GeneratorSpec]
    rules: List[RuleSpec] = Field(default_factory=list)
    matrix: Optional[Tuple[int, int]] = None


def load_rewrite_system(path: Union[str, Path]) -> RewriteSystem:
    """Read a JSON declaration: generators with parities, rules as polynomial strings, optional matrix size."""
    try:
        doc = RewriteDocument.model_validate(json.loads(Path(path).read_text(encoding="utf-8")))
    except json.JSONDecodeError as ex:
        raise ScaParseError(ex.msg, ex.lineno, ex.colno) from None
    except OSError as ex:
        raise ScaParseError(f"cannot read {path}: {ex.strerror}") from None
    except ValueError as ex:
        raise ScaParseError(str(ex)) from None
    gens = [(g.name, g.parity) for g in doc.generators]
    free = RewriteSystem(gens, {}, name=doc.name)
    rules = {}
    for rule in doc.rules:
        lhs = tuple(part.strip() for part in rule.lhs.split("*"))
        rhs = parse_polynomial(rule.rhs, free) if rule.rhs.strip() != "0" else NCPolynomial()
        rules[lhs] = {tuple(free.generators[g] for g in word): c for (_, word), c in rhs.terms.items()}
    system = RewriteSystem(gens, rules, name=doc.name)
    if doc.matrix:
        return matrix_superalgebra(doc.matrix[0], doc.matrix[1], system)
    return system


def super_jordan_product(a: NCPolynomial, b: NCPolynomial, system: RewriteSystem) -> NCPolynomial:
    """1/2 (ab + (-1)^{|a||b|} ba) for parity-homogeneous a and b."""
    pa, pb = system.parity(a), system.parity(b)
    if pa is None or pb is None:
        raise EnvelopeError("the plus product needs parity-homogeneous arguments")
    ab = system.multiply(a, b)
    ba = system.multiply(b, a)
    return (ab - ba if pa * pb else ab + ba).scale(HALF)


def _images_of(algebra: SuperAlgebra, images: Mapping[str, NCPolynomial]) -> List[NCPolynomial]:
    try:
        return [images[label] for label in algebra.labels]
    except KeyError as ex:
        raise EnvelopeError(f"no image given for {ex.args[0]}") from None


def _linear_image(algebra: SuperAlgebra, images: Sequence[NCPolynomial], coeffs) -> NCPolynomial:
    out = NCPolynomial()
    for k, c in coeffs:
        out = out + images[k].scale(c)
    return out


def _independent(images: Sequence[NCPolynomial]) -> bool:
    keys = sorted({key for p in images for key in p.terms}, key=monomial_sort_key)
    rows = [[p.terms.get(key, RATIONALS.zero) for key in keys] for p in images]
    return rank(rows, RATIONALS) == len(images) if keys else not images


def verify_special_embedding(algebra: SuperAlgebra, images: Mapping[str, NCPolynomial],
                             system: RewriteSystem) -> IdentityReport:
    """
    phi(x*y) = phi(x).phi(y) on every basis pair, plus linear independence of
    the images.

    Raises:
        EnvelopeError: an image has the wrong parity or mixed parity.
    """
    if algebra.field != RATIONALS:
        raise EnvelopeError("embeddings are certified over Q")
    phi = [system.normal_form(p) for p in _images_of(algebra, images)]
    for i, p in enumerate(phi):
        if system.parity(p) != algebra.parity(i):
            raise EnvelopeError(f"image of {algebra.labels[i]} does not have parity {algebra.parity(i)}")
    report = IdentityReport(identity=f"special embedding into {system.name}")
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            lhs = _linear_image(algebra, phi, algebra.table[i][j])
            rhs = super_jordan_product(phi[i], phi[j], system)
            if lhs != rhs:
                defect = format_polynomial(rhs - lhs, system)
                report.add((i, j), defect, f"({algebra.labels[i]},{algebra.labels[j]})")
    if not _independent(phi):
        report.add(("injective",), "images are linearly dependent", "rank")
    return report


def verify_associative_envelope_table(envelope: SuperAlgebra, algebra: SuperAlgebra,
                                      inclusion: Mapping[str, str]) -> IdentityReport:
    """
    The envelope table is associative and the inclusion is a homomorphism of
    `algebra` into the envelope with the plus product (sign taken from the
    grading of `algebra`).
    """
    report = associator_report(envelope)
    report.identity = "associative envelope"
    images: List[Element] = []
    for label in algebra.labels:
        if label not in inclusion:
            raise EnvelopeError(f"no image given for {label}")
        images.append(parse_element(envelope, inclusion[label]))
    for i, image in enumerate(images):
        if image.parity() != algebra.parity(i):
            report.add(("parity", i), f"image of {algebra.labels[i]} has parity {image.parity()}",
                       algebra.labels[i])
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            lhs = envelope.zero_element()
            for k, c in algebra.table[i][j]:
                lhs = lhs + images[k] * c
            ab = images[i] * images[j]
            ba = images[j] * images[i]
            sign = -1 if algebra.parity(i) * algebra.parity(j) else 1
            rhs = (ab + ba * sign) * envelope.field.half()
            if lhs != rhs:
                report.add((i, j), str(rhs - lhs), f"({algebra.labels[i]},{algebra.labels[j]})", rhs - lhs)
    return report


def parse_coefficients(text: str) -> List[Rational]:
    values = []
    for part in text.split(","):
        part = part.strip()
        if part:
            values.append(RATIONALS.parse(part))
    return values


class _EmbeddingSearch:
    def __init__(self, algebra: SuperAlgebra, system: RewriteSystem, degree: int, coefficients: Sequence[Rational],
                 max_terms: int):
        self.algebra = algebra
        self.system = system
        self.coefficients = list(coefficients)
        nonzero = [c for c in self.coefficients if not c.is_zero()]
        monomials = system.normal_monomials(degree)
        self.by_parity = {p: [k for k in monomials if system.monomial_parity(k) == p] for p in (0, 1)}
        self.nonzero = nonzero
        self.max_terms = max_terms
        d = algebra.dim
        self.checks_at = [[] for _ in range(d)]
        for i in range(d):
            for j in range(d):
                support = [k for k, _ in algebra.table[i][j]]
                self.checks_at[max([i, j] + support)].append((i, j))

    def candidates(self, parity: int):
        """Sparse combinations ordered by term count, then monomials, then coefficients."""
        for size in range(1, self.max_terms + 1):
            for keys in itertools.combinations(self.by_parity[parity], size):
                for coeffs in itertools.product(self.nonzero, repeat=size):
                    yield NCPolynomial(dict(zip(keys, coeffs)))

    def _pair_ok(self, phi, i, j) -> bool:
        lhs = _linear_image(self.algebra, phi, self.algebra.table[i][j])
        return super_jordan_product(phi[i], phi[j], self.system) == lhs

    def _last(self, phi) -> Optional[NCPolynomial]:
        """Solve the conditions that are linear in the last image."""
        algebra, system = self.algebra, self.system
        last = algebra.dim - 1
        unknowns = self.by_parity[algebra.parity(last)]
        columns: List[Dict[Monomial, Rational]] = [dict() for _ in unknowns]
        rhs: Dict[Monomial, Rational] = {}
        equations: List[Tuple[List[NCPolynomial], NCPolynomial]] = []
        for i in range(last):
            c_last = dict(algebra.table[i][last]).get(last)
            cols = []
            for m in unknowns:
                col = super_jordan_product(phi[i], NCPolynomial.monomial(*m), system)
                if c_last is not None:
                    col = col - NCPolynomial.monomial(*m).scale(c_last)
                cols.append(col)
            known = _linear_image(algebra, phi, [(k, c) for k, c in algebra.table[i][last] if k != last])
            equations.append((cols, known))
        for i in range(last):
            for j in range(last):
                c_last = dict(algebra.table[i][j]).get(last)
                if c_last is None:
                    continue
                cols = [NCPolynomial.monomial(*m).scale(c_last) for m in unknowns]
                known = super_jordan_product(phi[i], phi[j], system) - _linear_image(
                    algebra, phi, [(k, c) for k, c in algebra.table[i][j] if k != last])
                equations.append((cols, known))
        keys = set()
        for cols, known in equations:
            keys |= set(known.terms)
            for col in cols:
                keys |= set(col.terms)
        keys = sorted(keys, key=monomial_sort_key)
        zero = RATIONALS.zero
        matrix, vector = [], []
        for cols, known in equations:
            for key in keys:
                matrix.append([col.terms.get(key, zero) for col in cols])
                vector.append(known.terms.get(key, zero))
        if matrix:
            solution = solve(matrix, vector, RATIONALS, n_cols=len(unknowns))
        else:
            solution = ([zero] * len(unknowns), [[RATIONALS.one if a == b else zero for b in range(len(unknowns))]
                                                 for a in range(len(unknowns))])
        if solution is None:
            return None
        particular, kernel = solution
        tried = 0
        for free in itertools.product(self.coefficients, repeat=len(kernel)):
            tried += 1
            if tried > MAX_FREE_ASSIGNMENTS:
                logger.info("free-variable scan stopped after %d assignments", MAX_FREE_ASSIGNMENTS)
                return None
            coords = list(particular)
            for t, v in zip(free, kernel):
                if not t.is_zero():
                    coords = [x + t * y for x, y in zip(coords, v)]
            image = NCPolynomial(dict(zip(unknowns, coords)))
            candidate = phi + [image]
            if all(self._pair_ok(candidate, i, j) for i, j in self.checks_at[last]) and _independent(candidate):
                return image
        return None

    def run(self) -> Optional[List[NCPolynomial]]:
        return self._extend([])

    def _extend(self, phi: List[NCPolynomial]) -> Optional[List[NCPolynomial]]:
        step = len(phi)
        if step == self.algebra.dim - 1:
            last = self._last(phi)
            return None if last is None else phi + [last]
        for candidate in self.candidates(self.algebra.parity(step)):
            trial = phi + [candidate]
            if not _independent(trial):
                continue
            if all(self._pair_ok(trial, i, j) for i, j in self.checks_at[step]):
                found = self._extend(trial)
                if found is not None:
                    return found
        return None


def search_embedding(algebra: SuperAlgebra, system: RewriteSystem, degree_bound: Optional[int] = None,
                     coefficients: Optional[Sequence] = None,
                     max_terms: Optional[int] = None) -> Optional[Dict[str, NCPolynomial]]:
    """
    Bounded search for an embedding into the plus algebra of `system`: images
    are combinations of at most max_terms normal monomials of word length at
    most degree_bound with coefficients from the set; the last image is
    solved for linearly. Returns the first verified embedding, or None.
    """
    if algebra.dim > 3:
        raise EnvelopeError("embedding search is limited to dimension 3")
    degree = SEARCH_DEGREE if degree_bound is None else degree_bound
    if coefficients is None:
        coefficients = parse_coefficients(SEARCH_COEFFICIENTS)
    coefficients = [RATIONALS.coerce(c) if not isinstance(c, str) else RATIONALS.parse(c) for c in coefficients]
    if not any(c.is_zero() for c in coefficients):
        coefficients = [RATIONALS.zero] + coefficients
    terms = SEARCH_MAX_TERMS if max_terms is None else max_terms
    search = _EmbeddingSearch(algebra, system, degree, coefficients, terms)
    logger.debug("embedding search into %s: %d even and %d odd monomials", system.name,
                 len(search.by_parity[0]), len(search.by_parity[1]))
    found = search.run()
    if found is None:
        logger.info("no embedding of %s into %s within degree %d", algebra.name or algebra, system.name, degree)
        return None
    images = dict(zip(algebra.labels, found))
    if not verify_special_embedding(algebra, images, system).holds:
        raise EnvelopeError("search returned an embedding that fails verification")
    logger.info("embedding of %s into %s found", algebra.name or algebra, system.name)
    return images


class WitnessResult(BaseModel):
    name: str
    target: str
    images: Dict[str, str] = Field(default_factory=dict)
    report: IdentityReport

    def render(self) -> str:
        lines = [f"{self.name} -> {self.target}"]
        lines += [f"  {label} -> {image}" for label, image in self.images.items()]
        lines.append(self.report.render(limit=10))
        if self.report.holds:
            lines.append("embedding verified")
        return "\n".join(lines)


K3_IMAGES = {"e": "e11", "x": "2*e12 + 2*xi*e21", "y": "eta*e12 + xi*eta*e21"}
S13_IMAGES = {"e1": "e23", "o1": "e13 - 4*e31", "o2": "-2*e21"}


def _witness(name: str, algebra: SuperAlgebra, system: RewriteSystem, images: Mapping[str, str]) -> WitnessResult:
    parsed = {label: parse_polynomial(text, system) for label, text in images.items()}
    report = verify_special_embedding(algebra, parsed, system)
    return WitnessResult(name=name, target=system.name,
                         images={k: format_polynomial(v, system) for k, v in parsed.items()}, report=report)


def k3_witness() -> WitnessResult:
    """K3 inside M_{1|1}(W1)^(+)."""
    return _witness("K3", catalog.get("K3").algebra, matrix_superalgebra(1, 1, weyl_algebra()), K3_IMAGES)


def s13_witness(images: Optional[Mapping[str, str]] = None) -> WitnessResult:
    """S3_1 inside M_{1|2}^(+) with e1 -> e23."""
    return _witness("S3_1", catalog.get("S3_1").algebra, matrix_superalgebra(1, 2), images or S13_IMAGES)


def s83_witness(relation: str = "commutator") -> WitnessResult:
    """S3_8 (the superform algebra of a rank-2 odd space) inside the odd Weyl superalgebra, found by search."""
    algebra = catalog.get("S3_8").algebra
    system = odd_weyl_superalgebra(1, relation)
    found = search_embedding(algebra, system)
    if found is None:
        report = IdentityReport(identity=f"special embedding into {system.name}")
        report.add(("search",), "no embedding within the search bounds", "search")
        return WitnessResult(name="S3_8", target=system.name, report=report)
    report = verify_special_embedding(algebra, found, system)
    return WitnessResult(name="S3_8", target=system.name,
                         images={k: format_polynomial(v, system) for k, v in found.items()}, report=report)


UT6_TABLE = {
    ("1", "1"): {"1": 1}, ("1", "e1"): {"e1": 1}, ("1", "e2"): {"e2": 1}, ("1", "e3"): {"e3": 1},
    ("1", "e4"): {"e4": 1},
    ("e1", "1"): {"e1": 1}, ("e1", "e1"): {"e1": 1}, ("e1", "e2"): {"e4": 1}, ("e1", "e3"): {"e3": 1},
    ("e1", "e4"): {"e4": 1},
    ("e2", "1"): {"e2": 1}, ("e2", "e1"): {"e2": 1, "e4": -1},
    ("e3", "1"): {"e3": 1}, ("e3", "e1"): {"e3": 1},
    ("e4", "1"): {"e4": 1},
}


def universal_envelope_t6(graded: bool = False) -> SuperAlgebra:
    """
    The 5-dimensional envelope of T6 with basis 1, e1..e4; graded=True puts
    e3 in the odd part (basis order 1, e1, e2, e4, e3).
    """
    labels = ["1", "e1", "e2", "e4", "e3"] if graded else ["1", "e1", "e2", "e3", "e4"]
    n, m = (4, 1) if graded else (5, 0)
    return SuperAlgebra.from_products(n, m, RATIONALS, UT6_TABLE, labels=labels, complete=False,
                                      name="U(T6)" + ("-graded" if graded else ""))


def ut6_witness(graded: bool = False) -> WitnessResult:
    """U(T6) as an envelope of T6, or of S3_12 when graded."""
    envelope = universal_envelope_t6(graded)
    if graded:
        algebra = catalog.get("S3_12").algebra
        inclusion = {"e1": "e1", "e2": "e2", "o1": "e3"}
    else:
        algebra = catalog.get("T6").algebra
        inclusion = {"e1": "e1", "e2": "e2", "e3": "e3"}
    report = verify_associative_envelope_table(envelope, algebra, inclusion)
    return WitnessResult(name=algebra.name, target=envelope.name, images=dict(inclusion), report=report)


WITNESSES = {
    "K3": k3_witness,
    "S1_3": s13_witness,
    "UT6": lambda: ut6_witness(graded=False),
    "UT6-graded": lambda: ut6_witness(graded=True),
    "S8_3": s83_witness,
}
