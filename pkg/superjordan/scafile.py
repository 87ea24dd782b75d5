"""
Reading and writing the ".sca" structure-constant format (UTF-8 JSON) and
the matrix form of graded maps.
"""

import json
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .algebra import SuperAlgebra, default_labels
from .errors import AlgebraError, FieldError, ScaParseError
from .exactfield import field_from_spec, field_to_spec
from .logger import get_logger

logger = get_logger(__name__)


class ProductEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    left: str = Field(..., description="Label of the left factor")
    right: str = Field(..., description="Label of the right factor")
    result: List[Tuple[str, str]] = Field(default_factory=list, description="[coefficient, label] pairs")


class ScaDocument(BaseModel):
    dim_even: int = Field(..., ge=0)
    dim_odd: int = Field(..., ge=0)
    field: Union[str, Dict[str, Any]] = Field("rational", description='"rational", {"prime": p} or {"prime": p, "ext": true}')
    labels: Optional[List[str]] = None
    name: Optional[str] = None
    products: List[ProductEntry] = Field(default_factory=list)

    @field_validator("field")
    @classmethod
    def known_field(cls, value):
        field_from_spec(value)
        return value


class GradedMapDocument(BaseModel):
    even_block: List[List[str]] = Field(default_factory=list)
    odd_block: List[List[str]] = Field(default_factory=list)


def _locate(text: str, loc: Tuple) -> Tuple[int, int]:
    """Best-effort line/column of the innermost named key of a validation error."""
    for key in reversed(loc):
        if isinstance(key, str):
            match = re.search(rf'"{re.escape(key)}"\s*:', text)
            if match:
                line = text.count("\n", 0, match.start()) + 1
                column = match.start() - (text.rfind("\n", 0, match.start()) + 1) + 1
                return line, column
    return 1, 1


def _decode(text: str, model):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ScaParseError(ex.msg, ex.lineno, ex.colno) from None
    try:
        return model.model_validate(raw)
    except ValidationError as ex:
        first = ex.errors()[0]
        line, column = _locate(text, first["loc"])
        where = ".".join(str(k) for k in first["loc"])
        raise ScaParseError(f"{where}: {first['msg']}", line, column) from None
    except FieldError as ex:
        raise ScaParseError(str(ex), *_locate(text, ("field",))) from None


def loads_sca(text: str, complete: bool = True) -> SuperAlgebra:
    """
    Parse ".sca" text. With complete=False the transposed products are taken
    exactly as written, which keeps deliberately broken tables broken.
    """
    doc = _decode(text, ScaDocument)
    field = field_from_spec(doc.field)
    products: Dict[Tuple[str, str], Dict[str, Any]] = {}
    try:
        for entry in doc.products:
            result = products.setdefault((entry.left, entry.right), {})
            for coeff, label in entry.result:
                result[label] = field.parse(coeff) + result[label] if label in result else field.parse(coeff)
        return SuperAlgebra.from_products(doc.dim_even, doc.dim_odd, field, products, labels=doc.labels,
                                          complete=complete, name=doc.name)
    except (AlgebraError, FieldError) as ex:
        raise ScaParseError(str(ex), *_locate(text, ("products",))) from None


def load_sca(path: Union[str, Path], complete: bool = True) -> SuperAlgebra:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as ex:
        raise ScaParseError(f"cannot read {path}: {ex.strerror}") from None
    return loads_sca(text, complete=complete)


def to_document(algebra: SuperAlgebra) -> ScaDocument:
    d = algebra.dim
    products = []

    def entry(i, j):
        return ProductEntry(left=algebra.labels[i], right=algebra.labels[j],
                            result=[(str(c), algebra.labels[k]) for k, c in algebra.table[i][j]])

    for i in range(d):
        for j in range(i, d):
            if algebra.table[i][j] or algebra.table[j][i]:
                products.append(entry(i, j))
            if i == j:
                continue
            sign = -1 if algebra.parity(i) and algebra.parity(j) else 1
            completed = tuple((k, c * sign) for k, c in algebra.table[i][j])
            if completed != algebra.table[j][i]:
                products.append(entry(j, i))
    labels = list(algebra.labels)
    return ScaDocument(
        dim_even=algebra.dim_even,
        dim_odd=algebra.dim_odd,
        field=field_to_spec(algebra.field),
        labels=None if labels == default_labels(algebra.dim_even, algebra.dim_odd) else labels,
        name=algebra.name,
        products=products,
    )


def dumps_sca(algebra: SuperAlgebra) -> str:
    doc = to_document(algebra)
    return json.dumps(doc.model_dump(exclude_none=True), indent=2, ensure_ascii=False) + "\n"


def save_sca(algebra: SuperAlgebra, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_sca(algebra), encoding="utf-8")
    logger.debug("wrote %s", path)
    return path


def dumps_graded_map(f) -> str:
    """Both blocks of a GradedMap as matrices of coefficient strings."""
    doc = GradedMapDocument(
        even_block=[[str(c) for c in row] for row in f.even_block],
        odd_block=[[str(c) for c in row] for row in f.odd_block],
    )
    return json.dumps(doc.model_dump(), indent=2) + "\n"


def loads_graded_map(text: str, source: SuperAlgebra, target: SuperAlgebra):
    from .iso import GradedMap

    doc = _decode(text, GradedMapDocument)
    field = target.field
    try:
        even = [[field.parse(c) for c in row] for row in doc.even_block]
        odd = [[field.parse(c) for c in row] for row in doc.odd_block]
        return GradedMap(source, target, even, odd)
    except (AlgebraError, FieldError) as ex:
        raise ScaParseError(str(ex)) from None
