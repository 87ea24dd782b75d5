from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Violation(BaseModel):
    """One failing instance of an identity or containment."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    indices: Tuple[Union[int, str], ...] = Field(..., description="Basis indices (or component keys) of the failing instance")
    where: str = Field("", description="The same location spelled with basis labels")
    defect: str = Field(..., description="Textual form of the defect")
    element: Any = Field(default=None, exclude=True, description="The defect itself, when available")


class IdentityReport(BaseModel):
    identity: str = Field(..., description="Name of the checked property")
    holds: bool = True
    violations: List[Violation] = []
    notes: List[str] = []

    @model_validator(mode="after")
    def sync_holds(self):
        self.holds = not self.violations
        return self

    def add(self, indices, defect, where: str = "", element: Any = None) -> None:
        self.violations.append(Violation(indices=tuple(indices), where=where, defect=str(defect), element=element))
        self.holds = False

    def note(self, text: str) -> None:
        if text not in self.notes:
            self.notes.append(text)

    def render(self, limit: Optional[int] = None) -> str:
        status = "holds" if self.holds else f"FAILS ({len(self.violations)} violations)"
        lines = [f"{self.identity}: {status}"]
        lines += [f"  note: {n}" for n in self.notes]
        shown = self.violations if limit is None else self.violations[:limit]
        for v in shown:
            lines.append(f"  at {v.where or v.indices}: {v.defect}")
        if limit is not None and len(self.violations) > limit:
            lines.append(f"  ... {len(self.violations) - limit} more")
        return "\n".join(lines)


class Fingerprint(BaseModel):
    """Isomorphism invariants computed from a structure-constant table."""
    model_config = ConfigDict(frozen=True)

    type: Tuple[int, int]
    is_associative: bool
    is_unital: bool
    dim_square: int
    dim_annihilator: int
    dim_odd_square: int
    is_nilpotent: bool
    idempotent_count: int = Field(..., description="Nonzero even idempotents over the probe field")
    even_part: Optional["Fingerprint"] = None


class OrbitReport(BaseModel):
    representative: str = Field(..., description="Nonzero products of the canonical member")
    size: int
    catalog_name: Optional[str] = None
    field: str = Field(..., description="Field on which the match was found")


class ClassificationReport(BaseModel):
    template: str
    field: str
    unknowns: List[str]
    solution_count: int
    orbit_count: int
    orbits: List[OrbitReport] = []
    unmatched: List[str] = []
    warnings: List[str] = []
    representatives: List[Any] = Field(default_factory=list, exclude=True)

    def render(self) -> str:
        lines = [
            f"template {self.template} over {self.field} (unknowns: {', '.join(self.unknowns) or 'none'})",
            f"solutions: {self.solution_count}",
            f"orbits: {self.orbit_count}",
        ]
        lines += [f"  {w}" for w in self.warnings]
        for k, orbit in enumerate(self.orbits, 1):
            name = orbit.catalog_name or "UNMATCHED"
            lines.append(f"  [{k}] size {orbit.size} -> {name} ({orbit.field}): {orbit.representative}")
        if self.unmatched:
            lines.append(f"unmatched: {len(self.unmatched)}")
        return "\n".join(lines)


class CommandResult(BaseModel):
    status: int = Field(0, ge=0, le=2, description="0 success, 1 property violated, 2 usage or input error")
    report: str = ""
    payload: Optional[Dict[str, Any]] = None


Fingerprint.model_rebuild()
