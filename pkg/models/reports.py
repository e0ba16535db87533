"""
Report models
One IdentityReport per verified instance, plus the trailing run summary.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class IdentityReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    identity_id: str = Field(..., alias="identityId")
    params: Dict[str, int] = Field(default_factory=dict)
    passed: bool
    lhs: Optional[str] = Field(None, description="Rendered left side, omitted when too large")
    rhs: Optional[str] = Field(None, description="Rendered right side, omitted when too large")
    first_mismatch_exp: Optional[int] = Field(None, alias="firstMismatchExp")
    negative_witness: Optional[int] = Field(None, alias="negativeWitness")
    cross_mismatch_exp: Optional[int] = Field(
        None, alias="crossMismatchExp", description="First exponent where the right side differs from its cross-check"
    )
    error: Optional[str] = Field(None, description="Exception raised while building the sides")
    elapsed_millis: int = Field(0, alias="elapsedMillis")
    cap: Optional[int] = Field(None, description="Truncation cap, series identities only")
    notes: List[str] = Field(default_factory=list)

    def sort_key(self):
        return (self.identity_id, tuple(sorted(self.params.items())))

    def to_wire(self, stable: bool = False) -> dict:
        data = self.model_dump(by_alias=True)
        if stable:
            data["elapsedMillis"] = 0
        for key in ("cap", "crossMismatchExp", "error"):
            if data.get(key) is None:
                data.pop(key, None)
        if not data.get("notes"):
            data.pop("notes", None)
        return data


class RunSummary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0
