"""
Run configuration for the command-line driver
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator


class Command(str, Enum):
    VERIFY = "verify"
    VERIFY_ALL = "verify-all"
    SWEEP_POSITIVITY = "sweep-positivity"
    SWEEP_CONJECTURE = "sweep-conjecture"
    EXPAND = "expand"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class IntRange(BaseModel):
    """Inclusive integer range written ``a..b`` (a single ``a`` means ``a..a``)."""

    start: int
    stop: int

    @model_validator(mode="after")
    def _nonempty(self):
        if self.stop < self.start:
            raise ValueError(f"empty range {self.start}..{self.stop}")
        return self

    @classmethod
    def parse(cls, text: str) -> "IntRange":
        raw = text.strip()
        if ".." in raw:
            lo, _, hi = raw.partition("..")
            return cls(start=int(lo), stop=int(hi))
        value = int(raw)
        return cls(start=value, stop=value)

    def values(self) -> List[int]:
        return list(range(self.start, self.stop + 1))

    def __str__(self) -> str:
        return f"{self.start}..{self.stop}"


class RunConfig(BaseModel):
    command: Command
    identity_ids: List[str] = Field(default_factory=list)
    ranges: Dict[str, IntRange] = Field(default_factory=dict)
    cap: Optional[int] = Field(None, ge=0)
    output: Optional[str] = None
    format: OutputFormat = OutputFormat.TEXT
    parallelism: int = Field(1, ge=1)
    stable: bool = False
    size: int = Field(16, ge=0, description="bound on N + M for the conjecture sweep")
    family: str = "region"
    show_passing: bool = True
    render_limit: int = Field(400, ge=0)

    @model_validator(mode="after")
    def _ids_for_verify(self):
        if self.command == Command.VERIFY and not self.identity_ids:
            raise ValueError("verify needs at least one identity id")
        return self
