"""
Parameter models for the verifier
Exact integer parameters only: fractional alpha, beta travel as the integer pair (alphaK, betaK).
"""

from enum import Enum
from fractions import Fraction
from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator


class KernelKind(str, Enum):
    C = "C"
    W = "W"
    O = "O"


class GParams(BaseModel):
    """Parameters (N, M, alpha*K, beta*K, K) of a Bressoud polynomial G(N, M, alpha, beta, K; q)."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    N: int
    M: int
    alpha_k: int = Field(..., ge=0, alias="alphaK", description="alpha * K")
    beta_k: int = Field(..., ge=0, alias="betaK", description="beta * K")
    K: int = Field(..., ge=2)

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.alpha_k, self.K)

    @property
    def beta(self) -> Fraction:
        return Fraction(self.beta_k, self.K)

    def as_params(self) -> dict:
        return {"N": self.N, "M": self.M, "alphaK": self.alpha_k, "betaK": self.beta_k, "K": self.K}

    def label(self) -> str:
        return f"G({self.N}, {self.M}, {self.alpha}, {self.beta}, {self.K})"


class RegionVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    in_region: bool
    violated: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _consistent(self):
        if self.in_region == bool(self.violated):
            raise ValueError("in_region must hold exactly when no constraint is violated")
        return self


class FodaQuanoParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    nu: int = Field(..., ge=1)
    s: int = Field(..., ge=0)
    L: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _s_below_nu(self):
        if self.s >= self.nu:
            raise ValueError(f"s must satisfy 0 <= s <= nu - 1, got s={self.s}, nu={self.nu}")
        return self

    def at_size(self, L: int) -> "FodaQuanoParams":
        return FodaQuanoParams(nu=self.nu, s=self.s, L=L)
