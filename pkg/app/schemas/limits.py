"""
Limits Schema - request/response bodies for cone lifting and pullback verification
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field

from .weil import MorphismPayload


class SquareSpec(BaseModel):
    """foundational(A, m, n) or the vertical-lift square"""
    kind: Literal["foundational", "vertical"] = "vertical"
    algebra: str = "N"
    m: int = 1
    n: int = 1

    def label(self) -> str:
        if self.kind == "vertical":
            return "vertical"
        return f"foundational({self.algebra},{self.m},{self.n})"


class LiftRequest(BaseModel):
    """A cone over the square, given by its two legs"""
    square: SquareSpec
    right: str
    bottom: str

    class Config:
        json_schema_extra = {
            "example": {
                "square": {"kind": "vertical"},
                "right": "[W -> W@W]{ x1 -> x1*x2 + 2*x2 }",
                "bottom": "[W -> N]{ x1 -> 0 }",
            }
        }


class LiftResult(BaseModel):
    square: str
    text: str
    lift: MorphismPayload


class VerifyPullbackRequest(BaseModel):
    square: SquareSpec
    seed: Optional[int] = None
    cones: Optional[int] = Field(default=None, ge=0)
