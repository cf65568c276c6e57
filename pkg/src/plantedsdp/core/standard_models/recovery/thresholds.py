"""
Context: Recovery || Category: Thresholds || **Type: ThresholdPoint**.
"""

from pydantic import BaseModel, ConfigDict, Field


class ThresholdPoint(BaseModel):
    """Threshold quantities evaluated at one (a, b, rho)."""

    model_config = ConfigDict(frozen=True)

    a: float = Field(ge=0.0)
    b: float = Field(ge=0.0)
    rho: float = Field(gt=0.0, le=1.0)
    tau_star: float
    f_value: float = Field(description="f(a, b).")
    pds_margin: float = Field(description="rho * f(a, b) - 1.")
    sbm_gap: float = Field(description="(sqrt(a) - sqrt(b))^2 - 2.")
