"""
Context: Recovery || Category: Oracle || **Type: OracleResult**.
"""

from pydantic import BaseModel, ConfigDict

from plantedsdp.core.standard_models.recovery.graph import Assignment


class OracleResult(BaseModel):
    """Maximum-likelihood optimum found by exhaustive enumeration."""

    model_config = ConfigDict(frozen=True)

    best: Assignment
    best_objective: int
    num_optima: int
    unique: bool
    candidates: int
