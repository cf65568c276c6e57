"""
Context: Recovery || Category: SDP Solver || **Types: SolverOptions, SdpProblem, SdpSolution**.

This module defines the QueryParams of the ADMM solver and the problem and
solution containers it works on.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from plantedsdp.core.standard_models.abstract.query_params import QueryParams
from plantedsdp.core.utils.constants import SDP_KINDS, SOLVER_STATUSES

SOLVER_QUERY_DESCRIPTIONS = {
    "tol": "Absolute and relative stopping tolerance on both residuals.",
    "max_iters": "Maximum number of ADMM iterations.",
    "rho_penalty": "Initial ADMM penalty parameter.",
    "adapt_penalty": "Rebalance the penalty when one residual dominates the other.",
    "residual_ratio": "Residual ratio that triggers a penalty update.",
    "adapt_iters": "Iterations during which the penalty may change; it is frozen afterwards.",
    "penalty_factor": "Multiplicative penalty update.",
    "penalty_min": "Lower bound on the penalty parameter.",
    "penalty_max": "Upper bound on the penalty parameter.",
    "divergence_limit": "Residual size treated as divergence.",
    "log_every": "Iterations between DEBUG progress lines.",
}


class SolverOptions(QueryParams):
    """
    QueryParams model for the ADMM SDP solver.

    Parameters
    ----------
    tol : float
        Convergence tolerance, default 1e-6.
    max_iters : int
        Iteration cap, default 5000.
    rho_penalty : float
        Initial penalty, default 1.0.
    adapt_penalty : bool
        Residual balancing on or off.
    adapt_iters : int
        Residual balancing only runs during the first `adapt_iters`
        iterations, default 100, so the tail of the run uses a fixed penalty.
    """

    tol: float = Field(
        default=1e-6, gt=0.0, title="Tolerance",
        description=SOLVER_QUERY_DESCRIPTIONS["tol"],
    )
    max_iters: int = Field(
        default=5000, ge=1, title="Max Iterations",
        description=SOLVER_QUERY_DESCRIPTIONS["max_iters"],
    )
    rho_penalty: float = Field(
        default=1.0, gt=0.0, title="Penalty",
        description=SOLVER_QUERY_DESCRIPTIONS["rho_penalty"],
    )
    adapt_penalty: bool = Field(
        default=True, title="Adaptive Penalty",
        description=SOLVER_QUERY_DESCRIPTIONS["adapt_penalty"],
    )
    residual_ratio: float = Field(
        default=10.0, gt=1.0, title="Residual Ratio",
        description=SOLVER_QUERY_DESCRIPTIONS["residual_ratio"],
    )
    adapt_iters: int = Field(
        default=100, ge=0, title="Adaptation Window",
        description=SOLVER_QUERY_DESCRIPTIONS["adapt_iters"],
    )
    penalty_factor: float = Field(
        default=2.0, gt=1.0, title="Penalty Factor",
        description=SOLVER_QUERY_DESCRIPTIONS["penalty_factor"],
    )
    penalty_min: float = Field(
        default=1e-3, gt=0.0, title="Penalty Floor",
        description=SOLVER_QUERY_DESCRIPTIONS["penalty_min"],
    )
    penalty_max: float = Field(
        default=1e3, gt=0.0, title="Penalty Ceiling",
        description=SOLVER_QUERY_DESCRIPTIONS["penalty_max"],
    )
    divergence_limit: float = Field(
        default=1e6, gt=0.0, title="Divergence Limit",
        description=SOLVER_QUERY_DESCRIPTIONS["divergence_limit"],
    )
    log_every: int = Field(
        default=100, ge=1, title="Log Interval",
        description=SOLVER_QUERY_DESCRIPTIONS["log_every"],
    )

    @model_validator(mode="after")
    def check_penalty_bounds(self) -> "SolverOptions":
        if not self.penalty_min <= self.rho_penalty <= self.penalty_max:
            msg = "rho_penalty must lie within [penalty_min, penalty_max]"
            raise ValueError(msg)
        return self


class SdpProblem(BaseModel):
    """
    One of the four SDP relaxations over a 0/1 adjacency matrix.

    MIN kinds are solved as MAX over the negated adjacency.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: SDP_KINDS
    adjacency: np.ndarray
    K: int | None = None  # noqa: N815

    @field_validator("adjacency", mode="before")
    @classmethod
    def coerce_adjacency(cls, v: object) -> np.ndarray:
        arr = np.array(v, dtype=np.float64, copy=True)
        arr.setflags(write=False)
        return arr

    @property
    def n(self) -> int:
        return int(self.adjacency.shape[0])

    @property
    def is_pds(self) -> bool:
        return self.kind.startswith("PDS")

    @property
    def is_min(self) -> bool:
        return self.kind.endswith("MIN")


class SdpSolution(BaseModel):
    """Result of an ADMM run: the averaged block iterate and its diagnostics."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: SDP_KINDS
    Y: np.ndarray  # noqa: N815
    K: int | None = None  # noqa: N815
    objective: float = Field(description="<A, Y> with the original sign of A.")
    iterations: int
    primal_residual: float
    dual_residual: float
    penalty: float = Field(description="Penalty parameter at termination.")
    status: SOLVER_STATUSES

    @property
    def n(self) -> int:
        return int(self.Y.shape[0])

    def summary(self) -> dict[str, object]:
        """Scalar diagnostics, without the matrix."""
        return self.model_dump(exclude={"Y"})
