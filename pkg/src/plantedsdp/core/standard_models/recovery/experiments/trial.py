"""
Context: Recovery || Category: Experiments || **Command: trial**.

This module defines the TrialRecord model and the Data model of the
per-trial table written next to every sweep.
"""

import pandera.polars as pa
import polars as pl
from pydantic import BaseModel, ConfigDict, Field

from plantedsdp.core.standard_models.abstract.data import Data
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.utils.constants import TRIAL_METHODS
from plantedsdp.core.utils.descriptions import DATA_DESCRIPTIONS


TRIAL_SCHEMA = {
    "point_index": pl.Int64,
    "trial_index": pl.Int64,
    "seed": pl.Int64,
    "a": pl.Float64,
    "b": pl.Float64,
    "rho": pl.Float64,
    "n": pl.Int64,
    "method": pl.String,
    "certificate_pass": pl.Boolean,
    "sdp_integral": pl.Boolean,
    "rounding_agrees": pl.Boolean,
    "witness_found": pl.Boolean,
    "event_e1": pl.Boolean,
    "event_e2": pl.Boolean,
    "event_e3": pl.Boolean,
    "solver_iterations": pl.Int64,
    "wall_time_ms": pl.Float64,
    "failure_reason": pl.String,
}


class TrialRecord(BaseModel):
    """
    Outcome of one sampled instance.

    Outcomes of methods that did not run stay None. `success` follows the
    requested `method`: the certificate verdict for Certificate trials (an
    audit solve only fills `sdp_integral`), SDP integrality otherwise, with
    the certificate as fallback when the solver did not finish.
    """

    model_config = ConfigDict(frozen=True)

    trial_index: int = Field(ge=0)
    seed: int = Field(ge=0)
    params: ModelParams
    method: TRIAL_METHODS
    certificate_pass: bool | None = None
    sdp_integral: bool | None = None
    rounding_agrees: bool | None = None
    witness_found: bool | None = None
    event_e1: bool | None = None
    event_e2: bool | None = None
    event_e3: bool | None = None
    solver_iterations: int | None = None
    wall_time_ms: float = 0.0
    failure_reason: str | None = None

    @property
    def success(self) -> bool:
        if self.method == "Certificate" or self.sdp_integral is None:
            return bool(self.certificate_pass)
        return self.sdp_integral

    @property
    def soundness_violated(self) -> bool:
        """A passing certificate with a non-integral SDP solution."""
        return self.certificate_pass is True and self.sdp_integral is False

    def to_row(self, point_index: int = 0) -> dict[str, object]:
        return {
            "point_index": point_index,
            "trial_index": self.trial_index,
            "seed": self.seed,
            "a": self.params.a,
            "b": self.params.b,
            "rho": self.params.rho,
            "n": self.params.n,
            "method": self.method,
            "certificate_pass": self.certificate_pass,
            "sdp_integral": self.sdp_integral,
            "rounding_agrees": self.rounding_agrees,
            "witness_found": self.witness_found,
            "event_e1": self.event_e1,
            "event_e2": self.event_e2,
            "event_e3": self.event_e3,
            "solver_iterations": self.solver_iterations,
            "wall_time_ms": self.wall_time_ms,
            "failure_reason": self.failure_reason,
        }


class TrialData(Data):
    """Data model for the per-trial table, a Pandera.Polars Model."""

    point_index: int = pa.Field(ge=0, description=DATA_DESCRIPTIONS["point_index"])
    trial_index: int = pa.Field(ge=0, description=DATA_DESCRIPTIONS["trial_index"])
    seed: int = pa.Field(ge=0, description=DATA_DESCRIPTIONS["seed"])
    a: float = pa.Field(nullable=True, description=DATA_DESCRIPTIONS["a"])
    b: float = pa.Field(nullable=True, description=DATA_DESCRIPTIONS["b"])
    rho: float = pa.Field(gt=0.0, le=1.0, description=DATA_DESCRIPTIONS["rho"])
    n: int = pa.Field(ge=2, description=DATA_DESCRIPTIONS["n"])
    method: str = pa.Field(
        isin=["Certificate", "SdpSolve", "Both"],
        description=DATA_DESCRIPTIONS["method"],
    )
    certificate_pass: bool = pa.Field(
        nullable=True, description=DATA_DESCRIPTIONS["certificate_pass"]
    )
    sdp_integral: bool = pa.Field(
        nullable=True, description=DATA_DESCRIPTIONS["sdp_integral"]
    )
    rounding_agrees: bool = pa.Field(
        nullable=True, description=DATA_DESCRIPTIONS["rounding_agrees"]
    )
    witness_found: bool = pa.Field(
        nullable=True, description=DATA_DESCRIPTIONS["witness_found"]
    )
    event_e1: bool = pa.Field(nullable=True, description=DATA_DESCRIPTIONS["event_e1"])
    event_e2: bool = pa.Field(nullable=True, description=DATA_DESCRIPTIONS["event_e2"])
    event_e3: bool = pa.Field(nullable=True, description=DATA_DESCRIPTIONS["event_e3"])
    solver_iterations: int = pa.Field(
        nullable=True, description=DATA_DESCRIPTIONS["solver_iterations"]
    )
    wall_time_ms: float = pa.Field(ge=0.0, description=DATA_DESCRIPTIONS["wall_time_ms"])
    failure_reason: str = pa.Field(
        nullable=True, description=DATA_DESCRIPTIONS["failure_reason"]
    )
