"""
Phase Diagram Standard Model.

Context: Recovery || Category: Experiments || **Command: phase_diagram**.

This module is used to define the QueryParams, the Data model and the
Fetcher of the phase-diagram sweep.
"""

from typing import Literal

import pandera.polars as pa
import polars as pl
from pandera.api.polars.types import PolarsData
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from plantedsdp.core.standard_models.abstract.data import Data
from plantedsdp.core.standard_models.abstract.errors import PlantedSdpError
from plantedsdp.core.standard_models.abstract.query_params import QueryParams
from plantedsdp.core.standard_models.abstract.recoveryobject import RecoveryObject
from plantedsdp.core.standard_models.abstract.warnings import PlantedSdpWarning
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.sdp import SolverOptions
from plantedsdp.core.utils.constants import TRIAL_METHODS
from plantedsdp.core.utils.descriptions import DATA_DESCRIPTIONS
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import log_start_end, setup_logger

env = Env()
logger = setup_logger("PhaseDiagramFetcher", level=env.LOGGER_LEVEL)

SWEEP_SCHEMA = {
    "a": pl.Float64,
    "b": pl.Float64,
    "rho": pl.Float64,
    "n": pl.Int64,
    "trials": pl.Int64,
    "successes": pl.Int64,
    "wilson_lo": pl.Float64,
    "wilson_hi": pl.Float64,
    "theory_margin": pl.Float64,
}

PHASE_DIAGRAM_QUERY_DESCRIPTIONS = {
    "kind": "Model swept: SBM or PDS.",
    "a_grid": "Sorted in-cluster intensities, a list or a `start:stop:step` string.",
    "b_grid": "Sorted background intensities, a list or a `start:stop:step` string.",
    "rho": "Cluster fraction of the PDS model; ignored for the SBM.",
    "n": "Number of vertices of every sampled graph.",
    "trials_per_point": "Trials run at every grid point.",
    "method": "Recovery test per trial: Certificate, SdpSolve or Both.",
    "base_seed": "Seed every point and trial seed is derived from.",
    "threads": "Worker pool size.",
    "use_processes": "Run trials in a process pool instead of a thread pool.",
    "audit_fraction": "Share of Certificate trials that also run the SDP solver.",
    "chart": "Whether to build the SVG heatmap.",
    "solver": "Options of the ADMM solver.",
}


class PhaseDiagramQueryParams(QueryParams):
    """
    QueryParams model for the phase_diagram command, a Pydantic v2 model.

    Parameters
    ----------
    kind : Literal["SBM", "PDS"]
        The swept model.
    a_grid, b_grid : list[float]
        Intensity grids, sorted ascending. Strings are parsed as
        `start:stop:step` (inclusive) or comma-separated values.
    rho : float
        PDS cluster fraction, default 0.5.
    n : int
        Graph size.
    trials_per_point : int
        At least 1, default 50.
    method : Literal["Certificate", "SdpSolve", "Both"]
        Default Certificate, audited on `audit_fraction` of the trials.
    base_seed : int
        Default 0.
    threads : int
        Defaults to `PLANTEDSDP_THREADS`.
    """

    kind: Literal["SBM", "PDS"] = Field(
        default="SBM",
        title="Model Kind",
        description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["kind"],
    )
    a_grid: list[float] = Field(
        title="a Grid", description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["a_grid"]
    )
    b_grid: list[float] = Field(
        title="b Grid", description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["b_grid"]
    )
    rho: float = Field(
        default=0.5,
        gt=0.0,
        le=1.0,
        title="Cluster Fraction",
        description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["rho"],
    )
    n: int = Field(ge=2, title="Vertices", description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["n"])
    trials_per_point: int = Field(
        default=50,
        ge=1,
        title="Trials per Point",
        description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["trials_per_point"],
    )
    method: TRIAL_METHODS = Field(
        default="Certificate",
        title="Method",
        description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["method"],
    )
    base_seed: int = Field(
        default=0,
        ge=0,
        title="Base Seed",
        description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["base_seed"],
    )
    threads: int = Field(
        default_factory=lambda: Env().THREADS,
        ge=1,
        title="Threads",
        description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["threads"],
    )
    use_processes: bool = Field(
        default_factory=lambda: Env().USE_PROCESSES,
        title="Use Processes",
        description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["use_processes"],
    )
    audit_fraction: float = Field(
        default=0.1,
        ge=0.0,
        le=1.0,
        title="Audit Fraction",
        description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["audit_fraction"],
    )
    chart: bool = Field(
        default=False,
        title="Chart",
        description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["chart"],
    )
    solver: SolverOptions | None = Field(
        default=None,
        title="Solver Options",
        description=PHASE_DIAGRAM_QUERY_DESCRIPTIONS["solver"],
    )

    @field_validator("a_grid", "b_grid", mode="before")
    @classmethod
    def parse_grid_string(cls, v: object) -> object:
        """Accept `start:stop:step` and comma-separated strings."""
        if isinstance(v, str):
            from plantedsdp.recovery.experiments.phase_diagram.helpers import (
                parse_grid,
            )

            try:
                return parse_grid(v)
            except PlantedSdpError as e:
                raise ValueError(str(e)) from e
        if isinstance(v, int | float):
            return [float(v)]
        return v

    @model_validator(mode="after")
    def check_sorted(self) -> "PhaseDiagramQueryParams":
        for name in ("a_grid", "b_grid"):
            grid = getattr(self, name)
            if not grid:
                msg = f"{name} must not be empty"
                raise ValueError(msg)
            if grid != sorted(grid):
                msg = f"{name} must be sorted ascending"
                raise ValueError(msg)
            if grid[0] < 0:
                msg = f"{name} holds a negative intensity {grid[0]}"
                raise ValueError(msg)
        return self


class SweepData(Data):
    """
    Data model for the phase_diagram command, a Pandera.Polars Model.

    One row per grid point, in row-major (a, b) order. Points whose
    intensities are invalid at this n carry trials = 0 and null intervals.
    """

    a: float = pa.Field(ge=0.0, title="a", description=DATA_DESCRIPTIONS["a"])
    b: float = pa.Field(ge=0.0, title="b", description=DATA_DESCRIPTIONS["b"])
    rho: float = pa.Field(gt=0.0, le=1.0, description=DATA_DESCRIPTIONS["rho"])
    n: int = pa.Field(ge=2, description=DATA_DESCRIPTIONS["n"])
    trials: int = pa.Field(ge=0, description=DATA_DESCRIPTIONS["trials"])
    successes: int = pa.Field(ge=0, description=DATA_DESCRIPTIONS["successes"])
    wilson_lo: float = pa.Field(
        ge=0.0, le=1.0, nullable=True, description=DATA_DESCRIPTIONS["wilson_lo"]
    )
    wilson_hi: float = pa.Field(
        ge=0.0, le=1.0, nullable=True, description=DATA_DESCRIPTIONS["wilson_hi"]
    )
    theory_margin: float = pa.Field(
        nullable=True, description=DATA_DESCRIPTIONS["theory_margin"]
    )

    @pa.dataframe_check
    def successes_within_trials(cls, data: PolarsData) -> pl.LazyFrame:
        return data.lazyframe.select(pl.col("successes") <= pl.col("trials"))


class SweepResult(BaseModel):
    """Everything a sweep produced, before it is packed into a RecoveryObject."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: Literal["SBM", "PDS"]
    points: pl.DataFrame
    trials: pl.DataFrame
    seeds: dict[int, list[int]]
    point_seeds: list[int]
    base_seed: int
    boundary: dict[float, dict[str, float | None]]
    soundness_violations: int = 0
    point_errors: dict[int, str] = Field(default_factory=dict)


class PhaseDiagramFetcher:
    """
    Fetcher for the phase_diagram command.

    Parameters
    ----------
    context_params : ModelParams | None
        The Recovery context the sweep was launched from, if any; recorded
        on the result only.
    command_params : PhaseDiagramQueryParams | dict
        The sweep parameters.

    Returns
    -------
    RecoveryObject
        results : SweepData
            Serialized per-point table.
        trials : TrialData
            Serialized per-trial table.
        warnings : list[PlantedSdpWarning] | None
            Soundness violations and skipped grid points.
        chart : Chart | None
            SVG heatmap when `chart=True`.
        extra : dict
            `base_seed`, the seed list of every point (`seeds`) and the
            theoretical `boundary` per a.
    """

    def __init__(
        self,
        context_params: ModelParams | None,
        command_params: PhaseDiagramQueryParams | dict,
    ):
        self.context_params = context_params
        self.command_params = command_params

    def transform_query(self):
        """Validate the command parameters."""
        if isinstance(self.command_params, dict):
            self.command_params = PhaseDiagramQueryParams(**self.command_params)
        return self

    def extract_data(self):
        """Run the sweep."""
        from plantedsdp.recovery.experiments.phase_diagram.model import (
            sweep_phase_diagram,
        )

        params: PhaseDiagramQueryParams = self.command_params
        self.sweep: SweepResult = sweep_phase_diagram(
            kind=params.kind,
            a_grid=params.a_grid,
            b_grid=params.b_grid,
            rho=params.rho,
            n=params.n,
            trials_per_point=params.trials_per_point,
            method=params.method,
            base_seed=params.base_seed,
            threads=params.threads,
            audit_fraction=params.audit_fraction,
            solver_options=params.solver,
            use_processes=params.use_processes,
        )
        return self

    def transform_data(self):
        """Build the chart, the warnings and serialize the tables."""
        from plantedsdp.recovery.experiments.phase_diagram.view import (
            generate_heatmap,
        )

        sweep = self.sweep
        self.chart = None
        if self.command_params.chart:
            self.chart = generate_heatmap(
                sweep.points,
                sweep.boundary,
                title=f"{sweep.kind} n={self.command_params.n}",
            )

        self.warnings = []
        if sweep.soundness_violations:
            self.warnings.append(
                PlantedSdpWarning(
                    category="SoundnessViolation",
                    message=f"{sweep.soundness_violations} trial(s) passed the certificate with a non-integral SDP solution",
                )
            )
        for point_index, reason in sweep.point_errors.items():
            self.warnings.append(
                PlantedSdpWarning(
                    category="SkippedPoint",
                    message=f"grid point {point_index}: {reason}",
                )
            )

        self.transformed_data = sweep.points.lazy().serialize(format="binary")
        self.trial_data = sweep.trials.lazy().serialize(format="binary")
        return self

    @log_start_end(logger=logger)
    def fetch_data(self) -> RecoveryObject:
        """Execute the TET pattern."""
        self.transform_query()
        self.extract_data()
        self.transform_data()

        return RecoveryObject(
            results=self.transformed_data,
            trials=self.trial_data,
            warnings=self.warnings or None,
            chart=self.chart,
            context_params=self.context_params,
            command_params=self.command_params,
            extra={
                "base_seed": self.sweep.base_seed,
                "seeds": {str(k): v for k, v in self.sweep.seeds.items()},
                "boundary": {
                    f"{a:g}": branches for a, branches in self.sweep.boundary.items()
                },
                "soundness_violations": self.sweep.soundness_violations,
            },
        )
