"""
Spectral Scaling Standard Model.

Context: Recovery || Category: Experiments || **Command: spectral_scaling**.

This module is used to define the QueryParams, the Data model and the
Fetcher of the spectral concentration experiment.
"""

import pandera.polars as pa
import polars as pl
from pydantic import BaseModel, ConfigDict, Field, field_validator

from plantedsdp.core.standard_models.abstract.data import Data
from plantedsdp.core.standard_models.abstract.query_params import QueryParams
from plantedsdp.core.standard_models.abstract.recoveryobject import RecoveryObject
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.utils.constants import SPECTRAL_RULES
from plantedsdp.core.utils.descriptions import DATA_DESCRIPTIONS
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import log_start_end, setup_logger

env = Env()
logger = setup_logger("SpectralScalingFetcher", level=env.LOGGER_LEVEL)

SPECTRAL_QUERY_DESCRIPTIONS = {
    "n_list": "Strictly ascending graph sizes.",
    "p_rule": "Edge probability rule: ConstTimesLogOverN (p = 2 ln n / n) or SubLog (p = ln n / (n ln ln n)).",
    "trials": "Samples per graph size.",
    "base_seed": "Seed every sample seed is derived from.",
    "threads": "Worker pool size.",
    "use_processes": "Run samples in a process pool instead of a thread pool.",
}

SPECTRAL_SCHEMA = {
    "n": pl.Int64,
    "trial_index": pl.Int64,
    "seed": pl.Int64,
    "p": pl.Float64,
    "ratio": pl.Float64,
    "floor": pl.Float64,
}


class SpectralScalingQueryParams(QueryParams):
    """
    QueryParams model for the spectral_scaling command, a Pydantic v2 model.

    Parameters
    ----------
    n_list : list[int]
        Graph sizes, strictly ascending. A comma-separated string is accepted.
    p_rule : Literal["ConstTimesLogOverN", "SubLog"]
        Default ConstTimesLogOverN.
    trials : int
        At least 1, default 20.
    """

    n_list: list[int] = Field(
        title="Sizes", description=SPECTRAL_QUERY_DESCRIPTIONS["n_list"]
    )
    p_rule: SPECTRAL_RULES = Field(
        default="ConstTimesLogOverN",
        title="Probability Rule",
        description=SPECTRAL_QUERY_DESCRIPTIONS["p_rule"],
    )
    trials: int = Field(
        default=20, ge=1, title="Trials", description=SPECTRAL_QUERY_DESCRIPTIONS["trials"]
    )
    base_seed: int = Field(
        default=0, ge=0, title="Base Seed", description=SPECTRAL_QUERY_DESCRIPTIONS["base_seed"]
    )
    threads: int = Field(
        default_factory=lambda: Env().THREADS,
        ge=1,
        title="Threads",
        description=SPECTRAL_QUERY_DESCRIPTIONS["threads"],
    )
    use_processes: bool = Field(
        default_factory=lambda: Env().USE_PROCESSES,
        title="Use Processes",
        description=SPECTRAL_QUERY_DESCRIPTIONS["use_processes"],
    )

    @field_validator("n_list", mode="before")
    @classmethod
    def split_sizes(cls, v: object) -> object:
        if isinstance(v, str):
            return [int(x) for x in v.split(",") if x.strip()]
        if isinstance(v, int):
            return [v]
        return v

    @field_validator("n_list", mode="after")
    @classmethod
    def check_ascending(cls, v: list[int]) -> list[int]:
        if not v or any(b <= a for a, b in zip(v, v[1:])):
            msg = "n_list must be non-empty and strictly ascending"
            raise ValueError(msg)
        return v


class SpectralData(Data):
    """Data model for the spectral_scaling command, a Pandera.Polars Model."""

    n: int = pa.Field(ge=2, description=DATA_DESCRIPTIONS["n"])
    trial_index: int = pa.Field(ge=0, description=DATA_DESCRIPTIONS["trial_index"])
    seed: int = pa.Field(ge=0, description=DATA_DESCRIPTIONS["seed"])
    p: float = pa.Field(gt=0.0, le=1.0, description=DATA_DESCRIPTIONS["p"])
    ratio: float = pa.Field(ge=0.0, description=DATA_DESCRIPTIONS["ratio"])
    floor: float = pa.Field(nullable=True, description=DATA_DESCRIPTIONS["floor"])


class MedianTrend(BaseModel):
    """Result of the consecutive-n sign test on a spectral table."""

    model_config = ConfigDict(frozen=True)

    n: list[int]
    medians: list[float]
    strictly_increasing: bool
    increases: int
    pairs: int
    z_score: float
    p_value: float | None = None
    significant: bool


class SpectralScalingFetcher:
    """
    Fetcher for the spectral_scaling command.

    Returns
    -------
    RecoveryObject
        results : SpectralData
            One row per sample.
        extra : dict
            `trend`, the MedianTrend of the table, and `base_seed`.
    """

    def __init__(
        self,
        context_params: ModelParams | None,
        command_params: SpectralScalingQueryParams | dict,
    ):
        self.context_params = context_params
        self.command_params = command_params

    def transform_query(self):
        if isinstance(self.command_params, dict):
            self.command_params = SpectralScalingQueryParams(**self.command_params)
        return self

    def extract_data(self):
        from plantedsdp.recovery.experiments.spectral_scaling.model import (
            spectral_scaling_experiment,
        )

        params: SpectralScalingQueryParams = self.command_params
        self.table = spectral_scaling_experiment(
            n_list=params.n_list,
            p_rule=params.p_rule,
            trials=params.trials,
            base_seed=params.base_seed,
            threads=params.threads,
            use_processes=params.use_processes,
        )
        return self

    def transform_data(self):
        from plantedsdp.recovery.experiments.spectral_scaling.model import (
            median_trend,
        )

        self.trend = median_trend(self.table)
        self.transformed_data = self.table.lazy().serialize(format="binary")
        return self

    @log_start_end(logger=logger)
    def fetch_data(self) -> RecoveryObject:
        """Execute the TET pattern."""
        self.transform_query()
        self.extract_data()
        self.transform_data()

        return RecoveryObject(
            results=self.transformed_data,
            context_params=self.context_params,
            command_params=self.command_params,
            extra={
                "trend": self.trend.model_dump(),
                "base_seed": self.command_params.base_seed,
            },
        )
