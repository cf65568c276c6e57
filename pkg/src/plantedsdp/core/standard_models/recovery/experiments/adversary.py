"""
Context: Recovery || Category: Experiments || **Command: adversary**.

Data model of the monotone-adversary experiment.
"""

import pandera.polars as pa
import polars as pl

from plantedsdp.core.standard_models.abstract.data import Data

ADVERSARY_SCHEMA = {
    "instance": pl.Int64,
    "seed": pl.Int64,
    "certified": pl.Boolean,
    "added": pl.Int64,
    "removed": pl.Int64,
    "integral_after": pl.Boolean,
    "failure_reason": pl.String,
}


class AdversaryData(Data):
    """One row per sampled instance; edits only run on certified ones."""

    instance: int = pa.Field(ge=0)
    seed: int = pa.Field(ge=0)
    certified: bool = pa.Field()
    added: int = pa.Field(ge=0)
    removed: int = pa.Field(ge=0)
    integral_after: bool = pa.Field(nullable=True)
    failure_reason: str = pa.Field(nullable=True)
