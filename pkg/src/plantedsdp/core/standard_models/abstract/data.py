"""An ABSTRACT DATA MODEL for tabular results, a pandera.polars model."""

import pandera.polars as pa


class Data(pa.DataFrameModel):
    """
    An abstract standard_model to represent a base Data Model.

    The Data Model should be used to define the tabular data that is produced
    by a `context.category.command` call.

    This Data model is meant to be inherited and built upon by other
    standard_models for a specific context.

    Example
    -------
    ```py
    class SpectralData(Data):

        n: int = pa.Field(ge=2, description=DATA_DESCRIPTIONS["n"])
        ratio: float = pa.Field(ge=0.0, description=DATA_DESCRIPTIONS["ratio"])
    ```
    """
