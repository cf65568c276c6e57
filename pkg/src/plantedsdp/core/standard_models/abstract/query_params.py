"""An ABSTRACT DATA MODEL for the parameters of every plantedsdp command."""

from pydantic import BaseModel, ConfigDict


class QueryParams(BaseModel):
    """
    An abstract standard_model to represent a base QueryParams Data.

    QueryParams model should be used to define the query parameters for a
    `context.category.command` call.

    This QueryParams model is meant to be inherited and built upon by other
    standard_models for a specific context.

    Examples
    --------
    ```py
    class SweepQueryParams(QueryParams):

        n: int = Field(gt=1, description=SWEEP_QUERY_DESCRIPTIONS["n"])
        trials_per_point: int = Field(
            default=50,
            ge=1,
            description=SWEEP_QUERY_DESCRIPTIONS["trials_per_point"],
        )
    ```
    """

    model_config = ConfigDict(extra="forbid", validate_default=True)

    def __repr__(self) -> str:
        """Return the class name and its non-default parameters."""
        fields = ", ".join(
            f"{k}={v!r}" for k, v in self.model_dump(exclude_unset=True).items()
        )
        return f"{self.__class__.__name__}({fields})"
