import io
from pathlib import Path
from typing import Any, Generic, TypeVar

import orjson
import polars as pl
import pyarrow as pa
from pydantic import ConfigDict, Field, SerializeAsAny

from plantedsdp.core.standard_models.abstract.chart import Chart
from plantedsdp.core.standard_models.abstract.errors import PlantedSdpError
from plantedsdp.core.standard_models.abstract.query_params import QueryParams
from plantedsdp.core.standard_models.abstract.tagged import Tagged
from plantedsdp.core.standard_models.abstract.warnings import Warning_
from plantedsdp.core.standard_models.recovery import ModelParams

T = TypeVar("T")


def _as_lazy(data: object) -> pl.LazyFrame:
    """Accept a frame or the binary plan written by `LazyFrame.serialize`."""
    match data:
        case pl.LazyFrame():
            return data
        case pl.DataFrame():
            return data.lazy()
        case bytes():
            return pl.LazyFrame.deserialize(io.BytesIO(data), format="binary")
    msg = f"Cannot read results stored as {type(data).__name__}."
    raise PlantedSdpError(msg)


class RecoveryObject(Tagged, Generic[T]):
    """
    Result of a Recovery command: a table, its per-trial rows and extras.

    Tables are stored as serialized polars plans so the object pickles and
    crosses process pools cheaply; `to_polars` rebuilds them.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    results: T | None = Field(
        default=None,
        description="Serialized pl.LazyFrame with the command's main table.",
    )
    trials: T | None = Field(
        default=None,
        description="Serialized per-trial rows behind the results, if any.",
    )
    warnings: list[Warning_] | None = Field(
        default=None,
        description="Non-fatal conditions met while computing the results.",
    )
    chart: Chart | None = Field(
        default=None,
        description="Rendered figure, when the command was asked for one.",
    )
    extra: dict[str, Any] = Field(
        default_factory=dict,
        description="Scalars that do not fit the table (fitted boundary, trend test).",
    )
    context_params: ModelParams | None = Field(
        default=None,
        title="Context Parameters",
        description="Planted model the command ran against.",
    )
    command_params: SerializeAsAny[QueryParams] | None = Field(
        default=None,
        title="Command Parameters",
        description="Command-specific parameters.",
    )

    def __repr__(self) -> str:
        """Summarise ids, table presence and warnings."""
        tables = [
            name for name in ("results", "trials") if getattr(self, name) is not None
        ]
        params = self.command_params
        command = type(params).__name__ if params else None
        return (
            f"{self.__class__.__name__}(id={self.id}, command={command}, "
            f"tables={tables}, warnings={len(self.warnings or [])}, "
            f"chart={self.chart is not None})"
        )

    def to_polars(
        self, collect: bool = True, trials: bool = False
    ) -> pl.LazyFrame | pl.DataFrame:
        """
        Rebuild the stored table.

        Parameters
        ----------
        collect : bool, optional
            Return a DataFrame instead of the LazyFrame plan.
        trials : bool, optional
            Read the per-trial rows instead of the main table.

        Raises
        ------
        PlantedSdpError
            If the requested table is absent or stored in an unknown form.
        """
        data = self.trials if trials else self.results
        if data is None:
            which = "trial rows" if trials else "results"
            msg = f"No {which} stored on this object."
            raise PlantedSdpError(msg)
        frame = _as_lazy(data)
        return frame.collect() if collect else frame

    def to_dict(
        self, row_wise: bool = False, trials: bool = False
    ) -> dict | list[dict]:
        """Column-wise dict of lists, or a list of row dicts when `row_wise`."""
        frame = self.to_polars(collect=True, trials=trials)
        if row_wise:
            return frame.to_dicts()
        return frame.to_dict(as_series=False)

    def to_arrow(self, trials: bool = False) -> pa.Table:
        """Convert the results to an Arrow Table."""
        return self.to_polars(collect=True, trials=trials).to_arrow()

    def to_json(self, trials: bool = False) -> bytes:
        """Row-wise JSON of the results, serialized with orjson."""
        return orjson.dumps(
            self.to_dict(row_wise=True, trials=trials),
            option=orjson.OPT_SERIALIZE_NUMPY,
        )

    def write_csv(
        self, path: str | Path, trials: bool = False, header: str | None = None
    ) -> Path:
        """
        Write the results as CSV, preceded by one `#` comment line.

        The comment line carries the creation time and `header`; it is the
        only line that differs between replays of the same run.
        """
        path = Path(path)
        body = self.to_polars(collect=True, trials=trials).write_csv(
            float_precision=12
        )
        stamp = f"# generated_at={self.created_at.isoformat()}"
        if header:
            stamp = f"{stamp} {header}"
        path.write_text(f"{stamp}\n{body}", encoding="utf-8")
        return path

    def write_json(self, path: str | Path, trials: bool = False) -> Path:
        """Write `to_json` output to `path`."""
        path = Path(path)
        path.write_bytes(self.to_json(trials=trials))
        return path

    def write_svg(self, path: str | Path) -> Path:
        """Write the chart content; raises if no chart was built."""
        if self.chart is None or not self.chart.content:
            msg = "No chart was generated for this result."
            raise PlantedSdpError(msg)
        path = Path(path)
        path.write_text(self.chart.content, encoding="utf-8")
        return path

    def is_empty(self, trials: bool = False) -> bool:
        """Whether the requested table has no rows."""
        return self.to_polars(collect=True, trials=trials).is_empty()
