"""Rendered figures returned by the `view` modules."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class ChartTemplate(str, Enum):
    """Markup a `Chart.content` is written in."""

    svg = "svg"


class Chart(BaseModel):
    """A rendered chart, kept as text so results stay serialisable."""

    model_config = ConfigDict(validate_assignment=True)

    content: str | None = Field(
        default=None,
        description="Chart markup, written verbatim by `RecoveryObject.write_svg`.",
    )
    theme: ChartTemplate = Field(
        default=ChartTemplate.svg,
        description="Format of `content`.",
    )

    def __repr__(self) -> str:
        """Show the format and the size of the markup instead of the markup."""
        size = len(self.content) if self.content else 0
        return f"{self.__class__.__name__}(theme={self.theme.value}, chars={size})"
