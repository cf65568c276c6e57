"""Non-fatal conditions attached to a `RecoveryObject`."""

from pydantic import BaseModel, ConfigDict, Field


class Warning_(BaseModel):  # noqa: N801
    """A serialisable warning: a short category and a free-text message."""

    model_config = ConfigDict(frozen=True)

    category: str = Field(description="Machine-readable kind, e.g. `SkippedPoint`.")
    message: str = Field(description="Human-readable detail.")

    def __str__(self) -> str:
        """Render as `category: message`."""
        return f"{self.category}: {self.message}"


class PlantedSdpWarning(Warning_):
    """Warning raised by a plantedsdp command (skipped grid points, soundness violations)."""
