"""An ABSTRACT DATA MODEL, Tagged, to be inherited by other models as identifier."""  # noqa: W505

import datetime as dt

from pydantic import BaseModel, Field
from uuid_extensions import uuid7str


class Tagged(BaseModel):
    """A class to represent an object tagged with a uuid7 and a UTC creation time."""

    id: str = Field(default_factory=uuid7str, alias="_id")
    created_at: dt.datetime = Field(
        default_factory=lambda: dt.datetime.now(tz=dt.UTC),
        description="UTC time the object was created; used in file headers.",
    )
