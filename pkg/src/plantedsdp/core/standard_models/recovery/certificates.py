"""
Context: Recovery || Category: Certificates || **Types: Verdict, SbmCertificate, PdsCertificate**.

Dual certificates are plain containers; they are built and verified by
`plantedsdp.recovery.certificates.model`.
"""

from typing import Any

import numpy as np
import orjson
from pydantic import BaseModel, ConfigDict, Field

from plantedsdp.core.utils.constants import REGIMES


class Verdict(BaseModel):
    """Outcome of a certificate check, with one reason per failed condition."""

    model_config = ConfigDict(frozen=True)

    passed: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.passed


class _Certificate(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    regime: REGIMES
    truth: np.ndarray = Field(description="The planted sigma or xi.")
    lambda_star: float
    S: np.ndarray = Field(description="The dual slack matrix.")  # noqa: N815
    lambda2_perp: float = Field(
        description="Smallest eigenvalue of S on the complement of the truth."
    )
    psd_lower_bound: float = Field(
        description="Deterministic lower bound on the restricted spectrum; informational."
    )
    verdict: Verdict | None = None

    def to_json(self, *, include_matrix: bool = True) -> bytes:
        """Serialize with orjson; matrices are written row-major."""
        exclude = None if include_matrix else {"S"}
        payload = self.model_dump(exclude=exclude)
        return orjson.dumps(
            payload,
            option=orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_INDENT_2,
            default=_numpy_default,
        )


class SbmCertificate(_Certificate):
    """Dual certificate S* = D* - A + lambda* J for the bisection SDP."""

    d: np.ndarray = Field(description="Diagonal of D*.")


class PdsCertificate(_Certificate):
    """
    Dual certificate S* = D* - B* - A + eta* I + lambda* J for the PDS SDP.

    `d` is zero off the cluster and `b` is zero on it; both have length n.
    """

    eta_star: float
    d: np.ndarray = Field(description="Diagonal of D*, supported on C*.")
    b: np.ndarray = Field(description="Cross-block weights, supported off C*.")
    B: np.ndarray = Field(description="Symmetric cross-block matrix B*.")  # noqa: N815


def _numpy_default(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return np.ascontiguousarray(obj).tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    msg = f"Type {type(obj)} not serializable"
    raise TypeError(msg)
