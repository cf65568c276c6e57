"""
Context: Recovery || **Category: Standardized Framework Model**.

This module defines the context parameters of the Recovery context: the
planted random graph model every command samples from, reasons about, or
certifies against. The STANDARD MODELS for the categories and commands of
the context are nested here.

Classes
-------
ModelParams
    Frozen description of a planted-partition model (SBM, PDS or the general
    planted-cluster model).
"""

import math
from typing import Any

from pydantic import ConfigDict, Field, model_validator

from plantedsdp.core.standard_models.abstract.query_params import QueryParams
from plantedsdp.core.utils.constants import MODEL_KINDS, REGIMES
from plantedsdp.core.utils.descriptions import QUERY_DESCRIPTIONS


def _intensity_to_probability(intensity: float, n: int) -> float:
    return intensity * math.log(n) / n


class ModelParams(QueryParams):
    """
    Parameters of a planted random graph model.

    Either the intensities (`a`, `b`) or the probabilities (`p`, `q`) must be
    given. Intensities are converted with p = a ln(n) / n; explicitly passed
    probabilities take precedence and the intensities are then only used where
    the threshold quantities need them (tau*).

    Parameters
    ----------
    kind : Literal["SBM", "PDS", "PlantedCluster"]
        SBM: two clusters of size n/2. PDS: one cluster of size K. The general
        model has `r` clusters of size `K` plus outliers.
    n : int
        Number of vertices, at least 2.
    r : int | None
        Number of clusters. Derived for SBM (2) and PDS (1).
    K : int | None
        Cluster size. n/2 for SBM, floor(rho * n) for PDS when `rho` is given.
    rho : float | None
        Cluster fraction. Derived as K / n when omitted.
    a, b : float | None
        Intensities, non-negative.
    p, q : float | None
        Edge probabilities inside a cluster and elsewhere, in [0, 1].
    seed : int
        Non-negative seed of the random generator.

    Raises
    ------
    pydantic.ValidationError
        When the derived probabilities leave [0, 1], when r * K > n, when
        SBM is requested with odd n, or when neither (a, b) nor (p, q) is
        complete.
    """

    model_config = ConfigDict(frozen=True)

    kind: MODEL_KINDS = Field(
        title="Model Kind", description=QUERY_DESCRIPTIONS["kind"]
    )
    n: int = Field(ge=2, title="Vertices", description=QUERY_DESCRIPTIONS["n"])
    r: int = Field(ge=1, title="Clusters", description=QUERY_DESCRIPTIONS["r"])
    K: int = Field(  # noqa: N815
        ge=1, title="Cluster Size", description=QUERY_DESCRIPTIONS["K"]
    )
    rho: float = Field(
        gt=0.0, le=1.0, title="Cluster Fraction", description=QUERY_DESCRIPTIONS["rho"]
    )
    a: float | None = Field(
        default=None, title="In-cluster Intensity", description=QUERY_DESCRIPTIONS["a"]
    )
    b: float | None = Field(
        default=None, title="Background Intensity", description=QUERY_DESCRIPTIONS["b"]
    )
    p: float = Field(
        title="In-cluster Probability", description=QUERY_DESCRIPTIONS["p"]
    )
    q: float = Field(
        title="Background Probability", description=QUERY_DESCRIPTIONS["q"]
    )
    seed: int = Field(
        default=0, ge=0, title="Seed", description=QUERY_DESCRIPTIONS["seed"]
    )

    @model_validator(mode="before")
    @classmethod
    def derive_structure(cls, data: Any) -> Any:
        """Fill r, K, rho, p and q from whatever the caller supplied."""
        if not isinstance(data, dict):
            return data
        data = dict(data)
        kind = data.get("kind")
        n = data.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:  # noqa: PLR2004
            return data

        if kind == "SBM":
            if n % 2:
                msg = f"SBM needs an even number of vertices, got n={n}"
                raise ValueError(msg)
            if data.get("r") not in (None, 2):
                msg = "SBM has exactly two clusters"
                raise ValueError(msg)
            if data.get("K") not in (None, n // 2):
                msg = f"SBM clusters have size n/2 = {n // 2}"
                raise ValueError(msg)
            data["r"], data["K"] = 2, n // 2
        elif kind == "PDS":
            if data.get("r") not in (None, 1):
                msg = "PDS has exactly one cluster"
                raise ValueError(msg)
            data["r"] = 1
            data["K"] = cls._resolve_cluster_size(data, n)
        elif kind == "PlantedCluster":
            if data.get("r") is None:
                msg = "PlantedCluster needs the number of clusters r"
                raise ValueError(msg)
            data["K"] = cls._resolve_cluster_size(data, n)

        if data.get("rho") is None and isinstance(data.get("K"), int):
            data["rho"] = data["K"] / n

        for prob, intensity in (("p", "a"), ("q", "b")):
            if data.get(prob) is None:
                if data.get(intensity) is None:
                    msg = f"either {intensity} or {prob} must be supplied"
                    raise ValueError(msg)
                data[prob] = _intensity_to_probability(
                    float(data[intensity]), n
                )
        return data

    @staticmethod
    def _resolve_cluster_size(data: dict[str, Any], n: int) -> int:
        rho, k = data.get("rho"), data.get("K")
        if rho is not None:
            k_rho = math.floor(float(rho) * n + 1e-9)
            if k is not None and k != k_rho:
                msg = f"K={k} disagrees with floor(rho * n) = {k_rho}"
                raise ValueError(msg)
            return k_rho
        if k is None:
            msg = "either K or rho must be supplied"
            raise ValueError(msg)
        return k

    @model_validator(mode="after")
    def check_ranges(self) -> "ModelParams":
        """Enforce the invariants that the derivation cannot guarantee."""
        for name in ("a", "b"):
            value = getattr(self, name)
            if value is not None and value < 0:
                msg = f"intensity {name}={value} must be non-negative"
                raise ValueError(msg)
        for name in ("p", "q"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                msg = f"probability {name}={value:.6g} is outside [0, 1] at n={self.n}"
                raise ValueError(msg)
        if self.r * self.K > self.n:
            msg = f"r * K = {self.r * self.K} exceeds n = {self.n}"
            raise ValueError(msg)
        return self

    @property
    def log_n(self) -> float:
        """Natural log of n."""
        return math.log(self.n)

    @property
    def has_intensities(self) -> bool:
        """True when both intensities were supplied."""
        return self.a is not None and self.b is not None

    @property
    def regime(self) -> REGIMES:
        """AGreater when the in-cluster side is denser (ties count as AGreater)."""
        if self.has_intensities:
            return "AGreater" if self.a >= self.b else "BGreater"  # type: ignore[operator]
        return "AGreater" if self.p >= self.q else "BGreater"
