"""
Context: Recovery || Category: Graph Models || **Types: Graph, Assignment**.

Immutable containers for a sampled simple graph and for a planted partition.
"""

from collections.abc import Iterable

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from plantedsdp.core.utils.constants import ASSIGNMENT_KINDS


class Graph(BaseModel):
    """
    A simple undirected graph stored as a read-only 0/1 adjacency matrix.

    Parameters
    ----------
    n : int
        Number of vertices.
    adj : np.ndarray
        Symmetric 0/1 matrix with zero diagonal, shape (n, n).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(ge=1, description="Number of vertices.")
    adj: np.ndarray = Field(description="0/1 adjacency matrix.")

    @field_validator("adj", mode="before")
    @classmethod
    def coerce_adjacency(cls, v: npt.ArrayLike) -> npt.NDArray[np.uint8]:
        arr = np.asarray(v)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:  # noqa: PLR2004
            msg = f"adjacency must be square, got shape {arr.shape}"
            raise ValueError(msg)
        if not np.isin(arr, (0, 1)).all():
            msg = "adjacency entries must be 0 or 1"
            raise ValueError(msg)
        out = np.array(arr, dtype=np.uint8, copy=True)
        out.setflags(write=False)
        return out

    @model_validator(mode="after")
    def check_simple(self) -> "Graph":
        if self.adj.shape != (self.n, self.n):
            msg = f"adjacency shape {self.adj.shape} does not match n={self.n}"
            raise ValueError(msg)
        if np.any(np.diag(self.adj)):
            msg = "adjacency must have a zero diagonal"
            raise ValueError(msg)
        if not np.array_equal(self.adj, self.adj.T):
            msg = "adjacency must be symmetric"
            raise ValueError(msg)
        return self

    @property
    def m(self) -> int:
        """Number of edges."""
        return int(self.adj.sum()) // 2

    def as_float(self) -> npt.NDArray[np.float64]:
        """Adjacency as a float64 copy, ready for linear algebra."""
        return self.adj.astype(np.float64)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as 0-based pairs (i, j) with i < j, in row-major order."""
        rows, cols = np.nonzero(np.triu(self.adj, k=1))
        return [(int(i), int(j)) for i, j in zip(rows, cols, strict=True)]

    def complement(self) -> "Graph":
        """The graph with adjacency J - I - A."""
        comp = 1 - self.adj
        np.fill_diagonal(comp, 0)
        return Graph(n=self.n, adj=comp)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """
        Build a graph from 0-based vertex pairs.

        Raises
        ------
        ValueError
            On self-loops or endpoints outside [0, n).
        """
        adj = np.zeros((n, n), dtype=np.uint8)
        for i, j in edges:
            if i == j or not (0 <= i < n and 0 <= j < n):
                msg = f"invalid edge ({i}, {j}) for n={n}"
                raise ValueError(msg)
            adj[i, j] = adj[j, i] = 1
        return cls(n=n, adj=adj)


class Assignment(BaseModel):
    """
    A planted partition of the vertex set.

    `PM1` holds ±1 labels of the two SBM halves, `Indicator` the 0/1
    membership of a single cluster, and `Labels` the cluster index of each
    vertex for the general model (0 marks an outlier).
    """

    model_config = ConfigDict(frozen=True)

    kind: ASSIGNMENT_KINDS
    values: tuple[int, ...]

    @model_validator(mode="after")
    def check_values(self) -> "Assignment":
        allowed = {"PM1": {-1, 1}, "Indicator": {0, 1}}.get(self.kind)
        if allowed is not None and not set(self.values) <= allowed:
            msg = f"{self.kind} entries must lie in {sorted(allowed)}"
            raise ValueError(msg)
        if self.kind == "Labels" and min(self.values, default=0) < 0:
            msg = "cluster labels must be non-negative"
            raise ValueError(msg)
        return self

    @classmethod
    def from_vector(
        cls, kind: ASSIGNMENT_KINDS, vector: npt.ArrayLike
    ) -> "Assignment":
        return cls(kind=kind, values=tuple(int(v) for v in np.asarray(vector)))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def vector(self) -> npt.NDArray[np.float64]:
        """The labels as a float64 vector (the sigma or xi of the SDP)."""
        return np.asarray(self.values, dtype=np.float64)

    @property
    def members(self) -> npt.NDArray[np.intp]:
        """Vertices with a non-zero label (C* for an indicator)."""
        return np.flatnonzero(np.asarray(self.values) > 0)

    @property
    def is_balanced(self) -> bool:
        return self.kind == "PM1" and sum(self.values) == 0

    def same_cluster(self, i: int, j: int) -> bool:
        """Whether the pair (i, j) lies inside one planted cluster."""
        vi, vj = self.values[i], self.values[j]
        if self.kind == "PM1":
            return vi == vj
        return vi == vj and vi > 0

    def cluster_mask(self) -> npt.NDArray[np.bool_]:
        """Boolean matrix of same-cluster pairs (the diagonal included)."""
        v = np.asarray(self.values)
        if self.kind == "PM1":
            return v[:, None] == v[None, :]
        return (v[:, None] == v[None, :]) & (v[:, None] > 0)

    def truth_matrix(self) -> npt.NDArray[np.float64]:
        """The planted rank-one SDP optimum: sigma sigma^T or xi xi^T."""
        if self.kind == "Labels":
            msg = "Labels assignments have no rank-one SDP counterpart"
            raise ValueError(msg)
        v = self.vector
        return np.outer(v, v)
