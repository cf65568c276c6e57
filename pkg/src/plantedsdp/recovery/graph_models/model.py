"""
Context: Recovery || Category: Graph Models || **Command: graph_models**.

Samplers for the planted partition model and its special cases, the
expected adjacency matrix, and the monotone adversary.
"""

from collections.abc import Iterable

import numpy as np
import numpy.typing as npt

from plantedsdp.core.standard_models.abstract.errors import (
    DimensionMismatchError,
    NonMonotoneEditError,
)
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.graph import Assignment, Graph
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import setup_logger
from plantedsdp.recovery.graph_models.helpers import check_truth, draw_truth

env = Env()
logger = setup_logger("GraphModels", level=env.LOGGER_LEVEL)


def expected_adjacency(
    params: ModelParams, truth: Assignment
) -> npt.NDArray[np.float64]:
    """
    E[A]: p on same-cluster pairs, q elsewhere, zero on the diagonal.

    For the SBM this equals (p - q)/2 sigma sigma^T + (p + q)/2 J - p I.
    """
    check_truth(params, truth)
    expected = np.where(truth.cluster_mask(), params.p, params.q)
    np.fill_diagonal(expected, 0.0)
    return expected


def sample_planted(
    params: ModelParams, truth: Assignment | None = None
) -> tuple[Graph, Assignment]:
    """
    Sample a graph from the planted model described by `params`.

    Parameters
    ----------
    params : ModelParams
        Model and seed. Equal params (seed included) give identical output.
    truth : Assignment, optional
        Fixed planted partition. Drawn uniformly from the seeded generator
        when omitted.

    Returns
    -------
    tuple[Graph, Assignment]
        The graph and the planted partition it was drawn from. Every pair
        i < j is an independent Bernoulli(p or q) draw.
    """
    rng = np.random.default_rng(params.seed)
    if truth is None:
        truth = draw_truth(params, rng)
    probs = expected_adjacency(params, truth)

    rows, cols = np.triu_indices(params.n, k=1)
    draws = rng.random(rows.shape[0]) < probs[rows, cols]
    adj = np.zeros((params.n, params.n), dtype=np.uint8)
    adj[rows[draws], cols[draws]] = 1
    adj = adj | adj.T

    g = Graph(n=params.n, adj=adj)
    logger.debug(
        "sampled %s n=%d p=%.4g q=%.4g seed=%d -> m=%d",
        params.kind, params.n, params.p, params.q, params.seed, g.m,
    )
    return g, truth


def sample_erdos_renyi(n: int, p: float, seed: int = 0) -> Graph:
    """G(n, p), as the one-cluster planted model with p == q."""
    params = ModelParams(kind="PlantedCluster", n=n, r=1, K=n, p=p, q=p, seed=seed)
    truth = Assignment(kind="Labels", values=(1,) * n)
    g, _ = sample_planted(params, truth)
    return g


def apply_monotone_adversary(
    g: Graph,
    truth: Assignment,
    add_within: Iterable[tuple[int, int]] = (),
    remove_cross: Iterable[tuple[int, int]] = (),
) -> Graph:
    """
    Add same-cluster edges and delete cross-cluster edges.

    For an Indicator truth "same cluster" means both endpoints in C*; every
    other pair is cross-cluster. Such edits keep the planted solution the
    unique SDP optimum whenever it was before.

    Raises
    ------
    NonMonotoneEditError
        On the first pair that is a self-loop, an addition across clusters,
        a removal inside a cluster, or a removal of a missing edge.
    DimensionMismatchError
        If `truth` and `g` differ in size.
    """
    if truth.n != g.n:
        msg = f"assignment has {truth.n} entries, graph has {g.n} vertices"
        raise DimensionMismatchError(msg)
    adj = np.array(g.adj, copy=True)

    for i, j in add_within:
        _check_pair(g.n, i, j)
        if not truth.same_cluster(i, j):
            raise NonMonotoneEditError(i, j, "added edge crosses clusters")
        adj[i, j] = adj[j, i] = 1

    for i, j in remove_cross:
        _check_pair(g.n, i, j)
        if truth.same_cluster(i, j):
            raise NonMonotoneEditError(i, j, "removed edge lies inside a cluster")
        if not adj[i, j]:
            raise NonMonotoneEditError(i, j, "removed edge is not present")
        adj[i, j] = adj[j, i] = 0

    return Graph(n=g.n, adj=adj)


def _check_pair(n: int, i: int, j: int) -> None:
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise NonMonotoneEditError(i, j, "not a vertex pair of the graph")


def random_monotone_edits(
    g: Graph, truth: Assignment, count: int, seed: int = 0
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """
    Draw up to `count` admissible edits, split between additions and removals.

    Additions are absent same-cluster pairs, removals present cross-cluster
    edges, both sampled without replacement.
    """
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(g.n, k=1)
    same = truth.cluster_mask()[rows, cols]
    present = g.adj[rows, cols].astype(bool)

    addable = np.flatnonzero(same & ~present)
    removable = np.flatnonzero(~same & present)
    n_add = min(count // 2, addable.size)
    n_remove = min(count - n_add, removable.size)

    picked_add = rng.choice(addable, size=n_add, replace=False)
    picked_remove = rng.choice(removable, size=n_remove, replace=False)
    add = [(int(rows[k]), int(cols[k])) for k in np.sort(picked_add)]
    remove = [(int(rows[k]), int(cols[k])) for k in np.sort(picked_remove)]
    return add, remove
