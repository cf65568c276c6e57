"""
Context: Recovery || Category: Graph Models || **Helpers**.

Seed derivation, planted-partition draws and the plain-text graph and
assignment formats. Files use 1-based vertex labels; everything in memory is
0-based.
"""

from pathlib import Path

import numpy as np

from plantedsdp.core.standard_models.abstract.errors import (
    DimensionMismatchError,
    InvalidParamsError,
)
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.graph import Assignment, Graph


def derive_trial_seed(base_seed: int, index: int) -> int:
    """
    Deterministic 63-bit seed for trial `index` of a run seeded `base_seed`.

    The pair is hashed with numpy's SeedSequence, so nearby indices give
    unrelated streams and the result does not depend on scheduling.
    """
    if base_seed < 0 or index < 0:
        msg = f"seed and index must be non-negative, got {base_seed}, {index}"
        raise InvalidParamsError(msg)
    state = np.random.SeedSequence([base_seed, index]).generate_state(
        1, dtype=np.uint64
    )
    return int(state[0] >> np.uint64(1))


def draw_truth(params: ModelParams, rng: np.random.Generator) -> Assignment:
    """Draw the planted partition uniformly at random for `params.kind`."""
    order = rng.permutation(params.n)
    if params.kind == "SBM":
        values = np.full(params.n, -1, dtype=np.int64)
        values[order[: params.K]] = 1
        return Assignment.from_vector("PM1", values)
    if params.kind == "PDS":
        values = np.zeros(params.n, dtype=np.int64)
        values[order[: params.K]] = 1
        return Assignment.from_vector("Indicator", values)
    values = np.zeros(params.n, dtype=np.int64)
    for cluster in range(params.r):
        values[order[cluster * params.K : (cluster + 1) * params.K]] = cluster + 1
    return Assignment.from_vector("Labels", values)


def check_truth(params: ModelParams, truth: Assignment) -> None:
    """
    Validate a caller-supplied truth against the model.

    Raises
    ------
    DimensionMismatchError
        If the assignment length differs from n.
    InvalidParamsError
        If the assignment kind or cluster sizes do not fit the model.
    """
    if truth.n != params.n:
        msg = f"assignment has {truth.n} entries, model has n={params.n}"
        raise DimensionMismatchError(msg)
    values = np.asarray(truth.values)
    if params.kind == "SBM":
        ok = truth.kind == "PM1" and int((values == 1).sum()) == params.K
    elif params.kind == "PDS":
        ok = truth.kind == "Indicator" and int(values.sum()) == params.K
    elif truth.kind == "Labels":
        counts = np.bincount(values, minlength=params.r + 1)
        ok = values.max(initial=0) <= params.r and bool(
            np.all(counts[1:] == params.K)
        )
    else:
        ok = False
    if not ok:
        msg = f"{truth.kind} assignment does not match a {params.kind} model with K={params.K}"
        raise InvalidParamsError(msg)


def write_graph(path: str | Path, g: Graph) -> Path:
    """Write `n m` then one `i j` line (1-based, i < j) per edge."""
    path = Path(path)
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{i + 1} {j + 1}" for i, j in g.edges())
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_graph(path: str | Path) -> Graph:
    """
    Read the edge-list format written by `write_graph`.

    Raises
    ------
    ValueError
        On a malformed header, out-of-range labels or an edge count that
        disagrees with the header.
    """
    rows = [
        line.split()
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows or len(rows[0]) != 2:  # noqa: PLR2004
        msg = f"{path}: first line must be 'n m'"
        raise ValueError(msg)
    n, m = (int(x) for x in rows[0])
    edges = []
    for row in rows[1:]:
        if len(row) != 2:  # noqa: PLR2004
            msg = f"{path}: malformed edge line {' '.join(row)!r}"
            raise ValueError(msg)
        edges.append((int(row[0]) - 1, int(row[1]) - 1))
    g = Graph.from_edges(n, edges)
    if g.m != m:
        msg = f"{path}: header says m={m}, found {g.m} distinct edges"
        raise ValueError(msg)
    return g


def write_assignment(path: str | Path, truth: Assignment) -> Path:
    """Write the labels as one whitespace-separated line."""
    path = Path(path)
    path.write_text(" ".join(str(v) for v in truth.values) + "\n", encoding="utf-8")
    return path


def read_assignment(path: str | Path) -> Assignment:
    """
    Read one line of labels. Any -1 makes it PM1, values above 1 make it
    Labels, otherwise it is an Indicator.
    """
    values = [int(tok) for tok in Path(path).read_text(encoding="utf-8").split()]
    if not values:
        msg = f"{path}: empty assignment"
        raise ValueError(msg)
    if min(values) < 0:
        return Assignment(kind="PM1", values=tuple(values))
    if max(values) > 1:
        return Assignment(kind="Labels", values=tuple(values))
    return Assignment(kind="Indicator", values=tuple(values))
