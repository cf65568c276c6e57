"""
Context: Recovery || Category: Oracle || **Command: oracle**.

Exhaustive maximum-likelihood baselines for small graphs and the linear-time
swap witness that shows when the planted cluster is not the ML optimum.
"""

import itertools
import math
from collections.abc import Iterator

import numpy as np

from plantedsdp.core.standard_models.abstract.errors import (
    DomainError,
    InvalidTruthError,
    OddNError,
    TooLargeError,
)
from plantedsdp.core.standard_models.recovery.graph import Assignment, Graph
from plantedsdp.core.standard_models.recovery.oracle import OracleResult
from plantedsdp.core.utils.constants import MAX_BISECTION_N, MAX_SUBSETS, REGIMES
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import setup_logger

env = Env()
logger = setup_logger("Oracle", level=env.LOGGER_LEVEL)

_CHUNK = 4096


def bisection_objective(g: Graph, sigma: Assignment | np.ndarray) -> int:
    """sum_ij A_ij sigma_i sigma_j."""
    v = sigma.vector if isinstance(sigma, Assignment) else np.asarray(sigma, dtype=np.float64)
    return int(round(float(v @ g.as_float() @ v)))


def subset_objective(g: Graph, xi: Assignment | np.ndarray) -> int:
    """sum_ij A_ij xi_i xi_j, twice the number of edges inside the subset."""
    return bisection_objective(g, xi)


def _chunks(combos: Iterator[tuple[int, ...]]) -> Iterator[list[tuple[int, ...]]]:
    while chunk := list(itertools.islice(combos, _CHUNK)):
        yield chunk


def _enumerate(
    g: Graph,
    combos: Iterator[tuple[int, ...]],
    base: float,
    fixed: tuple[int, ...],
    sign: float,
) -> tuple[np.ndarray, int, int, int]:
    """Scan subsets in order; return the first best vector, its value, tie count and total."""
    adj = g.as_float()
    best_vec: np.ndarray | None = None
    best_value = -math.inf
    ties = 0
    total = 0
    for chunk in _chunks(combos):
        vecs = np.full((len(chunk), g.n), base)
        for row, combo in enumerate(chunk):
            vecs[row, list(combo) + list(fixed)] = 1.0
        values = sign * np.einsum("ij,jk,ik->i", vecs, adj, vecs)
        values = np.rint(values)
        top = values.max()
        if top > best_value:
            best_value = top
            best_vec = vecs[int(np.argmax(values))].copy()
            ties = int((values == top).sum())
        elif top == best_value:
            ties += int((values == top).sum())
        total += len(chunk)
    assert best_vec is not None
    return best_vec, int(sign * best_value), ties, total


def ml_bisection(g: Graph, regime: REGIMES = "AGreater") -> OracleResult:
    """
    Best balanced ±1 labelling by exhaustive search, with sigma_0 fixed to +1.

    AGreater maximizes sum_ij A_ij sigma_i sigma_j, BGreater minimizes it. The
    reported best is the first optimum in lexicographic order of the +1 set.

    Raises
    ------
    OddNError
        If n is odd.
    TooLargeError
        If n exceeds 20.
    """
    n = g.n
    if n % 2:
        msg = f"bisection needs even n, got {n}"
        raise OddNError(msg)
    if n > MAX_BISECTION_N:
        msg = f"exhaustive bisection is limited to n <= {MAX_BISECTION_N}, got {n}"
        raise TooLargeError(msg)

    sign = 1.0 if regime == "AGreater" else -1.0
    combos = itertools.combinations(range(1, n), n // 2 - 1)
    best, value, ties, total = _enumerate(g, combos, -1.0, (0,), sign)
    logger.debug("ml_bisection n=%d: %d candidates, %d optima", n, total, ties)
    return OracleResult(
        best=Assignment.from_vector("PM1", best.astype(np.int64)),
        best_objective=value,
        num_optima=ties,
        unique=ties == 1,
        candidates=total,
    )


def ml_subset(g: Graph, K: int, regime: REGIMES = "AGreater") -> OracleResult:  # noqa: N803
    """
    Best K-subset by exhaustive search over C(n, K) subsets.

    Raises
    ------
    DomainError
        Unless 1 <= K <= n.
    TooLargeError
        If C(n, K) exceeds one million.
    """
    n = g.n
    if not 1 <= K <= n:
        msg = f"need 1 <= K <= n, got K={K}, n={n}"
        raise DomainError(msg)
    count = math.comb(n, K)
    if count > MAX_SUBSETS:
        msg = f"C({n}, {K}) = {count} subsets exceeds {MAX_SUBSETS}"
        raise TooLargeError(msg)

    sign = 1.0 if regime == "AGreater" else -1.0
    combos = itertools.combinations(range(n), K)
    best, value, ties, total = _enumerate(g, combos, 0.0, (), sign)
    return OracleResult(
        best=Assignment.from_vector("Indicator", best.astype(np.int64)),
        best_objective=value,
        num_optima=ties,
        unique=ties == 1,
        candidates=total,
    )


def _cluster_degrees(g: Graph, truth: Assignment, K: int) -> tuple[np.ndarray, np.ndarray]:  # noqa: N803
    if truth.kind != "Indicator" or truth.n != g.n or sum(truth.values) != K:
        msg = f"need an indicator of size K={K} on {g.n} vertices"
        raise InvalidTruthError(msg)
    inside = truth.vector > 0
    return g.as_float()[:, inside].sum(axis=1), inside


def failure_event(
    g: Graph, truth: Assignment, K: int, regime: REGIMES = "AGreater"  # noqa: N803
) -> bool:
    """
    min_{i in C*} e(i, C*) < max_{j not in C*} e(j, C*) for AGreater, and the
    mirrored comparison for BGreater.
    """
    e_in, inside = _cluster_degrees(g, truth, K)
    if inside.all():
        return False
    if regime == "AGreater":
        return bool(e_in[inside].min() < e_in[~inside].max())
    return bool(e_in[inside].max() > e_in[~inside].min())


def ml_failure_witness(
    g: Graph, truth: Assignment, K: int, regime: REGIMES = "AGreater"  # noqa: N803
) -> tuple[int, int] | None:
    """
    A swap (i in C*, j not in C*) that strictly improves the likelihood.

    Swapping changes the in-cluster edge count by e(j, C*) - A_ij - e(i, C*).
    AGreater needs that gain to be positive, BGreater negative. The pair with
    the largest improvement is returned, ties going to the lowest i then j.

    Returns
    -------
    tuple[int, int] | None
        0-based (i, j), or None when no single swap improves.

    Raises
    ------
    InvalidTruthError
        If `truth` is not an indicator of size K.
    """
    e_in, inside = _cluster_degrees(g, truth, K)
    members = np.flatnonzero(inside)
    outsiders = np.flatnonzero(~inside)
    if members.size == 0 or outsiders.size == 0:
        return None

    cross = g.as_float()[np.ix_(members, outsiders)]
    gain = e_in[outsiders][None, :] - cross - e_in[members][:, None]
    if regime == "BGreater":
        gain = -gain
    flat = int(np.argmax(gain))
    if gain.flat[flat] <= 0:
        return None
    row, col = divmod(flat, outsiders.size)
    return int(members[row]), int(outsiders[col])
