"""
Context: Recovery || Category: SDP Solver || **Command: solve**.

A consensus ADMM for the bisection and planted-dense-subgraph relaxations,
with residual balancing of the penalty, plus rounding and the integrality
test used to decide exact recovery.
"""

import math

import numpy as np

from plantedsdp.core.standard_models.abstract.errors import (
    DimensionMismatchError,
    InvalidProblemError,
    NotConvergedError,
    SolverDivergedError,
)
from plantedsdp.core.standard_models.recovery.graph import Assignment
from plantedsdp.core.standard_models.recovery.sdp import (
    SdpProblem,
    SdpSolution,
    SolverOptions,
)
from plantedsdp.core.utils.constants import DEFAULT_TOLERANCES, SDP_KINDS
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import log_start_end, setup_logger
from plantedsdp.recovery.sdp_solver.helpers import (
    block_projections,
    consensus_residuals,
    stopping_thresholds,
    validate_problem,
    working_cost,
)
from plantedsdp.recovery.symlin.model import eig_sym, min_eigenvalue

env = Env()
logger = setup_logger("SdpSolver", level=env.LOGGER_LEVEL)


@log_start_end(logger=logger)
def solve(problem: SdpProblem, options: SolverOptions | None = None) -> SdpSolution:
    """
    Solve one of the four relaxations with consensus ADMM.

    The problem is written as max <C, Y> over the intersection of the PSD
    cone with the affine set (and, for PDS, the entrywise box), where C = A
    for MAX kinds and C = -A for MIN kinds. The iterations run on a centred,
    rescaled copy of C (see `working_cost`) with the same optimum. Each set
    gets its own block copy X_k of the consensus variable Z:

        X_k <- Pi_k(Z - U_k)
        Z   <- mean_k(X_k + U_k) + C / (N rho)
        U_k <- U_k + X_k - Z

    Parameters
    ----------
    problem : SdpProblem
        Kind, adjacency and (for PDS) the cluster size K.
    options : SolverOptions, optional
        Tolerance, iteration cap and penalty settings.

    Returns
    -------
    SdpSolution
        `Y` is the average of the block iterates. `status` is Converged when
        both residuals fall below their absolute plus relative thresholds
        (`stopping_thresholds`), MaxIters otherwise.

    Raises
    ------
    InvalidProblemError
        On a malformed adjacency or missing K.
    SolverDivergedError
        When a residual exceeds `options.divergence_limit` or becomes
        non-finite; the last iterate is attached as `.solution`.
    """
    options = options or SolverOptions()
    validate_problem(problem)

    n = problem.n
    cost = working_cost(problem)
    projections = block_projections(problem)
    n_blocks = len(projections)

    penalty = options.rho_penalty
    z = np.zeros((n, n))
    duals = [np.zeros((n, n)) for _ in range(n_blocks)]
    blocks = [np.zeros((n, n)) for _ in range(n_blocks)]
    primal = dual = math.inf
    status = "MaxIters"
    iteration = 0

    for iteration in range(1, options.max_iters + 1):  # noqa: B007
        blocks = [proj(z - u) for proj, u in zip(projections, duals, strict=True)]
        z_old = z
        z = sum(x + u for x, u in zip(blocks, duals, strict=True)) / n_blocks
        z = z + cost / (n_blocks * penalty)
        z = (z + z.T) / 2.0
        duals = [u + x - z for u, x in zip(duals, blocks, strict=True)]

        primal, dual = consensus_residuals(blocks, z, z_old, penalty)
        if not (math.isfinite(primal) and math.isfinite(dual)) or max(
            primal, dual
        ) > options.divergence_limit:
            partial = _make_solution(problem, blocks, iteration, primal, dual, penalty, "Diverged")
            msg = f"ADMM diverged at iteration {iteration}: r={primal:.3e}, s={dual:.3e}"
            logger.error(msg)
            raise SolverDivergedError(msg, solution=partial)

        if iteration % options.log_every == 0:
            logger.debug(
                "iter %d: r=%.3e s=%.3e rho=%.3g", iteration, primal, dual, penalty
            )
        primal_stop, dual_stop = stopping_thresholds(
            blocks, z, duals, penalty, options.tol
        )
        if primal <= primal_stop and dual <= dual_stop:
            status = "Converged"
            break

        # penalty frozen after adapt_iters
        if options.adapt_penalty and iteration <= options.adapt_iters:
            scale = 1.0
            if primal > options.residual_ratio * dual:
                scale = options.penalty_factor
            elif dual > options.residual_ratio * primal:
                scale = 1.0 / options.penalty_factor
            new_penalty = min(max(penalty * scale, options.penalty_min), options.penalty_max)
            if new_penalty != penalty:
                duals = [u * (penalty / new_penalty) for u in duals]
                penalty = new_penalty

    solution = _make_solution(problem, blocks, iteration, primal, dual, penalty, status)
    logger.info(
        "%s n=%d: %s after %d iterations, objective %.6g",
        problem.kind, n, status, iteration, solution.objective,
    )
    return solution


def _make_solution(  # noqa: PLR0913
    problem: SdpProblem,
    blocks: list[np.ndarray],
    iterations: int,
    primal: float,
    dual: float,
    penalty: float,
    status: str,
) -> SdpSolution:
    y = sum(blocks) / len(blocks)
    y = (y + y.T) / 2.0
    return SdpSolution(
        kind=problem.kind,
        Y=y,
        K=problem.K,
        objective=float(np.sum(problem.adjacency * y)),
        iterations=iterations,
        primal_residual=float(primal),
        dual_residual=float(dual),
        penalty=float(penalty),
        status=status,
    )


def constraint_violations(sol: SdpSolution) -> dict[str, float]:
    """
    Largest violation of each constraint family of the relaxation.

    Keys are `psd` (minus the smallest eigenvalue, floored at zero) and,
    for SBM kinds, `diagonal` and `grand_sum`; for PDS kinds `trace`,
    `grand_sum`, `diagonal` (entries above one) and `nonnegativity`.
    """
    y = sol.Y
    out = {"psd": max(0.0, -min_eigenvalue(y))}
    if sol.kind.startswith("SBM"):
        out["diagonal"] = float(np.abs(np.diag(y) - 1.0).max())
        out["grand_sum"] = abs(float(y.sum()))
        return out
    k = sol.K or 0
    off = y[~np.eye(y.shape[0], dtype=bool)]
    out["trace"] = abs(float(np.trace(y)) - k)
    out["grand_sum"] = abs(float(y.sum()) - k * k)
    out["diagonal"] = max(0.0, float(np.diag(y).max()) - 1.0)
    out["nonnegativity"] = max(0.0, -float(off.min())) if off.size else 0.0
    return out


def _leading_vector(y: np.ndarray) -> np.ndarray:
    return eig_sym(y).eigenvectors[:, -1]


def _top_indices(scores: np.ndarray, count: int) -> np.ndarray:
    """Indices of the `count` largest scores, ties going to the lower index."""
    order = np.lexsort((np.arange(scores.shape[0]), -scores))
    return order[:count]


def round_solution(
    sol: SdpSolution, kind: SDP_KINDS | None = None, K: int | None = None  # noqa: N803
) -> Assignment:
    """
    Round an SDP solution to an assignment through its leading eigenvector.

    SBM kinds give +1 to the n/2 largest entries and are then flipped so the
    first vertex is +1. PDS kinds orient the eigenvector to a non-negative
    sum and mark its K largest entries. Ties go to the lower index.

    Raises
    ------
    NotConvergedError
        If `sol.status` is not Converged.
    InvalidProblemError
        If a PDS kind has no cluster size.
    """
    if sol.status != "Converged":
        msg = f"cannot round a solution with status {sol.status}"
        raise NotConvergedError(msg)
    kind = kind or sol.kind
    n = sol.n
    v = _leading_vector(sol.Y)

    if kind.startswith("SBM"):
        values = np.full(n, -1, dtype=np.int64)
        values[_top_indices(v, n // 2)] = 1
        if values[0] < 0:
            values = -values
        return Assignment.from_vector("PM1", values)

    k = K if K is not None else sol.K
    if k is None or not 1 <= k <= n:
        msg = f"PDS rounding needs 1 <= K <= n, got {k}"
        raise InvalidProblemError(msg)
    if v.sum() < 0:
        v = -v
    values = np.zeros(n, dtype=np.int64)
    values[_top_indices(v, k)] = 1
    return Assignment.from_vector("Indicator", values)


def is_integral(
    sol: SdpSolution | np.ndarray,
    truth: Assignment,
    tol: float = DEFAULT_TOLERANCES.integral,
) -> bool:
    """
    Whether max |Y - v v^T| <= tol for the planted sigma or xi.

    Raises
    ------
    DimensionMismatchError
        If the solution and the assignment differ in size.
    """
    y = sol.Y if isinstance(sol, SdpSolution) else np.asarray(sol, dtype=np.float64)
    if y.shape != (truth.n, truth.n):
        msg = f"solution has shape {y.shape}, assignment has n={truth.n}"
        raise DimensionMismatchError(msg)
    return float(np.abs(y - truth.truth_matrix()).max()) <= tol
