"""
Context: Recovery || Category: SDP Solver || **Helpers**.

Euclidean projections onto the constraint sets of the two relaxations and
the residual bookkeeping of the consensus ADMM.
"""

import numpy as np
import numpy.typing as npt

from plantedsdp.core.standard_models.abstract.errors import InvalidProblemError
from plantedsdp.core.standard_models.recovery.sdp import SdpProblem
from plantedsdp.recovery.symlin.model import project_psd

Matrix = npt.NDArray[np.float64]


def project_sbm_affine(m: Matrix) -> Matrix:
    """
    Project onto {Y : diag(Y) = 1, <J, Y> = 0}.

    The diagonal is set to one and every off-diagonal entry is shifted by the
    same amount so the grand sum vanishes.
    """
    n = m.shape[0]
    off_sum = float(m.sum() - np.trace(m))
    shift = -(off_sum + n) / (n * n - n)
    out = m + shift
    np.fill_diagonal(out, 1.0)
    return out


def project_pds_affine(m: Matrix, k: int) -> Matrix:
    """
    Project onto {Z : tr Z = K, <J, Z> = K^2}.

    The correction is alpha I + beta J with the two scalars fixed by the two
    constraints.
    """
    n = m.shape[0]
    trace = float(np.trace(m))
    total = float(m.sum())
    beta = (k * k - k - total + trace) / (n * n - n)
    alpha = (k - trace) / n - beta
    out = m + beta
    out[np.diag_indices(n)] += alpha
    return out


def project_pds_box(m: Matrix) -> Matrix:
    """Clip off-diagonal entries at zero from below and the diagonal at one from above."""
    diag = np.minimum(np.diag(m), 1.0)
    out = np.maximum(m, 0.0)
    np.fill_diagonal(out, diag)
    return out


def block_projections(problem: SdpProblem) -> list:
    """The projections whose intersection is the feasible set of `problem`."""
    if problem.is_pds:
        k = problem.K
        return [
            project_psd,
            lambda m: project_pds_affine(m, k),
            project_pds_box,
        ]
    return [project_psd, project_sbm_affine]


def validate_problem(problem: SdpProblem) -> None:
    """
    Raise InvalidProblemError unless the adjacency is a simple graph on at
    least two vertices and the PDS kinds carry 1 <= K <= n.
    """
    adj = problem.adjacency
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:  # noqa: PLR2004
        msg = f"adjacency must be square, got shape {adj.shape}"
        raise InvalidProblemError(msg)
    if adj.shape[0] < 2:  # noqa: PLR2004
        msg = "the relaxation needs at least two vertices"
        raise InvalidProblemError(msg)
    if not np.isin(adj, (0.0, 1.0)).all():
        msg = "adjacency entries must be 0 or 1"
        raise InvalidProblemError(msg)
    if not np.array_equal(adj, adj.T) or np.any(np.diag(adj)):
        msg = "adjacency must be symmetric with a zero diagonal"
        raise InvalidProblemError(msg)
    if problem.is_pds and (problem.K is None or not 1 <= problem.K <= adj.shape[0]):
        msg = f"{problem.kind} needs 1 <= K <= n, got K={problem.K}"
        raise InvalidProblemError(msg)


def consensus_residuals(
    blocks: list[Matrix], z: Matrix, z_old: Matrix, penalty: float
) -> tuple[float, float]:
    """Primal and dual residual norms of the consensus iteration."""
    primal = float(np.sqrt(sum(np.linalg.norm(x - z) ** 2 for x in blocks)))
    dual = penalty * np.sqrt(len(blocks)) * float(np.linalg.norm(z - z_old))
    return primal, dual


def working_cost(problem: SdpProblem) -> Matrix:
    """
    Cost matrix the ADMM iterates on, with the same maximisers as the objective.

    Every feasible point of both relaxations has a fixed <J - I, Y>
    (-n for SBM, K^2 - K for PDS), so the edge density d times J - I is
    subtracted from A without moving the optimum. MIN kinds then negate the
    centred matrix. The result is scaled to Frobenius norm n, the norm of
    the planted solution of the SBM relaxation.
    """
    adj = problem.adjacency
    n = adj.shape[0]
    off = ~np.eye(n, dtype=bool)
    density = float(adj[off].mean())
    centred = adj - density * off
    if problem.is_min:
        centred = -centred
    norm = float(np.linalg.norm(centred))
    if norm == 0.0:
        return centred
    return centred * (n / norm)


def stopping_thresholds(
    blocks: list[Matrix], z: Matrix, duals: list[Matrix], penalty: float, tol: float
) -> tuple[float, float]:
    """
    Primal and dual stopping thresholds, absolute plus relative.

    Both are `tol` times the norm of an all-ones stack plus `tol` times the
    size of the iterates (primal) or of the unscaled dual variables (dual).
    """
    n_blocks = len(blocks)
    floor = tol * z.shape[0] * np.sqrt(n_blocks)
    x_norm = float(np.sqrt(sum(np.linalg.norm(x) ** 2 for x in blocks)))
    z_norm = float(np.sqrt(n_blocks) * np.linalg.norm(z))
    u_norm = penalty * float(np.sqrt(sum(np.linalg.norm(u) ** 2 for u in duals)))
    return floor + tol * max(x_norm, z_norm), floor + tol * u_norm
