"""
Context: Recovery || Category: Symmetric Linear Algebra || **Command: symlin**.

Dense symmetric eigenvalue routines used by the certificates and the ADMM
solver. Every routine symmetrizes its input and rejects non-finite entries.
"""

import numpy as np
import numpy.typing as npt
import scipy.linalg
from pydantic import BaseModel, ConfigDict

from plantedsdp.core.standard_models.abstract.errors import (
    NonFiniteError,
    NullVectorNotInKernelError,
)
from plantedsdp.core.utils.constants import DEFAULT_TOLERANCES, Tolerances
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import setup_logger

env = Env()
logger = setup_logger("SymLin", level=env.LOGGER_LEVEL)

SymMatrix = npt.NDArray[np.float64]


class EigenResult(BaseModel):
    """Ascending eigenvalues with orthonormal eigenvectors as columns."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_sym_matrix(m: npt.ArrayLike) -> SymMatrix:
    """
    Return a float64 copy of `m` that is exactly symmetric.

    Raises
    ------
    NonFiniteError
        If `m` holds NaN or infinite entries.
    ValueError
        If `m` is not square.
    """
    arr = np.array(m, dtype=np.float64, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:  # noqa: PLR2004
        msg = f"expected a square matrix, got shape {arr.shape}"
        raise ValueError(msg)
    if not np.isfinite(arr).all():
        msg = "matrix has non-finite entries"
        raise NonFiniteError(msg)
    return (arr + arr.T) / 2.0


def eig_sym(m: npt.ArrayLike) -> EigenResult:
    """
    Full eigendecomposition of a symmetric matrix.

    Parameters
    ----------
    m : array_like
        Square matrix; it is symmetrized before factorization.

    Returns
    -------
    EigenResult
        Eigenvalues ascending. LAPACK's deterministic driver is used, so the
        same input always yields the same output.
    """
    sym = as_sym_matrix(m)
    w, q = scipy.linalg.eigh(sym, driver="evd", check_finite=False)
    return EigenResult(eigenvalues=w, eigenvectors=q)


def eigvals_sym(m: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Ascending eigenvalues only."""
    return scipy.linalg.eigh(
        as_sym_matrix(m), eigvals_only=True, check_finite=False
    )


def spectral_norm(m: npt.ArrayLike) -> float:
    """max |lambda_i| of a symmetric matrix; 0 for the zero matrix."""
    w = eigvals_sym(m)
    if w.size == 0:
        return 0.0
    return float(max(abs(w[0]), abs(w[-1])))


def min_eigenvalue(m: npt.ArrayLike) -> float:
    return float(eigvals_sym(m)[0])


def lambda2_restricted(
    m: npt.ArrayLike,
    null_vec: npt.ArrayLike,
    tol_null: float | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """
    Smallest eigenvalue of `m` on the orthogonal complement of `null_vec`.

    The matrix is compressed to P m P with P = I - v v^T / ||v||^2, which has
    v as an eigenvector of eigenvalue zero. That eigenpair (the eigenvector
    with the largest overlap with v) is dropped and the minimum of the rest
    is returned.

    Parameters
    ----------
    m : array_like
        Symmetric matrix.
    null_vec : array_like
        Non-zero vector that must satisfy ||m v|| <= tol_null.
    tol_null : float, optional
        Absolute kernel tolerance. Defaults to
        `tolerances.null_vector * ||m||_F * ||v||`.

    Raises
    ------
    NullVectorNotInKernelError
        If `null_vec` is not (numerically) in the kernel of `m`.
    """
    sym = as_sym_matrix(m)
    v = np.asarray(null_vec, dtype=np.float64).ravel()
    if v.shape[0] != sym.shape[0]:
        msg = f"null vector has length {v.shape[0]}, matrix has size {sym.shape[0]}"
        raise ValueError(msg)
    v_norm = float(np.linalg.norm(v))
    if v_norm == 0.0:
        msg = "null vector must be non-zero"
        raise ValueError(msg)

    if tol_null is None:
        tol_null = tolerances.null_vector * float(np.linalg.norm(sym)) * v_norm
    residual = float(np.linalg.norm(sym @ v))
    if residual > tol_null:
        msg = f"||M v|| = {residual:.3e} exceeds {tol_null:.3e}"
        raise NullVectorNotInKernelError(msg)

    if sym.shape[0] == 1:
        return 0.0

    v_hat = v / v_norm
    projected = sym - np.outer(sym @ v_hat, v_hat)
    projected = projected - np.outer(v_hat, v_hat @ projected)
    result = eig_sym(projected)

    overlap = np.abs(result.eigenvectors.T @ v_hat)
    keep = np.ones(result.eigenvalues.shape[0], dtype=bool)
    keep[int(np.argmax(overlap))] = False
    value = float(result.eigenvalues[keep].min())
    logger.debug("restricted lambda_2 = %.6e (||M v|| = %.2e)", value, residual)
    return value


def project_psd(m: npt.ArrayLike) -> SymMatrix:
    """Nearest positive semidefinite matrix in Frobenius norm."""
    result = eig_sym(m)
    w = np.clip(result.eigenvalues, 0.0, None)
    q = result.eigenvectors
    out = (q * w) @ q.T
    return (out + out.T) / 2.0


def check_decomposition(
    m: npt.ArrayLike,
    result: EigenResult,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> bool:
    """Whether `result` reconstructs `m` and has orthonormal vectors."""
    sym = as_sym_matrix(m)
    q, w = result.eigenvectors, result.eigenvalues
    scale = max(float(np.linalg.norm(sym)), 1.0)
    recon = float(np.linalg.norm(sym - (q * w) @ q.T)) / scale
    ortho = float(np.abs(q.T @ q - np.eye(q.shape[1])).max()) if q.size else 0.0
    return (
        recon <= tolerances.eig_reconstruction
        and ortho <= tolerances.orthonormality
        and bool(np.all(np.diff(w) >= 0))
    )
