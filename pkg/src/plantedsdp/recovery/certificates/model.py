"""
Context: Recovery || Category: Certificates || **Command: certify**.

Explicit dual certificates for the two relaxations. A certificate that
verifies proves the planted solution is the unique SDP optimum, without
running the solver.
"""

import math

import numpy as np

from plantedsdp.core.standard_models.abstract.errors import (
    DimensionMismatchError,
    DomainError,
    InvalidTruthError,
    MissingIntensitiesError,
    UnbalancedTruthError,
)
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.certificates import (
    PdsCertificate,
    SbmCertificate,
    Verdict,
)
from plantedsdp.core.standard_models.recovery.graph import Assignment, Graph
from plantedsdp.core.utils.constants import DEFAULT_TOLERANCES, REGIMES, Tolerances
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import setup_logger
from plantedsdp.recovery.graph_models.model import expected_adjacency
from plantedsdp.recovery.symlin.model import lambda2_restricted, spectral_norm
from plantedsdp.recovery.thresholds.model import tau_star

env = Env()
logger = setup_logger("Certificates", level=env.LOGGER_LEVEL)


def _signed_adjacency(g: Graph, regime: REGIMES) -> np.ndarray:
    adj = g.as_float()
    return adj if regime == "AGreater" else -adj


def build_sbm_certificate(  # noqa: PLR0913
    g: Graph,
    truth: Assignment,
    p: float,
    q: float,
    regime: REGIMES = "AGreater",
    lambda_star: float | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> SbmCertificate:
    """
    Build S* = D* - A + lambda* J for the bisection relaxation.

    d*_i = sum_j A_ij sigma_i sigma_j, lambda* = (p + q) / 2. For BGreater the
    adjacency is negated and lambda* = -(p + q) / 2. Any larger lambda* is
    also admissible and may be passed explicitly.

    Returns
    -------
    SbmCertificate
        With `lambda2_perp`, the smallest eigenvalue of S* orthogonal to sigma,
        and the verdict of `verify_sbm_certificate`.

    Raises
    ------
    UnbalancedTruthError
        If `truth` is not a balanced ±1 vector.
    DimensionMismatchError
        If `truth` and `g` differ in size.
    """
    if truth.kind != "PM1" or not truth.is_balanced:
        msg = "SBM certificates need a balanced ±1 assignment"
        raise UnbalancedTruthError(msg)
    if truth.n != g.n:
        msg = f"assignment has {truth.n} entries, graph has {g.n} vertices"
        raise DimensionMismatchError(msg)

    sigma = truth.vector
    adj = _signed_adjacency(g, regime)
    if lambda_star is None:
        lambda_star = (p + q) / 2.0 if regime == "AGreater" else -(p + q) / 2.0

    d = sigma * (adj @ sigma)
    s_matrix = np.diag(d) - adj + lambda_star * np.ones((g.n, g.n))
    lambda2 = lambda2_restricted(s_matrix, sigma, tolerances=tolerances)

    p_hat = p if regime == "AGreater" else -q
    eta = spectral_norm(g.as_float() - _sbm_expected(sigma, p, q))
    cert = SbmCertificate(
        regime=regime,
        truth=sigma,
        lambda_star=float(lambda_star),
        S=s_matrix,
        lambda2_perp=lambda2,
        psd_lower_bound=float(d.min()) + p_hat - eta,
        d=d,
    )
    return cert.model_copy(update={"verdict": verify_sbm_certificate(cert, tolerances)})


def _sbm_expected(sigma: np.ndarray, p: float, q: float) -> np.ndarray:
    n = sigma.shape[0]
    return (p - q) / 2.0 * np.outer(sigma, sigma) + (p + q) / 2.0 * np.ones((n, n)) - p * np.eye(n)


def verify_sbm_certificate(
    cert: SbmCertificate, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Verdict:
    """
    Check ||S* sigma||_inf <= kernel tolerance and lambda2_perp > strictness.

    The verdict lists one reason per failed condition.
    """
    reasons = []
    kernel = float(np.abs(cert.S @ cert.truth).max())
    if kernel > tolerances.kernel:
        reasons.append(f"kernel violation: ||S sigma||_inf = {kernel:.3e}")
    if not cert.lambda2_perp > tolerances.strictness:
        reasons.append(
            f"λ₂ not strictly positive: {cert.lambda2_perp:.3e}"
        )
    if reasons:
        logger.debug("SBM certificate failed: %s", "; ".join(reasons))
    return Verdict(passed=not reasons, reasons=tuple(reasons))


def build_pds_certificate(
    g: Graph,
    truth: Assignment,
    params: ModelParams,
    regime: REGIMES | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> PdsCertificate:
    """
    Build the PDS certificate S* = D* - B* - A + eta* I + lambda* J.

    With C* the planted cluster, e_i = sum_{j in C*} A_ij and
    eta* = ||A - E[A]||:

    - AGreater: lambda* = tau* ln n / n, d_i = e_i - eta* - lambda* K on C*,
      b_i = lambda* - e_i / K off C*.
    - BGreater: A is replaced by -A,
      lambda* = -tau* ln n / n - ln n / (K ln ln n) and eta* gains 2q.

    B*_ij = b_i for i off C*, j in C* (and symmetrically), zero elsewhere.

    Raises
    ------
    InvalidTruthError
        If `truth` is not an Indicator of size `params.K` on n vertices.
    MissingIntensitiesError
        If `params` lacks the intensities a, b needed for tau*.
    DomainError
        For BGreater with n <= e, where ln ln n is not positive.
    """
    k = params.K
    if truth.kind != "Indicator" or truth.n != g.n or sum(truth.values) != k:
        msg = f"PDS certificates need an indicator of size K={k} on {g.n} vertices"
        raise InvalidTruthError(msg)
    if params.n != g.n:
        msg = f"model has n={params.n}, graph has {g.n} vertices"
        raise DimensionMismatchError(msg)
    if not params.has_intensities:
        msg = "PDS certificates need the intensities a and b"
        raise MissingIntensitiesError(msg)
    regime = regime or params.regime

    n = g.n
    log_n = math.log(n)
    xi = truth.vector
    inside = xi > 0
    adj = _signed_adjacency(g, regime)
    eta = spectral_norm(g.as_float() - expected_adjacency(params, truth))
    tau = tau_star(params.a, params.b)  # type: ignore[arg-type]

    if regime == "AGreater":
        lam = tau * log_n / n
    else:
        log_log_n = math.log(log_n) if log_n > 0 else 0.0
        if log_log_n <= 0:
            msg = f"ln ln n must be positive, n={n}"
            raise DomainError(msg)
        lam = -tau * log_n / n - log_n / (k * log_log_n)
        eta += 2.0 * params.q

    e_in = adj[:, inside].sum(axis=1)
    d = np.where(inside, e_in - eta - lam * k, 0.0)
    b = np.where(inside, 0.0, lam - e_in / k)
    b_matrix = np.outer(b, xi) + np.outer(xi, b)

    s_matrix = (
        np.diag(d) - b_matrix - adj + eta * np.eye(n) + lam * np.ones((n, n))
    )
    lambda2 = lambda2_restricted(s_matrix, xi, tolerances=tolerances)

    p_hat = params.p if regime == "AGreater" else -params.q
    cert = PdsCertificate(
        regime=regime,
        truth=xi,
        lambda_star=float(lam),
        eta_star=float(eta),
        S=s_matrix,
        d=d,
        b=b,
        B=b_matrix,
        lambda2_perp=lambda2,
        psd_lower_bound=min(float(d[inside].min()) + p_hat, params.q),
    )
    return cert.model_copy(update={"verdict": verify_pds_certificate(cert, tolerances)})


def verify_pds_certificate(
    cert: PdsCertificate, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Verdict:
    """
    Check signs, the kernel condition, strictness and complementary slackness.

    Conditions: d >= 0 on C*, b >= 0 off C*, ||S* xi||_inf within the kernel
    tolerance, lambda2_perp strictly positive, d zero off C*, B* zero on the
    diagonal blocks.
    """
    xi = cert.truth
    inside = xi > 0
    reasons = []

    if np.any(cert.d[inside] < -tolerances.sign):
        reasons.append(f"D* sign: min d = {cert.d[inside].min():.3e}")
    if np.any(cert.b[~inside] < -tolerances.sign):
        reasons.append(f"B* sign: min b = {cert.b[~inside].min():.3e}")
    kernel = float(np.abs(cert.S @ xi).max())
    if kernel > tolerances.kernel:
        reasons.append(f"kernel violation: ||S xi||_inf = {kernel:.3e}")
    if not cert.lambda2_perp > tolerances.strictness:
        reasons.append(f"λ₂ not strictly positive: {cert.lambda2_perp:.3e}")

    same_block = np.equal.outer(inside, inside)
    off_support = max(
        float(np.abs(cert.d[~inside]).max(initial=0.0)),
        float(np.abs(cert.B[same_block]).max(initial=0.0)),
    )
    if off_support > tolerances.slackness:
        reasons.append(f"complementary slackness: {off_support:.3e}")

    if reasons:
        logger.debug("PDS certificate failed: %s", "; ".join(reasons))
    return Verdict(passed=not reasons, reasons=tuple(reasons))
