"""
Context: Recovery || Category: Thresholds || **Command: thresholds**.

Closed-form exact-recovery thresholds, the PDS phase boundary, and the
binomial tail estimates the recovery analysis rests on. All tail quantities
are computed in log space.
"""

import math

import numpy as np
import scipy.optimize
import scipy.special
import scipy.stats

from plantedsdp.core.standard_models.abstract.errors import (
    DomainError,
    NegativeIntensityError,
    NoBoundaryError,
)
from plantedsdp.core.standard_models.recovery.thresholds import ThresholdPoint
from plantedsdp.core.utils.constants import (
    BOUNDARY_BRANCHES,
    DEFAULT_TOLERANCES,
    Tolerances,
)
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import setup_logger

env = Env()
logger = setup_logger("Thresholds", level=env.LOGGER_LEVEL)


def _check_intensities(a: float, b: float) -> None:
    if a < 0 or b < 0:
        msg = f"intensities must be non-negative, got a={a}, b={b}"
        raise NegativeIntensityError(msg)


def tau_star(a: float, b: float) -> float:
    """
    Logarithmic mean (a - b) / (ln a - ln b).

    Zero when either intensity is zero; equal to `a` when a == b. The log
    ratio goes through log1p so nearly equal intensities keep a non-zero
    denominator.
    """
    _check_intensities(a, b)
    if a == 0 or b == 0:
        return 0.0
    if a == b:
        return float(a)
    return (a - b) / math.log1p((a - b) / b)


def f_threshold(
    a: float, b: float, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """
    The exact-recovery exponent f(a, b) of the planted dense subgraph model.

    f is symmetric, non-negative and zero exactly when a == b. Both algebraic
    forms a - tau ln(e a / tau) and b - tau ln(e b / tau) are evaluated and
    must agree.

    Raises
    ------
    NegativeIntensityError
        If a < 0 or b < 0.
    DomainError
        If the two forms disagree beyond `tolerances.threshold_consistency`.
    """
    _check_intensities(a, b)
    if a == b:
        return 0.0
    if b == 0:
        return float(a)
    if a == 0:
        return float(b)

    tau = tau_star(a, b)
    from_a = a - tau * (1.0 + math.log(a) - math.log(tau))
    from_b = b - tau * (1.0 + math.log(b) - math.log(tau))
    if abs(from_a - from_b) > tolerances.threshold_consistency * max(1.0, a, b):
        msg = f"f({a}, {b}) forms disagree: {from_a!r} vs {from_b!r}"
        raise DomainError(msg)
    return max(from_a, 0.0)


def sbm_gap(a: float, b: float) -> float:
    """(sqrt(a) - sqrt(b))^2 - 2; positive means the SBM is recoverable."""
    _check_intensities(a, b)
    return (math.sqrt(a) - math.sqrt(b)) ** 2 - 2.0


def sbm_degree_exponent(a: float, b: float, rho: float) -> float:
    """rho (sqrt(a) - sqrt(b))^2, the exponent of P{X - R <= ln n / ln ln n}."""
    _check_intensities(a, b)
    return rho * (math.sqrt(a) - math.sqrt(b)) ** 2


def sbm_boundary(a: float, branch: BOUNDARY_BRANCHES = "lower") -> float:
    """
    The b with (sqrt(a) - sqrt(b))^2 = 2 on the requested side of a.

    Raises
    ------
    NoBoundaryError
        If the lower branch is requested with a <= 2.
    """
    _check_intensities(a, 0.0)
    if branch == "upper":
        return (math.sqrt(a) + math.sqrt(2.0)) ** 2
    if a <= 2.0:  # noqa: PLR2004
        msg = f"no lower SBM boundary for a={a} <= 2"
        raise NoBoundaryError(msg)
    return (math.sqrt(a) - math.sqrt(2.0)) ** 2


def phase_boundary(
    a: float,
    rho: float,
    branch: BOUNDARY_BRANCHES = "lower",
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """
    Solve rho f(a, b) = 1 for b on one side of a.

    Parameters
    ----------
    a : float
        In-cluster intensity.
    rho : float
        Cluster fraction in (0, 1].
    branch : {"lower", "upper"}
        Lower searches b in [0, a), upper searches b > a.

    Returns
    -------
    float
        The boundary b, to an absolute accuracy of `tolerances.boundary_xtol`.

    Raises
    ------
    NoBoundaryError
        For the lower branch when rho * a <= 1 (f(a, .) never reaches 1 / rho).
    DomainError
        If rho is outside (0, 1].

    Notes
    -----
    f(a, .) decreases on [0, a] from a to 0 and increases without bound on
    [a, inf), so each branch has at most one root. The upper bracket is
    grown geometrically from max(a, 1) * e^4 until it changes sign.
    """
    _check_intensities(a, 0.0)
    if not 0.0 < rho <= 1.0:
        msg = f"rho must lie in (0, 1], got {rho}"
        raise DomainError(msg)
    target = 1.0 / rho

    def gap(b: float) -> float:
        return f_threshold(a, b, tolerances) - target

    if branch == "lower":
        if a * rho <= 1.0:
            msg = f"rho * a = {rho * a:.6g} <= 1: no lower boundary"
            raise NoBoundaryError(msg)
        root = scipy.optimize.bisect(
            gap, 0.0, a, xtol=tolerances.boundary_xtol, maxiter=500
        )
    else:
        hi = max(a, 1.0) * math.exp(4.0)
        while gap(hi) < 0.0:
            hi *= 2.0
        root = scipy.optimize.bisect(
            gap, a, hi, xtol=tolerances.boundary_xtol, maxiter=500
        )
    logger.debug("phase boundary a=%s rho=%s %s -> b=%.12g", a, rho, branch, root)
    return float(root)


def threshold_point(a: float, b: float, rho: float) -> ThresholdPoint:
    """All threshold quantities at (a, b, rho)."""
    f_value = f_threshold(a, b)
    return ThresholdPoint(
        a=a,
        b=b,
        rho=rho,
        tau_star=tau_star(a, b),
        f_value=f_value,
        pds_margin=rho * f_value - 1.0,
        sbm_gap=sbm_gap(a, b),
    )


def _kl_bernoulli(lam: float, p: float) -> float:
    """KL divergence between Bern(lam) and Bern(p) via scipy's rel_entr."""
    return float(
        scipy.special.rel_entr(lam, p) + scipy.special.rel_entr(1 - lam, 1 - p)
    )


def _check_binomial_args(n_trials: int, prob: float, k: int) -> float:
    if not 0 < k < n_trials:
        msg = f"need 0 < k < n, got k={k}, n={n_trials}"
        raise DomainError(msg)
    if not 0.0 < prob < 1.0:
        msg = f"need 0 < p < 1, got p={prob}"
        raise DomainError(msg)
    return k / n_trials


def log_binomial_tail_bounds(
    n_trials: int, prob: float, k: int
) -> tuple[float, float]:
    """
    Log of the lower and upper bounds on P{Binom(n, p) >= k}.

    With lambda = k / n and d the Bernoulli divergence D(lambda || p):
    lower = -n d - ln(8 k (1 - lambda)) / 2 and upper = -n d. The upper bound
    is the Chernoff bound and only holds for lambda >= p; below that it is
    replaced by 0 (probability one).

    Raises
    ------
    DomainError
        Unless 0 < k < n and 0 < p < 1.
    """
    lam = _check_binomial_args(n_trials, prob, k)
    exponent = -n_trials * _kl_bernoulli(lam, prob)
    log_lower = exponent - 0.5 * math.log(8.0 * k * (1.0 - lam))
    log_upper = exponent if lam >= prob else 0.0
    return min(log_lower, 0.0), min(log_upper, 0.0)


def binomial_tail_bounds(
    n_trials: int, prob: float, k: int
) -> tuple[float, float]:
    """
    Lower and upper bounds on P{Binom(n, p) >= k}.

    See `log_binomial_tail_bounds`; this returns the exponentiated pair.
    """
    log_lower, log_upper = log_binomial_tail_bounds(n_trials, prob, k)
    return math.exp(log_lower), math.exp(log_upper)


def exact_binomial_tail(n_trials: int, prob: float, k: int) -> float:
    """P{Binom(n, p) >= k}, summed in log space."""
    if k <= 0:
        return 1.0
    if k > n_trials:
        return 0.0
    ks = np.arange(k, n_trials + 1)
    log_terms = scipy.stats.binom.logpmf(ks, n_trials, prob)
    return float(np.exp(scipy.special.logsumexp(log_terms)))


def log_binomial_coefficient_bounds(n: int, k: int) -> tuple[float, float]:
    """
    Log bounds on C(n, k) from Stirling's formula.

    With lambda = k / n and h the natural-log binary entropy,
    C(n, k) lies in sqrt(pi) / 2 * base ... base where
    base = (2 pi n lambda (1 - lambda))^(-1/2) e^(n h(lambda)).
    """
    if not 0 < k < n:
        msg = f"need 0 < k < n, got k={k}, n={n}"
        raise DomainError(msg)
    lam = k / n
    entropy = float(scipy.special.entr(lam) + scipy.special.entr(1 - lam))
    log_base = n * entropy - 0.5 * math.log(2.0 * math.pi * n * lam * (1 - lam))
    return log_base + math.log(math.sqrt(math.pi) / 2.0), log_base


def chernoff_upper_tail(n_trials: int, prob: float, r: float) -> float:
    """
    Chernoff bound (e / r)^(r n p) on P{Binom(n, p) >= r n p}, for r >= 1.

    Values above one are clipped to one.
    """
    if r < 1.0:
        msg = f"the bound needs r >= 1, got {r}"
        raise DomainError(msg)
    mean = n_trials * prob
    log_bound = r * mean * (1.0 - math.log(r))
    return math.exp(min(log_bound, 0.0))


def tail_exponents(
    a: float, b: float, rho: float, tau: float
) -> tuple[float, float]:
    """
    Exponents of the two tail events at level tau ln(n).

    Returns
    -------
    tuple[float, float]
        x_exponent = rho (a - tau ln(e a / tau)), the lower-tail exponent of
        a Binom(K, p) degree, and r_exponent = rho (b - tau ln(e b / tau)),
        the upper-tail exponent of a Binom(K, q) degree. At tau = tau* both
        equal rho f(a, b).

    Raises
    ------
    DomainError
        Unless b <= tau <= a.
    """
    _check_intensities(a, b)
    if not (tau >= 0.0 and tau <= a and tau >= b):
        msg = f"tau={tau} must lie in [b, a] = [{b}, {a}]"
        raise DomainError(msg)

    def exponent(intensity: float) -> float:
        if tau == 0.0:
            return rho * intensity
        if intensity == 0.0:
            return math.inf
        return rho * (intensity - tau * (1.0 + math.log(intensity) - math.log(tau)))

    return exponent(a), exponent(b)
