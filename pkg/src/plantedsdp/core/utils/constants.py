"""A module to contain all project-wide constants."""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

MODEL_KINDS = Literal["SBM", "PDS", "PlantedCluster"]
ASSIGNMENT_KINDS = Literal["PM1", "Indicator", "Labels"]
REGIMES = Literal["AGreater", "BGreater"]
SDP_KINDS = Literal["SBM_MAX", "SBM_MIN", "PDS_MAX", "PDS_MIN"]
SOLVER_STATUSES = Literal["Converged", "MaxIters", "Diverged"]
TRIAL_METHODS = Literal["Certificate", "SdpSolve", "Both"]
BOUNDARY_BRANCHES = Literal["lower", "upper"]
SPECTRAL_RULES = Literal["ConstTimesLogOverN", "SubLog"]
OUTPUT_FORMATS = Literal["csv", "json"]

# Exhaustive-search limits of the oracle.
MAX_BISECTION_N = 20
MAX_SUBSETS = 1_000_000

# Two-sided 95% normal quantile used for Wilson intervals.
WILSON_CONFIDENCE = 0.95


class Tolerances(BaseModel):
    """Numerical tolerances shared by symlin, certificates and rounding."""

    model_config = ConfigDict(frozen=True)

    eig_reconstruction: float = Field(
        default=1e-8,
        description="Relative bound on ||M - Q diag(w) Q^T|| / ||M||.",
    )
    orthonormality: float = Field(
        default=1e-10, description="Bound on max |Q^T Q - I|."
    )
    null_vector: float = Field(
        default=1e-8,
        description="Relative kernel test ||M v|| <= tol ||M|| ||v||.",
    )
    kernel: float = Field(
        default=1e-8, description="Certificate bound on ||S v||_inf."
    )
    strictness: float = Field(
        default=1e-8,
        description="Restricted second eigenvalue must exceed this.",
    )
    sign: float = Field(
        default=1e-10,
        description="Slack allowed on d >= 0 and b >= 0 sign checks.",
    )
    slackness: float = Field(
        default=1e-12,
        description="Entries that must vanish by complementary slackness.",
    )
    integral: float = Field(
        default=1e-3,
        description="Max-entry distance of Y to the planted rank-one matrix.",
    )
    threshold_consistency: float = Field(
        default=1e-10,
        description="Agreement required between the two forms of f(a, b).",
    )
    boundary_xtol: float = Field(
        default=1e-12, description="Absolute bracket width for bisection."
    )


DEFAULT_TOLERANCES = Tolerances()
