"""
Context: Recovery || Category: Experiments || **Command: trial**.

One Monte Carlo trial: sample an instance with the derived seed, then run
the certificate, the SDP solver, or both, and the ML failure witness.
"""

import time

from pydantic import ValidationError

from plantedsdp.core.standard_models.abstract.errors import PlantedSdpError
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.experiments.trial import TrialRecord
from plantedsdp.core.standard_models.recovery.graph import Assignment, Graph
from plantedsdp.core.standard_models.recovery.sdp import SdpProblem, SolverOptions
from plantedsdp.core.utils.constants import DEFAULT_TOLERANCES, REGIMES, TRIAL_METHODS
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import setup_logger
from plantedsdp.recovery.certificates.model import (
    build_pds_certificate,
    build_sbm_certificate,
)
from plantedsdp.recovery.experiments.trial.helpers import (
    converse_event_statistics,
    sdp_kind_for,
)
from plantedsdp.recovery.graph_models.helpers import derive_trial_seed
from plantedsdp.recovery.graph_models.model import sample_planted
from plantedsdp.recovery.oracle.model import ml_failure_witness
from plantedsdp.recovery.sdp_solver.model import is_integral, round_solution, solve

env = Env()
logger = setup_logger("Trial", level=env.LOGGER_LEVEL)


def certify_instance(
    g: Graph, truth: Assignment, params: ModelParams, regime: REGIMES
) -> bool:
    """Build and verify the certificate matching `params.kind`."""
    if params.kind == "SBM":
        cert = build_sbm_certificate(g, truth, params.p, params.q, regime)
    else:
        cert = build_pds_certificate(g, truth, params, regime)
    return bool(cert.verdict and cert.verdict.passed)


def solve_instance(
    g: Graph,
    truth: Assignment,
    params: ModelParams,
    regime: REGIMES,
    solver_options: SolverOptions | None = None,
) -> tuple[bool, bool | None, int]:
    """
    Solve the relaxation and test it against the truth.

    Returns
    -------
    tuple[bool, bool | None, int]
        Integrality, rounding agreement (None unless converged) and the
        iteration count. MaxIters solutions still count when integral.
    """
    problem = SdpProblem(
        kind=sdp_kind_for(params, regime),
        adjacency=g.adj,
        K=params.K if params.kind != "SBM" else None,
    )
    sol = solve(problem, solver_options)
    integral = is_integral(sol, truth, DEFAULT_TOLERANCES.integral)
    agrees = None
    if sol.status == "Converged":
        rounded = round_solution(sol)
        agrees = _same_partition(rounded, truth)
    return integral, agrees, sol.iterations


def _same_partition(found: Assignment, truth: Assignment) -> bool:
    if truth.kind == "PM1":
        return found.values == truth.values or found.values == tuple(
            -v for v in truth.values
        )
    return found.values == truth.values


def run_trial(  # noqa: PLR0913
    params: ModelParams,
    method: TRIAL_METHODS,
    trial_index: int = 0,
    solver_options: SolverOptions | None = None,
    *,
    run_witness: bool = True,
    audit: bool = False,
    seed: int | None = None,
) -> TrialRecord:
    """
    Run one trial on a fresh instance.

    Parameters
    ----------
    params : ModelParams
        The model; `params.seed` is the base seed.
    method : {"Certificate", "SdpSolve", "Both"}
        Which recovery test(s) to run.
    trial_index : int
        Combined with the base seed through `derive_trial_seed`.
    solver_options : SolverOptions, optional
        Passed to the ADMM solver.
    run_witness : bool
        Also search for an improving swap (PDS only) and record E1-E3.
    audit : bool
        Run the solver on a Certificate trial as well. The result lands in
        `sdp_integral` only; `success` stays the certificate verdict.
    seed : int, optional
        Use this instance seed as is instead of deriving one.

    Returns
    -------
    TrialRecord
        Library errors are caught and stored in `failure_reason`; the
        outcomes that did not complete stay None.
    """
    seed = derive_trial_seed(params.seed, trial_index) if seed is None else seed
    trial_params = params.model_copy(update={"seed": seed})
    regime = params.regime
    outcome: dict[str, object] = {}
    start = time.perf_counter()

    try:
        g, truth = sample_planted(trial_params)
        if method in ("Certificate", "Both"):
            outcome["certificate_pass"] = certify_instance(g, truth, params, regime)
        if method in ("SdpSolve", "Both") or audit:
            integral, agrees, iterations = solve_instance(
                g, truth, params, regime, solver_options
            )
            outcome.update(
                sdp_integral=integral,
                rounding_agrees=agrees,
                solver_iterations=iterations,
            )
        if run_witness and params.kind == "PDS":
            witness = ml_failure_witness(g, truth, params.K, regime)
            outcome["witness_found"] = witness is not None
            e1, e2, e3 = converse_event_statistics(g, truth, params)
            outcome.update(event_e1=e1, event_e2=e2, event_e3=e3)
    except (PlantedSdpError, ValidationError, ValueError) as e:
        outcome["failure_reason"] = f"{type(e).__name__}: {e}"
        logger.warning(
            "trial %d (seed %d) failed: %s", trial_index, seed, outcome["failure_reason"]
        )

    record = TrialRecord(
        trial_index=trial_index,
        seed=seed,
        params=trial_params,
        method=method,
        wall_time_ms=(time.perf_counter() - start) * 1000.0,
        **outcome,
    )
    if record.soundness_violated:
        logger.warning(
            "certificate passed but the SDP solution is not integral (seed %d)", seed
        )
    return record
