"""
Context: Recovery || Category: Experiments || **Command: adversary**.

Certify planted instances, let a monotone adversary edit them, and check
that the SDP still returns the planted solution.
"""

import polars as pl

from plantedsdp.core.standard_models.abstract.errors import (
    InvalidParamsError,
    PlantedSdpError,
)
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.experiments.adversary import (
    ADVERSARY_SCHEMA,
    AdversaryData,
)
from plantedsdp.core.standard_models.recovery.sdp import SdpProblem, SolverOptions
from plantedsdp.core.utils.constants import DEFAULT_TOLERANCES
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import log_start_end, setup_logger
from plantedsdp.recovery.experiments.trial.helpers import sdp_kind_for
from plantedsdp.recovery.experiments.trial.model import certify_instance
from plantedsdp.recovery.graph_models.helpers import derive_trial_seed
from plantedsdp.recovery.graph_models.model import (
    apply_monotone_adversary,
    random_monotone_edits,
    sample_planted,
)
from plantedsdp.recovery.sdp_solver.model import is_integral, solve

env = Env()
logger = setup_logger("Adversary", level=env.LOGGER_LEVEL)


@log_start_end(logger=logger)
def monotone_adversary_experiment(
    params: ModelParams,
    instances: int,
    edits: int = 100,
    solver_options: SolverOptions | None = None,
) -> pl.DataFrame:
    """
    Run the adversary on `instances` sampled graphs.

    Instance `i` is sampled with `derive_trial_seed(params.seed, i)`; its
    edit list is drawn from `derive_trial_seed(instance_seed, 0)`.

    Returns
    -------
    pl.DataFrame
        Validated by AdversaryData. `integral_after` is null for instances
        whose certificate failed, so those never count as violations.

    Raises
    ------
    InvalidParamsError
        If `instances` < 1, `edits` < 0, or the model is not an SBM or PDS
        model with the denser side inside the clusters.
    """
    if instances < 1 or edits < 0:
        msg = f"need instances >= 1 and edits >= 0, got {instances}, {edits}"
        raise InvalidParamsError(msg)
    if params.kind not in ("SBM", "PDS") or params.regime != "AGreater":
        msg = f"the adversary experiment needs an SBM or PDS model with a >= b, got {params.kind} {params.regime}"
        raise InvalidParamsError(msg)

    regime = params.regime
    rows = []
    for index in range(instances):
        seed = derive_trial_seed(params.seed, index)
        row: dict[str, object] = {
            "instance": index,
            "seed": seed,
            "certified": False,
            "added": 0,
            "removed": 0,
            "integral_after": None,
            "failure_reason": None,
        }
        try:
            g, truth = sample_planted(params.model_copy(update={"seed": seed}))
            row["certified"] = certify_instance(g, truth, params, regime)
            if row["certified"]:
                add, remove = random_monotone_edits(
                    g, truth, edits, derive_trial_seed(seed, 0)
                )
                edited = apply_monotone_adversary(g, truth, add, remove)
                sol = solve(
                    SdpProblem(
                        kind=sdp_kind_for(params, regime),
                        adjacency=edited.adj,
                        K=params.K if params.kind == "PDS" else None,
                    ),
                    solver_options,
                )
                row.update(
                    added=len(add),
                    removed=len(remove),
                    integral_after=is_integral(
                        sol, truth, DEFAULT_TOLERANCES.integral
                    ),
                )
        except PlantedSdpError as e:
            row["failure_reason"] = f"{type(e).__name__}: {e}"
            logger.warning("instance %d (seed %d) failed: %s", index, seed, e)
        if row["integral_after"] is False:
            logger.warning(
                "instance %d (seed %d) lost integrality after %d edits",
                index,
                seed,
                edits,
            )
        rows.append(row)

    return AdversaryData.validate(pl.DataFrame(rows, schema=ADVERSARY_SCHEMA))
