"""
Context: Recovery || Category: Experiments || **Command: phase_diagram**.

Monte Carlo sweep over a grid of intensities. Every grid point gets its
own seed derived from the base seed, every trial a seed derived from its
point seed, so a sweep replays exactly whatever the pool size.
"""

import math

import polars as pl
from pydantic import ValidationError

from plantedsdp.core.standard_models.abstract.errors import (
    InvalidParamsError,
    PlantedSdpError,
)
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.experiments.phase_diagram import (
    SWEEP_SCHEMA,
    SweepData,
    SweepResult,
)
from plantedsdp.core.standard_models.recovery.experiments.trial import (
    TRIAL_SCHEMA,
    TrialData,
    TrialRecord,
)
from plantedsdp.core.standard_models.recovery.sdp import SolverOptions
from plantedsdp.core.utils.constants import MODEL_KINDS, TRIAL_METHODS
from plantedsdp.core.utils.core_helpers import parallel_map
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import log_start_end, setup_logger
from plantedsdp.recovery.experiments.phase_diagram.helpers import (
    theoretical_boundary,
    theory_margin,
    wilson_interval,
)
from plantedsdp.recovery.experiments.trial.model import run_trial
from plantedsdp.recovery.graph_models.helpers import derive_trial_seed

env = Env()
logger = setup_logger("PhaseDiagram", level=env.LOGGER_LEVEL)

_Task = tuple[int, ModelParams, int, TRIAL_METHODS, bool, SolverOptions | None]


def is_audited(method: TRIAL_METHODS, trial_index: int, audit_fraction: float) -> bool:
    """
    Whether a Certificate trial also runs the solver.

    Every `1 / audit_fraction`-th trial is audited.
    """
    if method != "Certificate" or audit_fraction <= 0:
        return False
    stride = max(1, round(1.0 / audit_fraction))
    return trial_index % stride == 0


def _run_task(task: _Task) -> tuple[int, TrialRecord]:
    point_index, params, trial_index, method, audit, options = task
    return point_index, run_trial(params, method, trial_index, options, audit=audit)


def _point_params(
    kind: MODEL_KINDS, n: int, a: float, b: float, rho: float, seed: int
) -> ModelParams:
    if kind == "SBM":
        return ModelParams(kind="SBM", n=n, a=a, b=b, seed=seed)
    return ModelParams(kind=kind, n=n, rho=rho, a=a, b=b, seed=seed)


@log_start_end(logger=logger)
def sweep_phase_diagram(  # noqa: PLR0913
    kind: MODEL_KINDS,
    a_grid: list[float],
    b_grid: list[float],
    rho: float,
    n: int,
    trials_per_point: int,
    method: TRIAL_METHODS = "Certificate",
    base_seed: int = 0,
    threads: int = 1,
    audit_fraction: float = 0.1,
    solver_options: SolverOptions | None = None,
    *,
    use_processes: bool = False,
) -> SweepResult:
    """
    Run `trials_per_point` trials at every (a, b) grid point.

    Parameters
    ----------
    kind : {"SBM", "PDS"}
        Model swept. `rho` is ignored for the SBM (always 1/2).
    a_grid, b_grid : list[float]
        Sorted intensity grids; points are visited in row-major (a, b) order.
    trials_per_point : int
        At least 1.
    method : {"Certificate", "SdpSolve", "Both"}
        Recovery test per trial; see `is_audited` for Certificate sweeps.
    base_seed : int
        Point `k` is seeded with `derive_trial_seed(base_seed, k)`.
    threads : int
        Worker pool size shared by all trials of the sweep.

    Returns
    -------
    SweepResult
        Per-point table (validated by SweepData), per-trial table (validated
        by TrialData), the seed list of every point and the theoretical
        boundary for every a.

    Raises
    ------
    InvalidParamsError
        On unsorted or empty grids, trials_per_point < 1 or an unsupported
        model kind. Failures at individual grid points are recorded, not
        raised.
    """
    if kind not in ("SBM", "PDS"):
        msg = f"sweeps support the SBM and PDS models, got {kind}"
        raise InvalidParamsError(msg)
    for name, grid in (("a_grid", a_grid), ("b_grid", b_grid)):
        if not grid or list(grid) != sorted(grid) or grid[0] < 0:
            msg = f"{name} must be non-empty, non-negative and sorted ascending"
            raise InvalidParamsError(msg)
    if trials_per_point < 1:
        msg = f"trials_per_point must be at least 1, got {trials_per_point}"
        raise InvalidParamsError(msg)
    if not 0.0 <= audit_fraction <= 1.0:
        msg = f"audit_fraction must lie in [0, 1], got {audit_fraction}"
        raise InvalidParamsError(msg)
    rho_used = 0.5 if kind == "SBM" else rho

    grid = [(a, b) for a in a_grid for b in b_grid]
    seeds: dict[int, list[int]] = {}
    point_seeds: list[int] = []
    point_errors: dict[int, str] = {}
    tasks: list[_Task] = []
    for point_index, (a, b) in enumerate(grid):
        point_seed = derive_trial_seed(base_seed, point_index)
        point_seeds.append(point_seed)
        seeds[point_index] = [
            derive_trial_seed(point_seed, t) for t in range(trials_per_point)
        ]
        try:
            params = _point_params(kind, n, a, b, rho_used, point_seed)
        except ValidationError as e:
            point_errors[point_index] = str(e.errors()[0]["msg"])
            logger.warning("grid point a=%g b=%g skipped: %s", a, b, point_errors[point_index])
            continue
        tasks.extend(
            (
                point_index,
                params,
                t,
                method,
                is_audited(method, t, audit_fraction),
                solver_options,
            )
            for t in range(trials_per_point)
        )

    logger.info(
        "sweeping %d grid points x %d trials on %d worker(s)",
        len(grid),
        trials_per_point,
        threads,
    )
    outcomes = parallel_map(
        _run_task, tasks, max_workers=threads, use_processes=use_processes
    )

    by_point: dict[int, list[TrialRecord]] = {}
    for point_index, record in outcomes:
        by_point.setdefault(point_index, []).append(record)

    rows = []
    violations = 0
    for point_index, (a, b) in enumerate(grid):
        records = by_point.get(point_index, [])
        successes = sum(record.success for record in records)
        violations += sum(record.soundness_violated for record in records)
        point_trials = 0 if point_index in point_errors else trials_per_point
        lo, hi = (
            wilson_interval(successes, point_trials) if point_trials else (None, None)
        )
        rows.append(
            {
                "a": float(a),
                "b": float(b),
                "rho": float(rho_used),
                "n": n,
                "trials": point_trials,
                "successes": successes,
                "wilson_lo": lo,
                "wilson_hi": hi,
                "theory_margin": _safe_margin(kind, a, b, rho_used),
            }
        )
    if violations:
        logger.warning(
            "%d trial(s) passed the certificate without an integral SDP solution",
            violations,
        )

    points = SweepData.validate(pl.DataFrame(rows, schema=SWEEP_SCHEMA))
    trial_rows = [
        record.to_row(point_index)
        for point_index, record in outcomes
    ]
    trials = TrialData.validate(pl.DataFrame(trial_rows, schema=TRIAL_SCHEMA))

    return SweepResult(
        kind=kind,
        points=points,
        trials=trials,
        seeds=seeds,
        point_seeds=point_seeds,
        base_seed=base_seed,
        boundary={a: theoretical_boundary(kind, a, rho_used) for a in a_grid},
        soundness_violations=violations,
        point_errors=point_errors,
    )


def _safe_margin(kind: MODEL_KINDS, a: float, b: float, rho: float) -> float:
    try:
        return theory_margin(kind, a, b, rho)
    except PlantedSdpError:
        return math.nan
