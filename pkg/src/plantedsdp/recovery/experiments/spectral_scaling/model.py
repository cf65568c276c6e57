"""
Context: Recovery || Category: Experiments || **Command: spectral_scaling**.

Growth of ||A - E[A]|| / sqrt(n p) for Erdos-Renyi graphs. With p of order
ln(n) / n the ratio stays bounded; below that order it grows like the floor
sqrt(ln n / ln(ln n / (n p))).
"""

import math

import numpy as np
import polars as pl
import scipy.stats

from plantedsdp.core.standard_models.abstract.errors import InvalidParamsError
from plantedsdp.core.standard_models.recovery.experiments.spectral_scaling import (
    SPECTRAL_SCHEMA,
    MedianTrend,
    SpectralData,
)
from plantedsdp.core.utils.constants import SPECTRAL_RULES
from plantedsdp.core.utils.core_helpers import parallel_map
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import log_start_end, setup_logger
from plantedsdp.recovery.graph_models.helpers import derive_trial_seed
from plantedsdp.recovery.graph_models.model import sample_erdos_renyi
from plantedsdp.recovery.symlin.model import spectral_norm

env = Env()
logger = setup_logger("SpectralScaling", level=env.LOGGER_LEVEL)


def edge_probability(n: int, rule: SPECTRAL_RULES) -> float:
    """
    p for the requested rule: 2 ln(n) / n, or ln(n) / (n ln ln n) for SubLog.

    Raises
    ------
    InvalidParamsError
        If the rule gives no probability in (0, 1] at this n.
    """
    log_n = math.log(n) if n > 1 else 0.0
    if rule == "ConstTimesLogOverN":
        p = 2.0 * log_n / n
    else:
        log_log_n = math.log(log_n) if log_n > 1.0 else 0.0
        if log_log_n <= 0.0:
            msg = f"SubLog needs ln ln n > 0, got n={n}"
            raise InvalidParamsError(msg)
        p = log_n / (n * log_log_n)
    if not 0.0 < p <= 1.0:
        msg = f"rule {rule} gives p={p:.6g} outside (0, 1] at n={n}"
        raise InvalidParamsError(msg)
    return p


def growth_floor(n: int, p: float) -> float | None:
    """sqrt(ln n / ln(ln n / (n p))), None where the inner log is not positive."""
    inner = math.log(n) / (n * p)
    if inner <= 1.0:
        return None
    denom = math.log(inner)
    if denom <= 0.0:
        return None
    return math.sqrt(math.log(n) / denom)


def spectral_ratio(n: int, p: float, seed: int) -> float:
    """||A - p (J - I)|| / sqrt(n p) for one G(n, p) sample."""
    g = sample_erdos_renyi(n, p, seed)
    expected = p * (np.ones((n, n)) - np.eye(n))
    return spectral_norm(g.as_float() - expected) / math.sqrt(n * p)


def _run_task(task: tuple[int, int, float, int]) -> dict[str, object]:
    n, trial_index, p, seed = task
    return {
        "n": n,
        "trial_index": trial_index,
        "seed": seed,
        "p": p,
        "ratio": spectral_ratio(n, p, seed),
        "floor": growth_floor(n, p),
    }


@log_start_end(logger=logger)
def spectral_scaling_experiment(
    n_list: list[int],
    p_rule: SPECTRAL_RULES = "ConstTimesLogOverN",
    trials: int = 20,
    base_seed: int = 0,
    threads: int = 1,
    *,
    use_processes: bool = False,
) -> pl.DataFrame:
    """
    Sample `trials` graphs for every n and record the normalized deviation.

    The seed of trial `t` at the `k`-th n is
    `derive_trial_seed(derive_trial_seed(base_seed, k), t)`.

    Returns
    -------
    pl.DataFrame
        Columns n, trial_index, seed, p, ratio, floor, validated by
        SpectralData and ordered by (n, trial_index).

    Raises
    ------
    InvalidParamsError
        If `n_list` is empty or not strictly ascending, `trials` < 1, or the
        rule gives no valid p at some n.
    """
    if not n_list or any(b <= a for a, b in zip(n_list, n_list[1:])):
        msg = f"n_list must be non-empty and strictly ascending, got {n_list}"
        raise InvalidParamsError(msg)
    if trials < 1:
        msg = f"trials must be at least 1, got {trials}"
        raise InvalidParamsError(msg)

    tasks = []
    for k, n in enumerate(n_list):
        p = edge_probability(n, p_rule)
        n_seed = derive_trial_seed(base_seed, k)
        tasks.extend(
            (n, t, p, derive_trial_seed(n_seed, t)) for t in range(trials)
        )
    logger.info(
        "spectral scaling: %d sizes x %d trials under %s", len(n_list), trials, p_rule
    )
    rows = parallel_map(
        _run_task, tasks, max_workers=threads, use_processes=use_processes
    )
    return SpectralData.validate(pl.DataFrame(rows, schema=SPECTRAL_SCHEMA))


def median_trend(table: pl.DataFrame, z: float = 2.0) -> MedianTrend:
    """
    Sign test for growth of the ratio across consecutive n.

    Trial `t` at one n is paired with trial `t` at the next n. Under the null
    hypothesis of no trend an increase has probability 1/2; the trend is
    significant when the number of increases exceeds m/2 by `z` standard
    deviations sqrt(m)/2. The exact one-sided binomial p-value is reported
    alongside.
    """
    by_n = table.sort(["n", "trial_index"]).group_by("n", maintain_order=True)
    ns, medians, samples = [], [], []
    for (n,), group in by_n:
        ns.append(int(n))
        ratios = group["ratio"].to_numpy()
        medians.append(float(np.median(ratios)))
        samples.append(ratios)

    increases, pairs = 0, 0
    for left, right in zip(samples, samples[1:]):
        m = min(left.size, right.size)
        increases += int(np.sum(right[:m] > left[:m]))
        pairs += m
    z_score = (increases - pairs / 2.0) / (math.sqrt(pairs) / 2.0) if pairs else 0.0
    p_value = (
        float(scipy.stats.binomtest(increases, pairs, alternative="greater").pvalue)
        if pairs
        else None
    )
    strictly_increasing = all(b > a for a, b in zip(medians, medians[1:]))
    return MedianTrend(
        n=ns,
        medians=medians,
        strictly_increasing=strictly_increasing,
        increases=increases,
        pairs=pairs,
        z_score=z_score,
        p_value=p_value,
        significant=pairs > 0 and z_score >= z,
    )
