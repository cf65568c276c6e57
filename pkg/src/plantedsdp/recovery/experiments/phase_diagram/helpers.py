"""
Context: Recovery || Category: Experiments || **Command: phase_diagram** helpers.

Interval estimates, theory margins and curve diagnostics for sweeps.
"""

import math

import numpy as np
import polars as pl
import scipy.stats

from plantedsdp.core.standard_models.abstract.errors import PlantedSdpError
from plantedsdp.core.utils.constants import MODEL_KINDS, WILSON_CONFIDENCE
from plantedsdp.recovery.thresholds.model import (
    f_threshold,
    phase_boundary,
    sbm_boundary,
    sbm_gap,
)


def wilson_interval(
    successes: int, trials: int, confidence: float = WILSON_CONFIDENCE
) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1 or not 0 <= successes <= trials:
        msg = f"need 0 <= successes <= trials and trials >= 1, got {successes}/{trials}"
        raise ValueError(msg)
    ci = scipy.stats.binomtest(successes, trials).proportion_ci(
        confidence_level=confidence, method="wilson"
    )
    return max(0.0, float(ci.low)), min(1.0, float(ci.high))


def theory_margin(kind: MODEL_KINDS, a: float, b: float, rho: float) -> float:
    """sbm_gap for the SBM, rho f(a, b) - 1 otherwise; positive is recoverable."""
    if kind == "SBM":
        return sbm_gap(a, b)
    return rho * f_threshold(a, b) - 1.0


def theoretical_boundary(
    kind: MODEL_KINDS, a: float, rho: float
) -> dict[str, float | None]:
    """Lower and upper boundary values of b for a fixed a (None when absent)."""
    out: dict[str, float | None] = {}
    for branch in ("lower", "upper"):
        try:
            if kind == "SBM":
                out[branch] = sbm_boundary(a, branch)
            else:
                out[branch] = phase_boundary(a, rho, branch)
        except PlantedSdpError:
            out[branch] = None
    return out


def parse_grid(text: str) -> list[float]:
    """
    Parse `start:stop:step` (inclusive stop) or a comma-separated list.

    Raises
    ------
    PlantedSdpError
        On an empty, unsorted or malformed grid.
    """
    text = text.strip()
    try:
        if ":" in text:
            start, stop, step = (float(x) for x in text.split(":"))
            if step <= 0:
                msg = f"grid step must be positive in {text!r}"
                raise PlantedSdpError(msg)
            count = math.floor((stop - start) / step + 1e-9) + 1
            values = [round(start + i * step, 12) for i in range(max(count, 0))]
        else:
            values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        msg = f"malformed grid {text!r}"
        raise PlantedSdpError(msg) from e
    if not values:
        msg = f"empty grid {text!r}"
        raise PlantedSdpError(msg)
    if values != sorted(values):
        msg = f"grid must be sorted ascending: {text!r}"
        raise PlantedSdpError(msg)
    return values


def success_rates(points: pl.DataFrame) -> pl.DataFrame:
    """Add the empirical success rate column `rate`, null on skipped points."""
    return points.with_columns(
        pl.when(pl.col("trials") > 0)
        .then(pl.col("successes") / pl.col("trials"))
        .otherwise(None)
        .alias("rate")
    )


def half_crossing(points: pl.DataFrame, along: str = "b") -> float | None:
    """
    First value of `along` where the success rate falls through 1/2.

    Linear interpolation between the two grid points that bracket the
    crossing; None if the rate never crosses. Skipped points are ignored.
    """
    frame = success_rates(points).drop_nulls("rate").sort(along)
    xs = frame[along].to_numpy()
    rates = frame["rate"].to_numpy()
    for i in range(1, xs.shape[0]):
        if rates[i - 1] >= 0.5 > rates[i]:  # noqa: PLR2004
            t = (rates[i - 1] - 0.5) / (rates[i - 1] - rates[i])
            return float(xs[i - 1] + t * (xs[i] - xs[i - 1]))
    return None


def monotonicity_violations(
    points: pl.DataFrame, along: str = "b", z: float = 2.0
) -> int:
    """
    Count adjacent increases of the success rate along `along` that exceed
    z standard errors of the difference. Skipped points are ignored.
    """
    frame = success_rates(points).drop_nulls("rate").sort(along)
    rates = frame["rate"].to_numpy()
    trials = frame["trials"].to_numpy().astype(float)
    var = rates * (1.0 - rates) / trials
    noise = z * np.sqrt(var[1:] + var[:-1])
    return int(np.sum(np.diff(rates) > np.maximum(noise, 0.0) + 1e-12))
