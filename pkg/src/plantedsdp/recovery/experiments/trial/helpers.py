"""
Context: Recovery || Category: Experiments || **Command: trial** helpers.

Statistics of the converse (impossibility) analysis, recorded per trial.
"""

import math

import numpy as np

from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.graph import Assignment, Graph
from plantedsdp.core.utils.constants import REGIMES, SDP_KINDS
from plantedsdp.recovery.thresholds.model import tau_star


def sdp_kind_for(params: ModelParams, regime: REGIMES) -> SDP_KINDS:
    """The relaxation matching the model and the sign of a - b."""
    family = "SBM" if params.kind == "SBM" else "PDS"
    return f"{family}_{'MAX' if regime == 'AGreater' else 'MIN'}"  # type: ignore[return-value]


def converse_event_statistics(
    g: Graph, truth: Assignment, params: ModelParams
) -> tuple[bool | None, bool | None, bool | None]:
    """
    Events E1, E2, E3 whose intersection forces the ML estimator to fail.

    T is the first floor(rho n / ln^2 n) members of C* and the level is
    tau* rho ln n. For AGreater:

    - E1: max_{i in T} e(i, T) < ln n / ln ln n
    - E2: min_{i in T} e(i, C* \\ T) + ln n / ln ln n <= level
    - E3: max_{j not in C*} e(j, C*) >= level

    For BGreater, E1 is not used (None), E2 becomes
    max_{i in T} e(i, C* \\ T) > level and E3 min_{j not in C*} e(j, C*) <= level.
    Events needing T are None when T is empty; all are None without
    intensities.
    """
    if not params.has_intensities or truth.kind != "Indicator":
        return None, None, None
    n = g.n
    log_n = math.log(n)
    log_log_n = math.log(log_n) if log_n > 1 else math.nan
    level = tau_star(params.a, params.b) * params.rho * log_n  # type: ignore[arg-type]

    adj = g.as_float()
    members = truth.members
    inside = np.zeros(n, dtype=bool)
    inside[members] = True
    e_cluster = adj[:, inside].sum(axis=1)

    outsiders = ~inside
    e3 = None
    if outsiders.any():
        if params.regime == "AGreater":
            e3 = bool(e_cluster[outsiders].max() >= level)
        else:
            e3 = bool(e_cluster[outsiders].min() <= level)

    t_size = math.floor(params.rho * n / log_n**2)
    if t_size < 1 or not math.isfinite(log_log_n) or log_log_n <= 0:
        return None, None, e3
    t_set = members[:t_size]
    rest = members[t_size:]
    e_within_t = adj[np.ix_(t_set, t_set)].sum(axis=1)
    e_to_rest = adj[np.ix_(t_set, rest)].sum(axis=1)
    slack = log_n / log_log_n

    if params.regime == "AGreater":
        e1 = bool(e_within_t.max() < slack)
        e2 = bool(e_to_rest.min() + slack <= level)
        return e1, e2, e3
    return None, bool(e_to_rest.max() > level), e3
