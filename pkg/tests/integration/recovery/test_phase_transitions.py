"""Finite-n phase transitions of the SBM and PDS models."""

import polars as pl
import pytest

from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.recovery.experiments.phase_diagram.helpers import (
    half_crossing,
    monotonicity_violations,
    success_rates,
    theory_margin,
)
from plantedsdp.recovery.experiments.phase_diagram.model import sweep_phase_diagram
from plantedsdp.recovery.graph_models.helpers import derive_trial_seed
from plantedsdp.recovery.graph_models.model import sample_planted
from plantedsdp.recovery.oracle.model import ml_failure_witness
from plantedsdp.recovery.thresholds.model import phase_boundary, sbm_boundary

pytestmark = [pytest.mark.integration(), pytest.mark.slow()]


def test_sbm_success_crosses_half_near_boundary():
    result = sweep_phase_diagram(
        kind="SBM",
        a_grid=[9.0],
        b_grid=[0.5 * k for k in range(1, 11)],
        rho=0.5,
        n=300,
        trials_per_point=50,
        base_seed=7,
        threads=2,
        audit_fraction=0.0,
    )
    rates = success_rates(result.points)["rate"].to_list()
    assert rates[0] >= 0.9
    assert rates[-1] <= 0.2
    crossing = half_crossing(result.points)
    assert crossing is not None
    assert crossing == pytest.approx(sbm_boundary(9.0), abs=0.5)
    assert monotonicity_violations(result.points) == 0


def test_pds_sdp_success_crosses_half_near_boundary():
    b_star = phase_boundary(10.0, 0.5)
    result = sweep_phase_diagram(
        kind="PDS",
        a_grid=[10.0],
        b_grid=[0.5 * k for k in range(1, 13)],
        rho=0.5,
        n=100,
        trials_per_point=16,
        method="Both",
        base_seed=17,
        threads=2,
        audit_fraction=0.0,
    )
    rates = success_rates(result.points)["rate"].to_list()
    assert rates[0] >= 0.8
    assert rates[-1] <= 0.2
    crossing = half_crossing(result.points)
    assert crossing is not None
    # at n = 100 the crossing sits right of the asymptotic root
    assert b_star - 0.5 <= crossing <= b_star + 3.0
    assert result.boundary[10.0]["lower"] == pytest.approx(b_star)
    assert result.soundness_violations == 0
    certified = result.trials.filter(pl.col("certificate_pass"))
    assert certified["sdp_integral"].all()


def _witness_rate(b: float, seeds: int = 50) -> float:
    params = ModelParams(kind="PDS", n=400, rho=0.5, a=10.0, b=b, seed=0)
    fired = 0
    for t in range(seeds):
        g, truth = sample_planted(
            params.model_copy(update={"seed": derive_trial_seed(606, t)})
        )
        fired += ml_failure_witness(g, truth, params.K) is not None
    return fired / seeds


def test_pds_witness_fires_below_threshold():
    assert theory_margin("PDS", 10.0, 0.5, 0.5) > 0
    assert theory_margin("PDS", 10.0, 6.0, 0.5) < 0
    assert _witness_rate(0.5) <= 0.1
    assert _witness_rate(6.0) >= 0.6
