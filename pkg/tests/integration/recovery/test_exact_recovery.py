"""Soundness of the certificates against the solver and the ML oracle."""

import numpy as np
import polars as pl
import pytest

from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.sdp import SdpProblem
from plantedsdp.recovery.certificates.model import build_sbm_certificate
from plantedsdp.recovery.experiments.adversary.model import (
    monotone_adversary_experiment,
)
from plantedsdp.recovery.experiments.trial.model import run_trial
from plantedsdp.recovery.graph_models.helpers import derive_trial_seed
from plantedsdp.recovery.graph_models.model import sample_planted
from plantedsdp.recovery.oracle.model import ml_bisection, ml_subset
from plantedsdp.recovery.sdp_solver.model import is_integral, round_solution, solve

pytestmark = [pytest.mark.integration(), pytest.mark.slow()]


@pytest.mark.parametrize(
    "params",
    [
        ModelParams(kind="SBM", n=60, a=9.0, b=1.0, seed=101),
        ModelParams(kind="SBM", n=60, a=1.0, b=12.0, seed=102),
        ModelParams(kind="PDS", n=60, rho=0.5, a=10.0, b=1.0, seed=202),
        ModelParams(kind="PDS", n=60, rho=0.5, a=1.0, b=14.0, seed=203),
    ],
    ids=["sbm-a-greater", "sbm-b-greater", "pds-a-greater", "pds-b-greater"],
)
def test_passing_certificate_implies_integral_solution(params):
    records = [run_trial(params, "Both", t, run_witness=False) for t in range(50)]
    assert all(r.failure_reason is None for r in records)
    assert sum(r.soundness_violated for r in records) == 0
    certified = [r for r in records if r.certificate_pass]
    assert len(certified) >= 10
    assert all(r.sdp_integral and r.rounding_agrees is not False for r in certified)


@pytest.mark.parametrize(
    "params",
    [
        ModelParams(kind="SBM", n=200, a=9.0, b=1.0, seed=111),
        ModelParams(kind="PDS", n=200, rho=0.5, a=1.0, b=10.0, seed=212),
    ],
    ids=["sbm-a-greater", "pds-b-greater"],
)
def test_soundness_at_larger_n(params):
    records = [run_trial(params, "Both", t, run_witness=False) for t in range(10)]
    assert all(r.failure_reason is None for r in records)
    assert sum(r.soundness_violated for r in records) == 0


def test_integral_solution_matches_unique_ml_optimum():
    checked = 0
    for index in range(200):
        n = (6, 8, 10)[index % 3]
        params = ModelParams(
            kind="SBM", n=n, p=0.8, q=0.2, seed=derive_trial_seed(303, index)
        )
        g, _ = sample_planted(params)
        sol = solve(SdpProblem(kind="SBM_MAX", adjacency=g.adj))
        if sol.status != "Converged":
            continue
        rounded = round_solution(sol)
        if not is_integral(sol, rounded, 1e-3):
            continue
        ml = ml_bisection(g)
        if not ml.unique:
            continue
        flipped = tuple(-v for v in rounded.values)
        assert ml.best.values in (rounded.values, flipped)
        checked += 1
    assert checked >= 20


def test_integral_pds_solution_matches_unique_ml_subset():
    checked = 0
    for index in range(120):
        n = (8, 10)[index % 2]
        params = ModelParams(
            kind="PDS", n=n, K=n // 2, p=0.9, q=0.2, seed=derive_trial_seed(313, index)
        )
        g, _ = sample_planted(params)
        sol = solve(SdpProblem(kind="PDS_MAX", adjacency=g.adj, K=params.K))
        if sol.status != "Converged":
            continue
        rounded = round_solution(sol)
        if not is_integral(sol, rounded, 1e-3):
            continue
        ml = ml_subset(g, params.K)
        if not ml.unique:
            continue
        assert ml.best.values == rounded.values
        checked += 1
    assert checked >= 20


def test_certificate_margin_grows_with_n():
    medians = []
    for n in (100, 200, 400):
        params = ModelParams(kind="SBM", n=n, a=9.0, b=1.0, seed=707)
        margins = []
        for t in range(20):
            g, truth = sample_planted(
                params.model_copy(update={"seed": derive_trial_seed(707 + n, t)})
            )
            cert = build_sbm_certificate(g, truth, params.p, params.q, "AGreater")
            margins.append(cert.lambda2_perp)
        medians.append(float(np.median(margins)))
    assert medians[0] > 0.0
    assert medians[0] < medians[1] < medians[2]


def test_monotone_adversary_keeps_solution_integral():
    params = ModelParams(kind="SBM", n=100, a=12.0, b=1.0, seed=404)
    table = monotone_adversary_experiment(params, instances=50, edits=100)
    certified = table.filter(pl.col("certified"))
    assert certified.height > 0
    assert certified["integral_after"].to_list() == [True] * certified.height
    assert table["failure_reason"].null_count() == table.height


def test_within_cluster_density_matches_p():
    params = ModelParams(kind="SBM", n=200, a=5.0, b=1.0, seed=505)
    _, truth = sample_planted(params)
    mask = np.triu(truth.cluster_mask(), k=1)
    pairs = int(mask.sum())
    edges = 0
    resamples = 1000
    for t in range(resamples):
        g, _ = sample_planted(
            params.model_copy(update={"seed": derive_trial_seed(505, t)}), truth
        )
        edges += int(g.adj[mask].sum())
    density = edges / (pairs * resamples)
    se = np.sqrt(params.p * (1 - params.p) / (pairs * resamples))
    assert params.p == pytest.approx(0.1325, abs=1e-4)
    assert abs(density - params.p) <= 4 * se
