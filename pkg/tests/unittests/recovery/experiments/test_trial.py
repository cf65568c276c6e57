import pytest

from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.experiments.trial import TrialRecord
from plantedsdp.core.standard_models.recovery.graph import Assignment
from plantedsdp.recovery.experiments.trial.helpers import (
    converse_event_statistics,
    sdp_kind_for,
)
from plantedsdp.recovery.experiments.trial.model import run_trial
from plantedsdp.recovery.graph_models.helpers import derive_trial_seed
from plantedsdp.recovery.graph_models.model import sample_planted


# FIXTURES =====================================================================
@pytest.fixture()
def sbm_params():
    return ModelParams(kind="SBM", n=10, a=4.0, b=0.5, seed=5)


@pytest.fixture()
def pds_params():
    return ModelParams(kind="PDS", n=10, K=4, a=4.0, b=0.5, seed=5)


def test_run_trial_both(sbm_params):
    record = run_trial(sbm_params, "Both", trial_index=3)
    assert record.seed == derive_trial_seed(5, 3)
    assert record.params.seed == record.seed
    assert isinstance(record.certificate_pass, bool)
    assert isinstance(record.sdp_integral, bool)
    assert record.solver_iterations >= 1
    assert record.witness_found is None
    assert record.failure_reason is None
    assert record.wall_time_ms >= 0.0


def test_run_trial_is_deterministic(pds_params):
    first = run_trial(pds_params, "Certificate", trial_index=2)
    second = run_trial(pds_params, "Certificate", trial_index=2)
    assert first.model_dump(exclude={"wall_time_ms"}) == second.model_dump(
        exclude={"wall_time_ms"}
    )
    assert first.sdp_integral is None
    assert isinstance(first.witness_found, bool)


def test_run_trial_explicit_seed(sbm_params):
    record = run_trial(sbm_params, "Certificate", trial_index=7, seed=123)
    assert record.seed == 123
    assert record.trial_index == 7


def test_run_trial_records_failures():
    params = ModelParams(kind="PDS", n=10, K=3, p=0.8, q=0.1)
    record = run_trial(params, "Certificate")
    assert record.failure_reason.startswith("MissingIntensitiesError")
    assert record.certificate_pass is None
    assert not record.success


@pytest.mark.parametrize(
    ("certificate_pass", "sdp_integral", "success", "violated"),
    [
        (True, None, True, False),
        (False, None, False, False),
        (False, True, True, False),
        (True, False, False, True),
        (None, None, False, False),
    ],
    ids=["cert_only", "cert_fail", "sdp_wins", "unsound", "nothing"],
)
def test_trial_record_outcome(sbm_params, certificate_pass, sdp_integral, success, violated):
    record = TrialRecord(
        trial_index=0,
        seed=0,
        params=sbm_params,
        method="Both",
        certificate_pass=certificate_pass,
        sdp_integral=sdp_integral,
    )
    assert record.success is success
    assert record.soundness_violated is violated
    row = record.to_row(point_index=4)
    assert row["point_index"] == 4
    assert row["a"] == 4.0


@pytest.mark.parametrize(
    ("certificate_pass", "sdp_integral", "success"),
    [(True, False, True), (False, True, False), (True, True, True)],
    ids=["unsound_audit", "conservative", "agree"],
)
def test_audited_certificate_trial_counts_the_verdict(
    sbm_params, certificate_pass, sdp_integral, success
):
    record = TrialRecord(
        trial_index=0,
        seed=0,
        params=sbm_params,
        method="Certificate",
        certificate_pass=certificate_pass,
        sdp_integral=sdp_integral,
    )
    assert record.success is success
    assert record.soundness_violated is (certificate_pass and not sdp_integral)


def test_run_trial_audit(sbm_params):
    record = run_trial(sbm_params, "Certificate", trial_index=3, audit=True)
    plain = run_trial(sbm_params, "Certificate", trial_index=3)
    assert record.method == "Certificate"
    assert isinstance(record.sdp_integral, bool)
    assert record.solver_iterations >= 1
    assert record.certificate_pass == plain.certificate_pass
    assert record.success is bool(record.certificate_pass)
    assert plain.sdp_integral is None


@pytest.mark.parametrize(
    ("kind", "regime", "expected"),
    [
        ("SBM", "AGreater", "SBM_MAX"),
        ("SBM", "BGreater", "SBM_MIN"),
        ("PDS", "AGreater", "PDS_MAX"),
        ("PDS", "BGreater", "PDS_MIN"),
    ],
)
def test_sdp_kind_for(kind, regime, expected):
    params = ModelParams(kind=kind, n=10, K=5, a=1.0, b=1.0)
    assert sdp_kind_for(params, regime) == expected


def test_converse_events_without_t_set(pds_params):
    g, truth = sample_planted(pds_params)
    e1, e2, e3 = converse_event_statistics(g, truth, pds_params)
    assert e1 is None
    assert e2 is None
    assert isinstance(e3, bool)


def test_converse_events_with_t_set():
    params = ModelParams(kind="PDS", n=200, rho=0.5, a=4.0, b=1.0, seed=1)
    g, truth = sample_planted(params)
    events = converse_event_statistics(g, truth, params)
    assert all(isinstance(e, bool) for e in events)


def test_converse_events_need_intensities():
    params = ModelParams(kind="PDS", n=10, K=3, p=0.8, q=0.1)
    truth = Assignment(kind="Indicator", values=(1, 1, 1) + (0,) * 7)
    g, _ = sample_planted(params)
    assert converse_event_statistics(g, truth, params) == (None, None, None)
