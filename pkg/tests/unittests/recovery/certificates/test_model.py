import math

import numpy as np
import orjson
import pytest

from plantedsdp.core.standard_models.abstract.errors import (
    DimensionMismatchError,
    DomainError,
    InvalidTruthError,
    MissingIntensitiesError,
    UnbalancedTruthError,
)
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.graph import Assignment, Graph
from plantedsdp.recovery.certificates.model import (
    build_pds_certificate,
    build_sbm_certificate,
    verify_pds_certificate,
    verify_sbm_certificate,
)
from plantedsdp.recovery.symlin.model import spectral_norm


# FIXTURES =====================================================================
@pytest.fixture()
def two_halves():
    return Assignment(kind="PM1", values=(1, 1, -1, -1))


@pytest.fixture()
def two_cliques():
    return Graph.from_edges(4, [(0, 1), (2, 3)])


@pytest.fixture()
def cluster_01():
    """C* = {0, 1} on four vertices."""
    return Assignment(kind="Indicator", values=(1, 1, 0, 0))


@pytest.fixture()
def pds_small():
    """K=2 on n=4 with a=4, b=1, so lambda* = tau* ln(4) / 4 = 0.75."""
    return ModelParams(kind="PDS", n=4, K=2, a=4.0, b=1.0, p=0.9, q=0.1)


def test_sbm_two_cliques_passes(two_cliques, two_halves):
    cert = build_sbm_certificate(two_cliques, two_halves, p=1.0, q=0.0)
    np.testing.assert_allclose(cert.d, [1.0, 1.0, 1.0, 1.0])
    assert cert.lambda_star == pytest.approx(0.5)
    assert cert.lambda2_perp == pytest.approx(2.0)
    assert cert.verdict.passed
    assert cert.verdict.reasons == ()
    assert np.abs(cert.S @ cert.truth).max() <= 1e-10


def test_sbm_empty_graph_fails_strictness(two_halves):
    cert = build_sbm_certificate(Graph.from_edges(4, []), two_halves, p=0.0, q=0.0)
    np.testing.assert_array_equal(cert.d, 0.0)
    assert cert.lambda2_perp == pytest.approx(0.0, abs=1e-12)
    assert not cert.verdict.passed
    assert cert.verdict.reasons[0].startswith("λ₂ not strictly positive")


def test_sbm_complete_graph_fails(two_halves):
    k4 = Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    cert = build_sbm_certificate(k4, two_halves, p=1.0, q=1.0)
    np.testing.assert_allclose(cert.d, [-1.0, -1.0, -1.0, -1.0])
    assert not cert.verdict


def test_sbm_corrupted_d_violates_kernel(two_cliques, two_halves):
    cert = build_sbm_certificate(two_cliques, two_halves, p=1.0, q=0.0)
    s_matrix = cert.S.copy()
    s_matrix[0, 0] += -11.0
    verdict = verify_sbm_certificate(cert.model_copy(update={"S": s_matrix}))
    assert not verdict.passed
    assert any(r.startswith("kernel violation") for r in verdict.reasons)


def test_sbm_b_greater_negates_adjacency(two_cliques, two_halves):
    p, q = 0.2, 0.6
    cert = build_sbm_certificate(two_cliques, two_halves, p, q, regime="BGreater")
    neg = -two_cliques.as_float()
    sigma = two_halves.vector
    expected = np.diag(sigma * (neg @ sigma)) - neg - (p + q) / 2 * np.ones((4, 4))
    np.testing.assert_allclose(cert.S, expected)
    assert cert.lambda_star == pytest.approx(-(p + q) / 2)


@pytest.mark.parametrize(
    ("truth", "expected_error"),
    [
        (Assignment(kind="PM1", values=(1, 1, 1, -1)), UnbalancedTruthError),
        (Assignment(kind="Indicator", values=(1, 1, 0, 0)), UnbalancedTruthError),
        (Assignment(kind="PM1", values=(1, 1, 1, -1, -1, -1)), DimensionMismatchError),
    ],
    ids=["unbalanced", "indicator", "size"],
)
def test_sbm_certificate_errors(two_cliques, truth, expected_error):
    with pytest.raises(expected_error):
        build_sbm_certificate(two_cliques, truth, p=1.0, q=0.0)


def test_sbm_certificate_json(two_cliques, two_halves):
    cert = build_sbm_certificate(two_cliques, two_halves, p=1.0, q=0.0)
    payload = orjson.loads(cert.to_json())
    assert payload["verdict"]["passed"] is True
    assert payload["S"][0][0] == pytest.approx(cert.S[0, 0])
    assert "S" not in orjson.loads(cert.to_json(include_matrix=False))


def test_pds_multipliers(pds_small, cluster_01):
    g = Graph.from_edges(4, [(0, 1), (0, 2)])
    cert = build_pds_certificate(g, cluster_01, pds_small)
    eta = spectral_norm(
        g.as_float()
        - np.array(
            [
                [0.0, 0.9, 0.1, 0.1],
                [0.9, 0.0, 0.1, 0.1],
                [0.1, 0.1, 0.0, 0.1],
                [0.1, 0.1, 0.1, 0.0],
            ]
        )
    )
    assert cert.regime == "AGreater"
    assert cert.lambda_star == pytest.approx(0.75)
    assert cert.eta_star == pytest.approx(eta)
    assert cert.d[0] == pytest.approx(1.0 - eta - 1.5)
    np.testing.assert_allclose(cert.b, [0.0, 0.0, 0.25, 0.75])
    assert np.abs(cert.S @ cert.truth).max() <= 1e-10
    assert not cert.verdict.passed
    assert any(r.startswith("D* sign") for r in cert.verdict.reasons)


def test_pds_degenerate_fails_strictness(cluster_01):
    params = ModelParams(kind="PDS", n=4, K=2, a=1.0, b=0.0, p=1.0, q=0.0)
    g = Graph.from_edges(4, [(0, 1)])
    cert = build_pds_certificate(g, cluster_01, params)
    assert cert.lambda_star == 0.0
    assert cert.eta_star == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(cert.d, [1.0, 1.0, 0.0, 0.0])
    np.testing.assert_allclose(cert.B, 0.0)
    assert cert.lambda2_perp == pytest.approx(0.0, abs=1e-10)
    assert not cert.verdict.passed
    assert any(r.startswith("λ₂ not strictly positive") for r in cert.verdict.reasons)


def test_pds_negative_b_injected(pds_small, cluster_01):
    g = Graph.from_edges(4, [(0, 1), (0, 2)])
    cert = build_pds_certificate(g, cluster_01, pds_small)
    b = cert.b.copy()
    b[3] = -0.5
    verdict = verify_pds_certificate(cert.model_copy(update={"b": b}))
    assert any(r.startswith("B* sign") for r in verdict.reasons)


def test_pds_b_greater_multipliers(cluster_01):
    params = ModelParams(kind="PDS", n=4, K=2, a=1.0, b=4.0, p=0.1, q=0.6)
    g = Graph.from_edges(4, [(0, 2), (1, 3), (2, 3)])
    cert = build_pds_certificate(g, cluster_01, params)
    log_n = math.log(4)
    tau = 3.0 / math.log(4.0)
    assert cert.regime == "BGreater"
    assert cert.lambda_star == pytest.approx(
        -tau * log_n / 4 - log_n / (2 * math.log(log_n))
    )
    assert np.abs(cert.S @ cert.truth).max() <= 1e-10


@pytest.mark.parametrize(
    ("truth", "params", "expected_error"),
    [
        (
            Assignment(kind="Indicator", values=(1, 0, 0, 0)),
            ModelParams(kind="PDS", n=4, K=2, a=4.0, b=1.0, p=0.9, q=0.1),
            InvalidTruthError,
        ),
        (
            Assignment(kind="PM1", values=(1, 1, -1, -1)),
            ModelParams(kind="PDS", n=4, K=2, a=4.0, b=1.0, p=0.9, q=0.1),
            InvalidTruthError,
        ),
        (
            Assignment(kind="Indicator", values=(1, 1, 0, 0)),
            ModelParams(kind="PDS", n=4, K=2, p=0.9, q=0.1),
            MissingIntensitiesError,
        ),
    ],
    ids=["short_cluster", "wrong_kind", "no_intensities"],
)
def test_pds_certificate_errors(truth, params, expected_error):
    with pytest.raises(expected_error):
        build_pds_certificate(Graph.from_edges(4, [(0, 1)]), truth, params)


def test_pds_b_greater_needs_positive_log_log():
    params = ModelParams(kind="PDS", n=2, K=1, a=1.0, b=4.0, p=0.1, q=0.9)
    truth = Assignment(kind="Indicator", values=(1, 0))
    with pytest.raises(DomainError):
        build_pds_certificate(Graph.from_edges(2, []), truth, params, "BGreater")
