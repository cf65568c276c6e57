import itertools

import numpy as np
import pytest

from plantedsdp.core.standard_models.abstract.errors import (
    DomainError,
    InvalidTruthError,
    OddNError,
    TooLargeError,
)
from plantedsdp.core.standard_models.recovery.graph import Assignment, Graph
from plantedsdp.recovery.oracle.model import (
    bisection_objective,
    failure_event,
    ml_bisection,
    ml_failure_witness,
    ml_subset,
    subset_objective,
)


# FIXTURES =====================================================================
def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    pairs = [pair for pair in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, pairs)


def random_cluster(n: int, k: int, seed: int) -> Assignment:
    rng = np.random.default_rng(seed)
    values = np.zeros(n, dtype=np.int64)
    values[rng.choice(n, size=k, replace=False)] = 1
    return Assignment.from_vector("Indicator", values)


def test_bisection_two_cliques():
    result = ml_bisection(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert result.best.values == (1, 1, -1, -1)
    assert result.best_objective == 4
    assert result.unique
    assert result.candidates == 3


@pytest.mark.parametrize(
    ("graph", "objective"),
    [(Graph.from_edges(4, []), 0), (complete_graph(4), -4)],
    ids=["empty", "complete"],
)
def test_bisection_all_tied(graph, objective):
    result = ml_bisection(graph)
    assert result.best_objective == objective
    assert result.num_optima == 3
    assert not result.unique
    # first optimum in lexicographic order of the +1 set
    assert result.best.values == (1, 1, -1, -1)


def test_bisection_b_greater_minimizes():
    result = ml_bisection(Graph.from_edges(4, [(0, 1), (2, 3)]), regime="BGreater")
    assert result.best_objective == -4
    assert result.num_optima == 2
    assert result.best.values[0] == 1


def test_bisection_matches_objective():
    g = random_graph(10, 0.4, seed=3)
    result = ml_bisection(g)
    assert bisection_objective(g, result.best) == result.best_objective
    assert result.best.is_balanced


@pytest.mark.parametrize(
    ("n", "expected_error"),
    [(5, OddNError), (22, TooLargeError)],
    ids=["odd", "too_large"],
)
def test_bisection_errors(n, expected_error):
    with pytest.raises(expected_error):
        ml_bisection(Graph.from_edges(n, []))


def test_subset_single_edge():
    result = ml_subset(Graph.from_edges(4, [(0, 1)]), 2)
    assert result.best.values == (1, 1, 0, 0)
    assert result.best_objective == 2
    assert result.unique


def test_subset_ties_and_full_cluster():
    assert ml_subset(Graph.from_edges(4, []), 2).num_optima == 6
    full = ml_subset(complete_graph(5), 5)
    assert full.unique
    assert full.candidates == 1
    assert full.best_objective == 20


def test_subset_b_greater_prefers_sparse():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2)])
    result = ml_subset(g, 2, regime="BGreater")
    assert result.best_objective == 0
    assert 3 in result.best.members


@pytest.mark.parametrize(
    ("n", "k", "expected_error"),
    [(4, 0, DomainError), (4, 5, DomainError), (40, 20, TooLargeError)],
    ids=["zero", "above_n", "too_many"],
)
def test_subset_errors(n, k, expected_error):
    with pytest.raises(expected_error):
        ml_subset(Graph.from_edges(n, []), k)


def test_witness_example():
    g = Graph.from_edges(4, [(0, 1)])
    truth = Assignment(kind="Indicator", values=(1, 0, 1, 0))
    assert ml_failure_witness(g, truth, 2) == (2, 1)
    assert failure_event(g, truth, 2)


def test_witness_none_when_cluster_is_optimal():
    g = Graph.from_edges(4, [(0, 1)])
    truth = Assignment(kind="Indicator", values=(1, 1, 0, 0))
    assert ml_failure_witness(g, truth, 2) is None
    assert not failure_event(g, truth, 2)


@pytest.mark.parametrize("regime", ["AGreater", "BGreater"])
@pytest.mark.parametrize("seed", range(25))
def test_witness_swap_improves(seed, regime):
    n, k = 12, 4
    g = random_graph(n, 0.35, seed=seed)
    truth = random_cluster(n, k, seed=1000 + seed)
    witness = ml_failure_witness(g, truth, k, regime=regime)
    if witness is None:
        return
    i, j = witness
    assert i in truth.members
    assert j not in truth.members
    swapped = truth.vector.copy()
    swapped[i], swapped[j] = 0.0, 1.0
    before = subset_objective(g, truth)
    after = subset_objective(g, swapped)
    if regime == "AGreater":
        assert after > before
    else:
        assert after < before
    assert failure_event(g, truth, k, regime=regime)


@pytest.mark.parametrize(
    "truth",
    [
        Assignment(kind="Indicator", values=(1, 0, 0, 0)),
        Assignment(kind="PM1", values=(1, 1, -1, -1)),
        Assignment(kind="Indicator", values=(1, 1, 0, 0, 0, 0)),
    ],
    ids=["wrong_size", "wrong_kind", "wrong_n"],
)
def test_witness_invalid_truth(truth):
    with pytest.raises(InvalidTruthError):
        ml_failure_witness(Graph.from_edges(4, []), truth, 2)
