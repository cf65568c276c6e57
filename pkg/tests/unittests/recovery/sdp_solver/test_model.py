import numpy as np
import pytest
from pydantic import ValidationError

from plantedsdp.core.standard_models.abstract.errors import (
    DimensionMismatchError,
    InvalidProblemError,
    NotConvergedError,
    SolverDivergedError,
)
from plantedsdp.core.standard_models.recovery.graph import Assignment, Graph
from plantedsdp.core.standard_models.recovery.sdp import (
    SdpProblem,
    SdpSolution,
    SolverOptions,
)
from plantedsdp.recovery.sdp_solver.model import (
    constraint_violations,
    is_integral,
    round_solution,
    solve,
)


# FIXTURES =====================================================================
@pytest.fixture()
def two_cliques():
    """Edges {0-1, 2-3}."""
    return Graph.from_edges(4, [(0, 1), (2, 3)])


@pytest.fixture()
def two_halves():
    return Assignment(kind="PM1", values=(1, 1, -1, -1))


def _solution(y: np.ndarray, kind: str = "SBM_MAX", k: int | None = None, status: str = "Converged") -> SdpSolution:
    return SdpSolution(
        kind=kind,
        Y=y,
        K=k,
        objective=0.0,
        iterations=1,
        primal_residual=0.0,
        dual_residual=0.0,
        penalty=1.0,
        status=status,
    )


def test_solve_sbm_two_cliques(two_cliques, two_halves):
    sol = solve(SdpProblem(kind="SBM_MAX", adjacency=two_cliques.adj))
    assert sol.status == "Converged"
    assert sol.objective == pytest.approx(4.0, abs=1e-3)
    assert is_integral(sol, two_halves)
    assert all(v <= 1e-4 for v in constraint_violations(sol).values())


def test_solve_pds_single_edge():
    g = Graph.from_edges(4, [(0, 1)])
    truth = Assignment(kind="Indicator", values=(1, 1, 0, 0))
    sol = solve(SdpProblem(kind="PDS_MAX", adjacency=g.adj, K=2))
    assert sol.status == "Converged"
    assert sol.objective == pytest.approx(2.0, abs=1e-3)
    assert is_integral(sol, truth)
    violations = constraint_violations(sol)
    assert set(violations) == {"psd", "trace", "grand_sum", "diagonal", "nonnegativity"}
    assert all(v <= 1e-4 for v in violations.values())
    assert round_solution(sol) == truth


def test_solve_empty_graph():
    sol = solve(SdpProblem(kind="SBM_MAX", adjacency=np.zeros((4, 4))))
    assert sol.status == "Converged"
    assert abs(sol.objective) == pytest.approx(0.0, abs=1e-9)


def test_min_and_max_kinds_agree_through_the_complement(two_cliques):
    n = two_cliques.n
    low = solve(SdpProblem(kind="SBM_MIN", adjacency=two_cliques.adj))
    high = solve(
        SdpProblem(kind="SBM_MAX", adjacency=two_cliques.complement().adj)
    )
    # <J - I - A, Y> = -n - <A, Y> on the feasible set
    assert low.objective == pytest.approx(-n - high.objective, abs=1e-2)


def test_solve_sbm_min_bipartite(two_halves):
    # K_{2,2} between {0, 1} and {2, 3}; the only minimiser puts each side in one half
    g = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    sol = solve(SdpProblem(kind="SBM_MIN", adjacency=g.adj))
    assert sol.status == "Converged"
    assert sol.objective == pytest.approx(-8.0, abs=1e-3)
    assert is_integral(sol, two_halves)
    assert round_solution(sol) == two_halves


def test_solve_pds_min_missing_edge():
    # complete graph minus {0-1}; the non-edge is the only zero-cost pair
    edges = [(i, j) for i in range(4) for j in range(i + 1, 4) if (i, j) != (0, 1)]
    g = Graph.from_edges(4, edges)
    truth = Assignment(kind="Indicator", values=(1, 1, 0, 0))
    sol = solve(SdpProblem(kind="PDS_MIN", adjacency=g.adj, K=2))
    assert sol.status == "Converged"
    assert sol.objective == pytest.approx(0.0, abs=1e-3)
    assert is_integral(sol, truth)
    assert all(v <= 1e-4 for v in constraint_violations(sol).values())


@pytest.mark.parametrize(
    "kind, k",
    [("SBM_MAX", None), ("SBM_MIN", None), ("PDS_MAX", 2), ("PDS_MIN", 2)],
    ids=["sbm-max", "sbm-min", "pds-max", "pds-min"],
)
def test_penalty_frozen_without_adaptation_window(two_cliques, kind, k):
    sol = solve(
        SdpProblem(kind=kind, adjacency=two_cliques.adj, K=k),
        SolverOptions(rho_penalty=0.5, adapt_iters=0, max_iters=50),
    )
    assert sol.penalty == 0.5


def test_solve_is_deterministic(two_cliques):
    problem = SdpProblem(kind="SBM_MAX", adjacency=two_cliques.adj)
    first, second = solve(problem), solve(problem)
    np.testing.assert_array_equal(first.Y, second.Y)
    assert first.iterations == second.iterations


def test_solve_max_iters():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    sol = solve(
        SdpProblem(kind="SBM_MAX", adjacency=g.adj),
        SolverOptions(max_iters=2, adapt_penalty=False),
    )
    assert sol.status == "MaxIters"
    assert sol.iterations == 2
    with pytest.raises(NotConvergedError):
        round_solution(sol)


def test_solve_diverged(two_cliques):
    with pytest.raises(SolverDivergedError) as excinfo:
        solve(
            SdpProblem(kind="SBM_MAX", adjacency=two_cliques.adj),
            SolverOptions(divergence_limit=1e-12),
        )
    assert excinfo.value.solution is not None
    assert excinfo.value.solution.status == "Diverged"


def test_solve_invalid_problem():
    with pytest.raises(InvalidProblemError):
        solve(SdpProblem(kind="PDS_MAX", adjacency=np.zeros((4, 4))))


def test_solver_options_penalty_bounds():
    with pytest.raises(ValidationError):
        SolverOptions(rho_penalty=1e4)


def test_summary_excludes_matrix(two_cliques):
    sol = solve(SdpProblem(kind="SBM_MAX", adjacency=two_cliques.adj))
    summary = sol.summary()
    assert "Y" not in summary
    assert summary["status"] == "Converged"


def test_round_solution_exact_sbm():
    sigma = np.array([-1.0, 1.0, -1.0, 1.0])
    rounded = round_solution(_solution(np.outer(sigma, sigma)))
    assert rounded == Assignment(kind="PM1", values=(1, -1, 1, -1))


def test_round_solution_exact_pds():
    xi = np.array([0.0, 1.0, 1.0, 0.0, 0.0])
    rounded = round_solution(_solution(np.outer(xi, xi), kind="PDS_MAX", k=2))
    assert rounded == Assignment(kind="Indicator", values=(0, 1, 1, 0, 0))


def test_round_solution_under_perturbation():
    rng = np.random.default_rng(4)
    sigma = np.array([1, -1, 1, 1, -1, -1, 1, -1, 1, -1], dtype=float)
    noise = rng.uniform(-1e-5, 1e-5, size=(10, 10))
    y = np.outer(sigma, sigma) + (noise + noise.T) / 2.0
    rounded = round_solution(_solution(y))
    assert rounded.values == tuple(int(v) for v in sigma)


def test_round_solution_pds_needs_k():
    xi = np.array([1.0, 1.0, 0.0])
    with pytest.raises(InvalidProblemError):
        round_solution(_solution(np.outer(xi, xi), kind="PDS_MAX"))


def test_is_integral(two_halves):
    y = two_halves.truth_matrix()
    assert is_integral(y, two_halves, tol=1e-3)
    flipped = y.copy()
    flipped[0, 1] -= 0.5
    assert not is_integral(flipped, two_halves, tol=1e-3)
    with pytest.raises(DimensionMismatchError):
        is_integral(np.eye(3), two_halves)
