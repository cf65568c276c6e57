"""
**Context: Recovery**.

The Recovery Controller Module.
"""

from typing import Any

from plantedsdp.core.standard_models.abstract.errors import (
    InvalidParamsError,
    PlantedSdpError,
)
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.certificates import (
    PdsCertificate,
    SbmCertificate,
)
from plantedsdp.core.standard_models.recovery.graph import Assignment, Graph
from plantedsdp.core.standard_models.recovery.oracle import OracleResult
from plantedsdp.core.standard_models.recovery.sdp import (
    SdpProblem,
    SdpSolution,
    SolverOptions,
)
from plantedsdp.core.standard_models.recovery.thresholds import ThresholdPoint
from plantedsdp.core.utils.constants import REGIMES
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import setup_logger
from plantedsdp.recovery.experiments.experiments_controller import Experiments

env = Env()
logger = setup_logger("Recovery", level=env.LOGGER_LEVEL)


class Recovery(ModelParams):
    """
    A top-level <context> controller for exact recovery in planted graphs.

    The controller holds one planted model (the ModelParams it is built
    from) and routes it as the context to every command: sampling,
    certification, solving, the oracle, and the experiments submodule.

    Submodules
    ----------
    - `experiments`: trials, phase-diagram sweeps, spectral scaling and the
      monotone adversary.

    Parameters
    ----------
    kind : {"SBM", "PDS", "PlantedCluster"}
    n : int
    K, rho, r : optional
        Cluster structure; derived where the kind fixes it.
    a, b or p, q : float
        Intensities or probabilities.
    seed : int
        Seed of `sample` and base seed of the experiments.

    Raises
    ------
    InvalidParamsError
        If the parameters do not describe a valid model.

    Examples
    --------
    ```py
    rec = Recovery(kind="SBM", n=200, a=9, b=1, seed=7)
    g, truth = rec.sample()
    rec.certify(g, truth).verdict.passed
    rec.experiments.sweep(b_grid="0.5:5:0.5", trials_per_point=20)
    ```
    """

    def __init__(self, **kwargs: Any):
        try:
            logger.debug("Initializing Recovery with kwargs: %s", kwargs)
            super().__init__(**kwargs)
        except Exception as e:
            logger.error("Failed to initialize Recovery: %s", e)
            msg = f"Recovery initialization failed: {e!s}"
            raise InvalidParamsError(msg) from e

    @property
    def experiments(self) -> Experiments:
        """The experiments submodule, with this model as its context."""
        return Experiments(context_params=self)

    def sample(self, truth: Assignment | None = None) -> tuple[Graph, Assignment]:
        """Sample a graph (and a truth unless one is given) with `seed`."""
        from plantedsdp.recovery.graph_models.model import sample_planted

        return sample_planted(self, truth)

    def thresholds(self) -> ThresholdPoint:
        """Threshold quantities at the model's (a, b, rho)."""
        from plantedsdp.recovery.thresholds.model import threshold_point

        if not self.has_intensities:
            msg = "threshold quantities need the intensities a and b"
            raise InvalidParamsError(msg)
        return threshold_point(self.a, self.b, self.rho)  # type: ignore[arg-type]

    def certify(
        self, g: Graph, truth: Assignment, regime: REGIMES | None = None
    ) -> SbmCertificate | PdsCertificate:
        """
        Build and verify the dual certificate of `truth` on `g`.

        Raises
        ------
        PlantedSdpError
            If the certificate cannot be built (wrong truth, missing
            intensities, unsupported kind).
        """
        from plantedsdp.recovery.certificates.model import (
            build_pds_certificate,
            build_sbm_certificate,
        )

        regime = regime or self.regime
        try:
            if self.kind == "SBM":
                return build_sbm_certificate(g, truth, self.p, self.q, regime)
            if self.kind == "PDS":
                return build_pds_certificate(g, truth, self, regime)
        except PlantedSdpError:
            logger.exception("Error building the certificate")
            raise
        msg = f"no certificate for the {self.kind} model"
        raise PlantedSdpError(msg)

    def solve(
        self,
        g: Graph,
        options: SolverOptions | None = None,
        regime: REGIMES | None = None,
    ) -> SdpSolution:
        """Solve the relaxation matching the model kind and regime on `g`."""
        from plantedsdp.recovery.experiments.trial.helpers import sdp_kind_for
        from plantedsdp.recovery.sdp_solver.model import solve

        if self.kind == "PlantedCluster":
            msg = "the general planted-cluster model has no SDP relaxation here"
            raise PlantedSdpError(msg)
        problem = SdpProblem(
            kind=sdp_kind_for(self, regime or self.regime),
            adjacency=g.adj,
            K=self.K if self.kind == "PDS" else None,
        )
        return solve(problem, options)

    def oracle(self, g: Graph, regime: REGIMES | None = None) -> OracleResult:
        """Brute-force maximum-likelihood assignment of `g`."""
        from plantedsdp.recovery.oracle.model import ml_bisection, ml_subset

        regime = regime or self.regime
        if self.kind == "SBM":
            return ml_bisection(g, regime)
        if self.kind == "PDS":
            return ml_subset(g, self.K, regime)
        msg = f"no oracle for the {self.kind} model"
        raise PlantedSdpError(msg)

    def witness(
        self, g: Graph, truth: Assignment, regime: REGIMES | None = None
    ) -> tuple[int, int] | None:
        """An improving swap against `truth`, if any (PDS only)."""
        from plantedsdp.recovery.oracle.model import ml_failure_witness

        return ml_failure_witness(g, truth, self.K, regime or self.regime)
