"""Context: Recovery || **Category: Experiments**.

A controller to manage the Monte Carlo experiments. It is passed as a
`@property` to the `Recovery()` class, so every experiment starts from the
model the controller was built with.
"""

from typing import Any

import polars as pl

from plantedsdp.core.standard_models.abstract.errors import PlantedSdpError
from plantedsdp.core.standard_models.abstract.recoveryobject import RecoveryObject
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.experiments.trial import TrialRecord
from plantedsdp.core.standard_models.recovery.sdp import SolverOptions
from plantedsdp.core.utils.constants import TRIAL_METHODS
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import setup_logger

env = Env()
logger = setup_logger("Experiments", level=env.LOGGER_LEVEL)


class Experiments:
    """
    Module for all Monte Carlo experiments.

    Attributes
    ----------
    context_params : ModelParams
        The model of the `Recovery` controller. Its kind, n, rho, intensities
        and seed are the defaults of every experiment.

    Methods
    -------
    trial(method, trial_index)
        One trial on a fresh instance.
    sweep(**kwargs)
        Phase-diagram sweep over (a, b).
    spectral(**kwargs)
        Spectral concentration experiment on G(n, p).
    adversary(instances, edits)
        Monotone-adversary robustness check.
    """

    def __init__(self, context_params: ModelParams):
        self.context_params = context_params

    def trial(
        self,
        method: TRIAL_METHODS = "Both",
        trial_index: int = 0,
        solver_options: SolverOptions | None = None,
    ) -> TrialRecord:
        """Run one trial of the context model."""
        from plantedsdp.recovery.experiments.trial.model import run_trial

        return run_trial(
            self.context_params,
            method,
            trial_index,
            solver_options,
        )

    def sweep(self, **kwargs: Any) -> RecoveryObject:
        """
        Execute the phase_diagram command.

        Parameters
        ----------
        a_grid, b_grid : list[float] | str, optional
            Default to the context intensities.
        trials_per_point : int, optional
            Default 50.
        method : {"Certificate", "SdpSolve", "Both"}, optional
            Default Certificate.
        chart : bool, optional
            Build the SVG heatmap.

        Other PhaseDiagramQueryParams fields are accepted; kind, n, rho and
        base_seed default to the context model.

        Returns
        -------
        RecoveryObject
            results : SweepData
            trials : TrialData
            extra : seeds, boundary and base seed

        Raises
        ------
        PlantedSdpError
            If the parameters are invalid or the sweep fails.
        """
        try:
            from plantedsdp.core.standard_models.recovery.experiments.phase_diagram import (
                PhaseDiagramFetcher,
            )

            ctx = self.context_params
            defaults: dict[str, Any] = {
                "kind": ctx.kind,
                "n": ctx.n,
                "rho": ctx.rho,
                "base_seed": ctx.seed,
            }
            if ctx.has_intensities:
                defaults |= {"a_grid": [ctx.a], "b_grid": [ctx.b]}
            logger.debug("Initializing sweep with params: %s", kwargs)

            fetcher = PhaseDiagramFetcher(
                context_params=ctx, command_params=defaults | kwargs
            )
            return fetcher.fetch_data()
        except Exception as e:
            logger.exception("Error running the phase-diagram sweep")
            msg = f"Failed to run the phase-diagram sweep: {e!s}"
            raise PlantedSdpError(msg) from e

    def spectral(self, **kwargs: Any) -> RecoveryObject:
        """
        Execute the spectral_scaling command.

        Parameters
        ----------
        n_list : list[int] | str, optional
            Defaults to the context n alone.
        p_rule : {"ConstTimesLogOverN", "SubLog"}, optional
        trials : int, optional

        Returns
        -------
        RecoveryObject
            results : SpectralData
            extra : the median trend and base seed

        Raises
        ------
        PlantedSdpError
            If the parameters are invalid or the experiment fails.
        """
        try:
            from plantedsdp.core.standard_models.recovery.experiments.spectral_scaling import (
                SpectralScalingFetcher,
            )

            defaults = {
                "n_list": [self.context_params.n],
                "base_seed": self.context_params.seed,
            }
            fetcher = SpectralScalingFetcher(
                context_params=self.context_params,
                command_params=defaults | kwargs,
            )
            return fetcher.fetch_data()
        except Exception as e:
            logger.exception("Error running the spectral experiment")
            msg = f"Failed to run the spectral experiment: {e!s}"
            raise PlantedSdpError(msg) from e

    def adversary(
        self,
        instances: int = 50,
        edits: int = 100,
        solver_options: SolverOptions | None = None,
    ) -> pl.DataFrame:
        """Run the monotone-adversary experiment on the context model."""
        from plantedsdp.recovery.experiments.adversary.model import (
            monotone_adversary_experiment,
        )

        return monotone_adversary_experiment(
            self.context_params,
            instances,
            edits,
            solver_options,
        )
