import polars as pl
import pytest

from plantedsdp.core.standard_models.abstract.errors import InvalidParamsError
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.recovery.experiments.adversary.model import (
    monotone_adversary_experiment,
)


def test_adversary_table():
    params = ModelParams(kind="SBM", n=12, a=4.0, b=0.25, seed=3)
    table = monotone_adversary_experiment(params, instances=3, edits=6)
    assert table.height == 3
    assert table["instance"].to_list() == [0, 1, 2]
    certified = table.filter(pl.col("certified"))
    assert (certified["added"] + certified["removed"] <= 6).all()
    assert certified["integral_after"].null_count() == 0
    rejected = table.filter(~pl.col("certified"))
    assert rejected["integral_after"].null_count() == rejected.height
    assert (rejected["added"] == 0).all()


def test_adversary_is_deterministic():
    params = ModelParams(kind="PDS", n=10, K=4, a=4.0, b=0.5, seed=8)
    first = monotone_adversary_experiment(params, instances=2, edits=4)
    second = monotone_adversary_experiment(params, instances=2, edits=4)
    assert first.equals(second)


@pytest.mark.parametrize(
    ("params", "instances", "edits"),
    [
        (ModelParams(kind="SBM", n=12, a=4.0, b=0.25), 0, 6),
        (ModelParams(kind="SBM", n=12, a=4.0, b=0.25), 2, -1),
        (ModelParams(kind="SBM", n=12, a=0.25, b=4.0), 2, 6),
        (ModelParams(kind="PlantedCluster", n=9, r=2, K=3, p=0.8, q=0.1), 2, 6),
    ],
    ids=["no_instances", "negative_edits", "b_greater", "general_model"],
)
def test_adversary_invalid_params(params, instances, edits):
    with pytest.raises(InvalidParamsError):
        monotone_adversary_experiment(params, instances, edits)
