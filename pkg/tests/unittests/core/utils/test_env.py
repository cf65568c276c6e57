import logging
import os

import pytest

from plantedsdp.core.standard_models.abstract.singleton import SingletonMeta
from plantedsdp.core.utils.env import Env

# FIXTURES ====================================================================


@pytest.fixture()
def fresh_env(monkeypatch, tmp_path):
    """Build a new Env from a clean working directory, restoring the old one."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(os, "environ", os.environ.copy())
    for key in ("LOGGER_LEVEL", "PLANTEDSDP_THREADS", "PLANTEDSDP_USE_PROCESSES"):
        monkeypatch.delenv(key, raising=False)
    saved = SingletonMeta._instances.pop(Env, None)

    def build() -> Env:
        SingletonMeta._instances.pop(Env, None)
        return Env()

    yield build
    SingletonMeta._instances.pop(Env, None)
    if saved is not None:
        SingletonMeta._instances[Env] = saved


# TESTS =======================================================================


def test_env_is_singleton():
    assert Env() is Env()


def test_defaults(fresh_env):
    env = fresh_env()
    assert env.LOGGER_LEVEL == logging.INFO
    assert env.THREADS == 1
    assert env.USE_PROCESSES is False


@pytest.mark.parametrize(
    ("raw", "expected"),
    [
        ("DEBUG", logging.DEBUG),
        ("warning", logging.WARNING),
        (" error ", logging.ERROR),
        ("chatty", logging.INFO),
        ("NOTSET", logging.INFO),
    ],
    ids=["debug", "lowercase", "padded", "unknown", "notset"],
)
def test_logger_level(fresh_env, monkeypatch, raw, expected):
    monkeypatch.setenv("LOGGER_LEVEL", raw)
    assert fresh_env().LOGGER_LEVEL == expected


@pytest.mark.parametrize(
    ("raw", "expected"),
    [("4", 4), ("0", 1), ("-3", 1), ("many", 1)],
    ids=["four", "zero", "negative", "garbage"],
)
def test_threads(fresh_env, monkeypatch, raw, expected):
    monkeypatch.setenv("PLANTEDSDP_THREADS", raw)
    assert fresh_env().THREADS == expected


def test_dotenv_file_is_read(fresh_env, tmp_path):
    (tmp_path / ".env").write_text(
        "PLANTEDSDP_THREADS=3\nPLANTEDSDP_USE_PROCESSES=yes\n", encoding="utf-8"
    )
    env = fresh_env()
    assert env.THREADS == 3
    assert env.USE_PROCESSES is True


def test_exported_variable_beats_dotenv(fresh_env, monkeypatch, tmp_path):
    (tmp_path / ".env").write_text("PLANTEDSDP_THREADS=3\n", encoding="utf-8")
    monkeypatch.setenv("PLANTEDSDP_THREADS", "5")
    assert fresh_env().THREADS == 5


@pytest.mark.parametrize(
    ("value", "expected"),
    [
        (True, True),
        (None, False),
        ("Yes", True),
        ("off", False),
        ("", False),
        (" 1 ", True),
    ],
    ids=["bool", "none", "yes", "off", "empty", "padded-one"],
)
def test_str2bool(value, expected):
    assert Env.str2bool(value) is expected


def test_str2bool_rejects_unknown():
    with pytest.raises(ValueError, match="Failed to cast 'maybe' to bool."):
        Env.str2bool("maybe")
