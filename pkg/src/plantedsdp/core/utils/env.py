"""Process settings, read once from the environment and an optional `.env`."""

import logging
import os

import dotenv

from plantedsdp.core.standard_models.abstract.singleton import SingletonMeta

_TRUE = frozenset({"true", "t", "1", "yes", "y", "on"})
_FALSE = frozenset({"false", "f", "0", "no", "n", "off", ""})


class Env(metaclass=SingletonMeta):
    """
    Settings shared by every plantedsdp module.

    The first instantiation loads the nearest `.env` (searched from the
    working directory) without overriding variables already exported, then
    snapshots `os.environ`. Later instantiations return the same object.

    | Variable                   | Property        | Default |
    |----------------------------|-----------------|---------|
    | `LOGGER_LEVEL`             | `LOGGER_LEVEL`  | INFO    |
    | `PLANTEDSDP_THREADS`       | `THREADS`       | 1       |
    | `PLANTEDSDP_USE_PROCESSES` | `USE_PROCESSES` | false   |
    """

    def __init__(self) -> None:
        dotenv.load_dotenv(dotenv.find_dotenv(usecwd=True), override=False)
        self._environ: dict[str, str] = dict(os.environ)

    def get(self, key: str, default: str | None = None) -> str | None:
        """Raw value of `key` as seen when the singleton was built."""
        return self._environ.get(key, default)

    @property
    def LOGGER_LEVEL(self) -> int:  # noqa: N802
        """Numeric logging level; unknown names fall back to INFO."""
        name = (self.get("LOGGER_LEVEL") or "INFO").strip().upper()
        level = logging.getLevelNamesMapping().get(name, logging.INFO)
        return level if level > logging.NOTSET else logging.INFO

    @property
    def THREADS(self) -> int:  # noqa: N802
        """Default worker-pool size for Monte Carlo runs, at least 1."""
        try:
            return max(1, int(self.get("PLANTEDSDP_THREADS") or 1))
        except ValueError:
            return 1

    @property
    def USE_PROCESSES(self) -> bool:  # noqa: N802
        """Whether trial pools default to processes instead of threads."""
        return self.str2bool(self.get("PLANTEDSDP_USE_PROCESSES", "false"))

    @staticmethod
    def str2bool(value: str | bool | None) -> bool:
        """
        Interpret a flag-like value.

        Raises
        ------
        ValueError
            If `value` is a string outside the recognised spellings.
        """
        if value is None or isinstance(value, bool):
            return bool(value)
        token = value.strip().lower()
        if token in _TRUE:
            return True
        if token in _FALSE:
            return False
        msg = f"Failed to cast '{value}' to bool."
        raise ValueError(msg)
