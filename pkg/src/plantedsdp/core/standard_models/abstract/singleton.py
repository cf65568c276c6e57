# mypy: ignore-errors

"""Metaclass for process-wide single-instance classes such as `Env`."""

import threading
from typing import Any, ClassVar


class SingletonMeta(type):
    """
    Create at most one instance per class.

    Construction is serialised with a lock, so sweep worker threads that
    race on first use all receive the instance built first.
    """

    _instances: ClassVar[dict[type, Any]] = {}
    _lock: ClassVar[threading.Lock] = threading.Lock()

    def __call__(cls, *args: Any, **kwargs: Any) -> Any:
        """Return the stored instance, building it on the first call."""
        if cls not in cls._instances:
            with cls._lock:
                if cls not in cls._instances:
                    cls._instances[cls] = super().__call__(*args, **kwargs)
        return cls._instances[cls]
