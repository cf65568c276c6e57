import logging

import pytest

from plantedsdp.core.utils.logger import (
    log_start_end,
    set_package_log_level,
    setup_logger,
)

# FIXTURES ====================================================================


class _ListHandler(logging.Handler):
    def __init__(self) -> None:
        super().__init__(level=logging.DEBUG)
        self.records: list[logging.LogRecord] = []

    def emit(self, record: logging.LogRecord) -> None:
        self.records.append(record)


@pytest.fixture()
def captured():
    logger = setup_logger("LoggerUnderTest", level=logging.INFO)
    handler = _ListHandler()
    logger.addHandler(handler)
    yield logger, handler
    logger.removeHandler(handler)
    logger.setLevel(logging.INFO)


# TESTS =======================================================================


def test_setup_logger_does_not_stack_handlers():
    first = setup_logger("LoggerTwice")
    count = len(first.handlers)
    second = setup_logger("LoggerTwice")
    assert first is second
    assert len(second.handlers) == count
    assert count >= 1
    assert second.propagate is False


def test_set_package_log_level_reaches_package_loggers():
    logger = setup_logger("LoggerLevels", level=logging.INFO)
    set_package_log_level(logging.DEBUG)
    try:
        assert logger.level == logging.DEBUG
        assert all(h.level == logging.DEBUG for h in logger.handlers)
    finally:
        set_package_log_level(logging.INFO)
    assert logger.level == logging.INFO


def test_log_start_end_logs_start_and_end(captured):
    logger, handler = captured

    @log_start_end(logger=logger)
    def add(a, b):
        return a + b

    assert add(2, 3) == 5
    messages = [r.getMessage() for r in handler.records]
    assert messages[0] == "START: add"
    assert messages[-1].startswith("END: add in ")


def test_log_start_end_reraises(captured):
    logger, handler = captured

    @log_start_end(logger=logger)
    def boom():
        msg = "bad"
        raise RuntimeError(msg)

    with pytest.raises(RuntimeError, match="bad"):
        boom()
    last = handler.records[-1]
    assert last.levelno == logging.ERROR
    assert last.getMessage().startswith("EXCEPTION in boom after ")
    assert last.exc_info is not None


def test_log_start_end_bare_keeps_metadata():
    @log_start_end
    def documented():
        """Docstring survives."""
        return 1

    assert documented() == 1
    assert documented.__name__ == "documented"
    assert documented.__doc__ == "Docstring survives."
