"""Unit tests for the logging configuration."""

import logging
from unittest.mock import patch

import pytest

from core.logging_setup import CONSOLE_HANDLER_NAME, FILE_HANDLER_NAME, resolve_log_level, setup_logging


@pytest.fixture
def restore_root_logger():
    root = logging.getLogger()
    level, handlers = root.level, list(root.handlers)
    yield root
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
    root.handlers = handlers
    root.setLevel(level)


def own_handlers(root):
    return [h for h in root.handlers if h.get_name() in (FILE_HANDLER_NAME, CONSOLE_HANDLER_NAME)]


def test_creates_the_log_directory(tmp_path, restore_root_logger):
    log_file = tmp_path / "logs" / "mgoig.log"

    setup_logging(console_log_level=logging.WARNING, log_file_path=log_file)

    assert log_file.parent.is_dir()
    assert restore_root_logger.level == logging.DEBUG


def test_file_keeps_debug_while_console_filters(tmp_path, restore_root_logger):
    setup_logging(console_log_level=logging.ERROR, log_file_path=tmp_path / "a.log")

    levels = {h.get_name(): h.level for h in own_handlers(restore_root_logger)}
    assert levels == {FILE_HANDLER_NAME: logging.DEBUG, CONSOLE_HANDLER_NAME: logging.ERROR}


def test_repeated_setup_replaces_its_handlers(tmp_path, restore_root_logger):
    foreign = logging.NullHandler()
    restore_root_logger.handlers = [foreign]

    setup_logging(log_file_path=tmp_path / "a.log")
    setup_logging(log_file_path=tmp_path / "b.log")

    assert foreign in restore_root_logger.handlers
    assert len(own_handlers(restore_root_logger)) == 2
    assert len(restore_root_logger.handlers) == 3


class TestResolveLogLevel:
    def test_explicit_name_wins(self):
        assert resolve_log_level("warning") == logging.WARNING

    def test_falls_back_to_the_environment_default(self):
        with patch("core.logging_setup.DEFAULT_LOG_LEVEL", "DEBUG"):
            assert resolve_log_level(None) == logging.DEBUG

    def test_unknown_level(self):
        with pytest.raises(ValueError, match="Unknown log level 'LOUD'"):
            resolve_log_level("loud")
