"""Logging for the mgoig command-line tools: a full log file plus a console stream on stderr."""

import logging
import sys
from pathlib import Path
from typing import Optional, Union

from constants import DEFAULT_LOG_LEVEL, LOG_FILE_PATH

FILE_HANDLER_NAME = "mgoig-file"
CONSOLE_HANDLER_NAME = "mgoig-console"


def resolve_log_level(name: Optional[str] = None) -> int:
    """Numeric level for --log-level, falling back to MGOIG_LOG_LEVEL and then INFO.

    Raises:
        ValueError: If the name is not a standard logging level.
    """
    text = (name or DEFAULT_LOG_LEVEL).upper()
    level = logging.getLevelName(text)
    if not isinstance(level, int):
        raise ValueError(f"Unknown log level '{text}'.")
    return level


def setup_logging(
    console_log_level: int = logging.INFO,
    log_file_path: Union[str, Path] = LOG_FILE_PATH,
    file_log_level: int = logging.DEBUG,
) -> None:
    """Sets up the root logger for one command-line invocation.

    Parameters:
        console_log_level:
            Level of the stderr handler. Tables and exported graphs go to stdout,
            so they never interleave with log records.
        log_file_path:
            Path to the log file. Defaults to LOG_FILE_PATH from constants.py.
        file_log_level:
            Level of the file handler. Defaults to DEBUG so every run keeps a full trace.

    Calling it again replaces the handlers of the earlier call and leaves foreign handlers alone.
    """
    log_file_path_obj = Path(log_file_path)
    log_file_path_obj.parent.mkdir(parents=True, exist_ok=True)

    # (Time - Logger Name - Log Level - Message)
    log_format = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    root_logger = logging.getLogger()
    root_logger.setLevel(min(console_log_level, file_log_level))
    for handler in list(root_logger.handlers):
        if handler.get_name() in (FILE_HANDLER_NAME, CONSOLE_HANDLER_NAME):
            root_logger.removeHandler(handler)
            handler.close()

    file_handler = logging.FileHandler(log_file_path_obj, encoding="utf-8")
    file_handler.set_name(FILE_HANDLER_NAME)
    file_handler.setLevel(file_log_level)
    file_handler.setFormatter(log_format)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.set_name(CONSOLE_HANDLER_NAME)
    console_handler.setLevel(console_log_level)
    console_handler.setFormatter(log_format)

    root_logger.addHandler(file_handler)
    root_logger.addHandler(console_handler)

    logging.debug(f"Logging to {log_file_path_obj} (console {logging.getLevelName(console_log_level)}).")
