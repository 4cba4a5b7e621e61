import logging
from pathlib import Path
from typing import Union

logger = logging.getLogger(__name__)


def ensure_directory(directory: Union[str, Path]) -> Path:
    """Create the directory (and parents) if needed and return it as a Path."""
    path = Path(directory)
    if path.exists() and not path.is_dir():
        raise NotADirectoryError(f"{directory} is not a valid directory.")
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_text_file(path: Path, text: str) -> Path:
    """Write text as UTF-8 with '\\n' line endings, re-raising failures with the path."""
    try:
        with path.open("w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as e:
        error_msg = f"Failed to write report to {path}: {e}"
        logger.error(error_msg)
        raise OSError(error_msg) from e
    return path
