import logging
import yaml
from pathlib import Path
from typing import Union, Dict, Any
from pydantic import ValidationError

from schemas.config_schemas import ExperimentConfig, SampleConfig
from core.errors import ConfigInvalidError
from constants import EXPERIMENT_CONFIGS_DIR

logger = logging.getLogger(__name__)

CONFIG_SUFFIXES = (".yaml", ".yml", ".json")


class ConfigLoader:
    """Helper to parse experiment files and validate them against ExperimentConfig.

    YAML and JSON files are both read with yaml.safe_load (JSON is a subset of YAML)."""

    def __init__(self, base_path: Union[str, Path] = EXPERIMENT_CONFIGS_DIR, encoding: str = "utf-8"):
        """
        Parameters:
            base_path:
                Directory scanned by load_experiments. Defaults to configs/experiments.
            encoding:
                File encoding to use when reading config files. Defaults to 'utf-8'.
        """
        self.base_path = Path(base_path)
        self.encoding = encoding

    def load_experiment(self, path: Union[str, Path]) -> ExperimentConfig:
        """
        Load a single experiment file and validate it before any computation.

        Raises:
            ConfigInvalidError:
                If the file is missing, unreadable, empty, not a mapping, or fails validation.
        """
        file_path = Path(path)
        raw_config = self._read_file(file_path)
        try:
            config = ExperimentConfig(**raw_config)
        except ValidationError as ve:
            error_msg = f"Validation error for experiment file '{file_path.name}': {ve}"
            logger.error(error_msg)
            raise ConfigInvalidError(error_msg) from ve
        logger.info(f"Loaded experiment '{config.experiment_id}' ({config.experiment}) from {file_path}")
        return config

    def load_sample(self, path: Union[str, Path]) -> SampleConfig:
        """
        Load a labeled sample: a mapping with 'entries' or a bare list of [point, label] pairs.

        Raises:
            ConfigInvalidError:
                If the file is missing, unreadable or fails validation.
        """
        file_path = Path(path)
        raw = self._read_file(file_path, allow_list=True)
        if isinstance(raw, list):
            raw = {"entries": raw}
        try:
            return SampleConfig(**raw)
        except ValidationError as ve:
            error_msg = f"Validation error for sample file '{file_path.name}': {ve}"
            logger.error(error_msg)
            raise ConfigInvalidError(error_msg) from ve

    def load_experiments(self) -> Dict[str, ExperimentConfig]:
        """
        Load every experiment file in base_path.

        Returns:
            A dictionary mapping file stems to their validated ExperimentConfig models.

        Note:
            Files that fail to load or validate are logged and skipped. The process does
            not halt on individual file errors.
        """
        logger.info("Loading experiment configurations...")

        raw_configs = self._load_from_directory()
        validated_configs = {}

        for name, raw_config_data in raw_configs.items():
            try:
                validated_configs[name] = ExperimentConfig(**raw_config_data)
            except ValidationError as ve:
                logger.error(
                    f"Validation error for experiment '{name}': {ve}. Check the file against ExperimentConfig."
                )
        return validated_configs

    def _read_file(self, file_path: Path, allow_list: bool = False) -> Any:
        if not file_path.exists():
            error_msg = f"Config file not found: {file_path}"
            logger.error(error_msg)
            raise ConfigInvalidError(error_msg)
        try:
            data = yaml.safe_load(file_path.read_text(encoding=self.encoding))
        except (OSError, yaml.YAMLError) as e:
            error_msg = f"Error reading config file {file_path.name}: {e}"
            logger.error(error_msg)
            raise ConfigInvalidError(error_msg) from e
        if not isinstance(data, dict) and not (allow_list and isinstance(data, list)):
            error_msg = f"Config file {file_path.name} must contain a mapping, got {type(data).__name__}."
            logger.error(error_msg)
            raise ConfigInvalidError(error_msg)
        return data

    def _load_from_directory(self) -> Dict[str, Any]:
        """
        Internal helper: Reads all config files in base_path.

        Returns:
            A dictionary mapping file names to their parsed content.

        Raises:
            FileNotFoundError:
                If the directory does not exist.
            ValueError:
                If no configuration files are found in it.
        """
        config_dict = {}
        target_dir = self.base_path

        logger.info(f"Loading configurations from directory: {target_dir}")

        if not target_dir.exists():
            raise FileNotFoundError(f"Configuration directory not found: {target_dir}")

        for file_path in sorted(target_dir.iterdir()):
            if file_path.suffix not in CONFIG_SUFFIXES:
                continue
            try:
                config_dict[file_path.stem] = self._read_file(file_path)
            except ConfigInvalidError:
                # Already logged; skip the file
                continue

        if not config_dict:
            raise ValueError(f"No configuration files found in: {target_dir}")

        return config_dict
