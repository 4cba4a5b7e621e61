import csv
import hashlib
import io
import json
import logging
import platform
from abc import ABC, abstractmethod
from importlib import metadata
from pathlib import Path
from typing import Dict, Generic, List, Tuple, TypeVar, Union

from pydantic import BaseModel
from typing_extensions import override

from constants import CSV_COLUMNS, RESULTS_DIR
from schemas.report_schemas import ExperimentReport, ResultRow, RunManifest
from utils.file_handling import ensure_directory, write_text_file

logger = logging.getLogger(__name__)

# T can be any type, as long as it's subclass of Pydantic's BaseModel
T = TypeVar("T", bound=BaseModel)

VERSIONED_PACKAGES = ("mgoig", "numpy", "networkx", "pydantic", "PyYAML")


def package_versions() -> Dict[str, str]:
    versions = {"python": platform.python_version()}
    for package in VERSIONED_PACKAGES:
        try:
            versions[package] = metadata.version(package)
        except metadata.PackageNotFoundError:
            versions[package] = "not installed"
    return versions


def config_hash(config: BaseModel) -> str:
    """SHA-256 of the canonical JSON (sorted keys, no whitespace) of a resolved config."""
    canonical = json.dumps(config.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class ReportGenerator(ABC, Generic[T]):
    """
    Abstract base class for report generators.

    Writes a CSV table, a JSON run manifest and a Markdown summary per report, all named
    after the report's stem. File names carry no timestamp, so identical inputs give
    byte-identical CSV files. Subclasses define the rows, the manifest and the Markdown.

    Args:
        output_dir: Directory where reports will be written (created if missing).
                    Defaults to RESULTS_DIR.
    """

    def __init__(self, output_dir: Union[str, Path] = RESULTS_DIR):
        self.output_directory = Path(output_dir)

    def generate_report(self, report: T) -> Tuple[Path, Path, Path]:
        """
        Writes the CSV, manifest and Markdown files of a report.

        Returns:
            Tuple of (csv_path, manifest_path, md_path).

        Raises:
            OSError: If the directory cannot be created or a file cannot be written.
        """
        try:
            ensure_directory(self.output_directory)
        except OSError as e:
            error_msg = f"Report output directory {self.output_directory} is not usable: {e}"
            logger.error(error_msg)
            raise OSError(error_msg) from e

        csv_path, manifest_path, md_path = self._generate_filepaths(self._stem(report))
        self._write_csv(self._rows(report), csv_path)
        manifest = self._build_manifest(report, [csv_path.name, md_path.name])
        self._write_JSON(manifest, manifest_path)
        self._write_markdown(report, md_path)
        return csv_path, manifest_path, md_path

    def _generate_filepaths(self, stem: str) -> Tuple[Path, Path, Path]:
        csv_path = self.output_directory / f"{stem}.csv"
        manifest_path = self.output_directory / f"{stem}.manifest.json"
        md_path = self.output_directory / f"{stem}.md"
        logger.info(f"Report filepaths: {csv_path}, {manifest_path}, {md_path}")
        return csv_path, manifest_path, md_path

    def _write_csv(self, rows: List[ResultRow], csv_output_path: Path) -> None:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row.csv_record())
        write_text_file(csv_output_path, buffer.getvalue())

    def _write_JSON(self, manifest: BaseModel, json_output_path: Path) -> None:
        """
        Serializes a Pydantic model to a formatted JSON file.

        Raises:
            OSError: If the file cannot be written.
        """
        logger.info(f"Generating JSON from {type(manifest).__name__}")
        write_text_file(json_output_path, manifest.model_dump_json(indent=2) + "\n")

    @abstractmethod
    def _stem(self, report: T) -> str: ...

    @abstractmethod
    def _rows(self, report: T) -> List[ResultRow]: ...

    @abstractmethod
    def _build_manifest(self, report: T, outputs: List[str]) -> BaseModel: ...

    @abstractmethod
    def _write_markdown(self, report: T, md_output_path: Path):
        """
        Writes a human-readable Markdown report to disk.

        Raises:
            OSError: If the file cannot be written.
        """
        ...


class ExperimentReportGenerator(ReportGenerator[ExperimentReport]):
    """
    Generates the CSV, manifest and Markdown summary of one experiment run.
    """

    def __init__(self, output_dir: Union[str, Path] = RESULTS_DIR, jobs: int = 1):
        super().__init__(output_dir)
        self.jobs = jobs

    @override
    def _stem(self, report: ExperimentReport) -> str:
        return report.config.experiment_id

    @override
    def _rows(self, report: ExperimentReport) -> List[ResultRow]:
        return report.rows

    @override
    def _build_manifest(self, report: ExperimentReport, outputs: List[str]) -> RunManifest:
        config = report.config
        return RunManifest(
            experiment_id=config.experiment_id,
            experiment=config.experiment,
            config=config.model_dump(mode="json"),
            config_hash=config_hash(config),
            seed=config.seed,
            jobs=self.jobs,
            versions=package_versions(),
            outputs=outputs,
            rows=len(report.rows),
            bound_failures=len(report.bound_failures),
            exact_failures=len(report.exact_failures),
        )

    @override
    def _write_markdown(self, report: ExperimentReport, md_output_path: Path):
        """Converts an ExperimentReport to a human-readable Markdown summary."""
        logger.info("Generating MD from experiment rows.")
        config = report.config
        md = f"# Experiment {config.experiment_id}\n"
        md += f"## {config.experiment}\n\n"
        if config.description:
            md += f"{config.description}\n\n"
        md += f"**Seed:** {config.seed}\n"
        md += f"**Mode:** {config.mode}\n"
        md += f"**Config hash:** `{config_hash(config)}`\n"
        md += f"**Rows:** {len(report.rows)}\n"
        md += f"**Failed checks:** {len(report.bound_failures)} ({len(report.exact_failures)} exact)\n\n"

        md += "## Results\n"
        md += "| Learner | Group | n | Metric | Value | Bound | Satisfied | 99% CI |\n"
        md += "|---------|-------|---|--------|-------|-------|-----------|--------|\n"
        for row in report.rows:
            satisfied = "" if row.bound_satisfied is None else ("yes" if row.bound_satisfied else "**no**")
            md += (
                f"| {row.learner} | {'' if row.g_id is None else row.g_id} | {'' if row.n is None else row.n} "
                f"| {row.metric} | {row.value or ''} | {row.bound or ''} | {satisfied} "
                f"| {'' if row.ci_halfwidth is None else '±' + row.ci_halfwidth} |\n"
            )

        if report.bound_failures:
            md += "\n## Failed checks\n"
            for row in report.bound_failures:
                kind = "exact" if row.exact_check else "one-sided"
                md += f"- {row.learner} g={row.g_id} n={row.n} {row.metric}: {row.value} vs {row.bound} ({kind})\n"

        if report.notes:
            md += "\n## Notes\n"
            for note in report.notes:
                md += f"- {note}\n"

        write_text_file(md_output_path, md)
