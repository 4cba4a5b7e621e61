"""Unit tests for the experiment report generator."""

import json
from fractions import Fraction
from unittest.mock import patch

import pytest

from constants import CSV_COLUMNS
from experiments.report_generator import ExperimentReportGenerator, config_hash, package_versions
from schemas.report_schemas import ExperimentReport


@pytest.fixture
def report(experiment_config):
    report = ExperimentReport(config=experiment_config)
    exact = {"g_id": 0, "n": 3, "exact_check": True}
    report.add("mgoig-exact", "transductive_error", Fraction(1, 4), bound=Fraction(1, 4), bound_satisfied=True, **exact)
    report.add(
        "mgoig-exact", "transductive_error_max", Fraction(1, 2), bound=Fraction(1, 3), bound_satisfied=False, **exact
    )
    report.add("mgoig-mc", "sup_group_error", 0.125, n=3, ci_halfwidth=0.01)
    report.notes.append("A note.")
    return report


class TestConfigHash:
    def test_stable(self, experiment_config):
        assert config_hash(experiment_config) == config_hash(experiment_config.model_copy())
        assert len(config_hash(experiment_config)) == 64

    def test_changes_with_the_seed(self, experiment_config):
        assert config_hash(experiment_config) != config_hash(experiment_config.model_copy(update={"seed": 2}))


def test_package_versions_reports_missing_packages():
    with patch("experiments.report_generator.VERSIONED_PACKAGES", ("surely-not-installed-package",)):
        versions = package_versions()

    assert versions["surely-not-installed-package"] == "not installed"
    assert "python" in versions


class TestGenerateReport:
    def test_csv(self, report, results_dir):
        csv_path, _, _ = ExperimentReportGenerator(results_dir).generate_report(report)

        lines = csv_path.read_text().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert lines[1] == (
            "test-transductive,mgoig-exact,0,3,transductive_error,1/4,0.2500000000,1/4,0.2500000000,true,,1"
        )
        assert lines[3].startswith("test-transductive,mgoig-mc,,3,sup_group_error,0.1250000000,0.1250000000,,,,")

    def test_manifest(self, report, results_dir, experiment_config):
        _, manifest_path, _ = ExperimentReportGenerator(results_dir, jobs=4).generate_report(report)

        manifest = json.loads(manifest_path.read_text())
        assert manifest["config_hash"] == config_hash(experiment_config)
        assert manifest["jobs"] == 4
        assert manifest["rows"] == 3
        assert manifest["bound_failures"] == 1
        assert manifest["exact_failures"] == 1
        assert manifest["outputs"] == ["test-transductive.csv", "test-transductive.md"]
        assert manifest["config"]["delta"] == "1/10"

    def test_markdown(self, report, results_dir):
        _, _, md_path = ExperimentReportGenerator(results_dir).generate_report(report)

        md = md_path.read_text()
        assert md.startswith("# Experiment test-transductive\n## transductive\n")
        assert "**Failed checks:** 1 (1 exact)" in md
        assert "- mgoig-exact g=0 n=3 transductive_error_max: 1/2 vs 1/3 (exact)" in md
        assert "| **no** |" in md
        assert "±0.0100000000" in md
        assert "- A note." in md

    def test_unusable_directory(self, report, tmp_path, caplog):
        blocker = tmp_path / "blocker"
        blocker.write_text("file, not a directory")

        with pytest.raises(OSError, match="is not usable"):
            ExperimentReportGenerator(blocker).generate_report(report)

        assert "is not usable" in caplog.text
