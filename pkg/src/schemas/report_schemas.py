"""Defines Pydantic models for experiment results, run manifests and reports."""

from fractions import Fraction
from typing import Annotated, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from schemas.config_schemas import ExperimentConfig
from utils.rationals import format_decimal, format_rational

Number = Union[Fraction, float, int]


def _render(value: Optional[Number]) -> Optional[str]:
    """Exact values as "p/q", floating-point estimates as fixed decimals."""
    if value is None:
        return None
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (Fraction, int)):
        return format_rational(Fraction(value))
    return format_decimal(value)


class ResultRow(BaseModel):
    """
    One CSV row: a metric for one learner, group and sample size.
    """

    experiment_id: Annotated[str, Field(description="Stem of the run's output files.")]
    learner: Annotated[str, Field(description="Predictor name, or the component measured (e.g. 'oig', 'solver').")]
    g_id: Annotated[Optional[int], Field(description="Group index in G; empty for whole-instance metrics.")] = None
    n: Annotated[Optional[int], Field(description="Sample size; empty when the metric has none.")] = None
    metric: Annotated[str, Field(description="Metric name, e.g. 'prediction_error' or 'transductive_error'.")]
    value: Annotated[Optional[str], Field(description="Metric value: 'p/q' when exact, fixed decimal otherwise.")]
    value_decimal: Annotated[Optional[str], Field(description="Metric value as a fixed decimal.")]
    bound: Annotated[Optional[str], Field(description="Guarantee the value is checked against.")] = None
    bound_decimal: Annotated[Optional[str], Field(description="The bound as a fixed decimal.")] = None
    bound_satisfied: Annotated[Optional[bool], Field(description="Result of the bound check; empty if none.")] = None
    ci_halfwidth: Annotated[
        Optional[str],
        Field(description="99% normal-approximation half-width of Monte Carlo estimates."),
    ] = None
    seed: Annotated[int, Field(description="Master seed of the run.")]
    exact_check: Annotated[
        bool,
        Field(
            exclude=True,
            description="Whether bound_satisfied comes from an exact comparison (failures set exit status 1).",
        ),
    ] = False

    @classmethod
    def of(
        cls,
        experiment_id: str,
        seed: int,
        learner: str,
        metric: str,
        value: Optional[Number],
        g_id: Optional[int] = None,
        n: Optional[int] = None,
        bound: Optional[Number] = None,
        bound_satisfied: Optional[bool] = None,
        ci_halfwidth: Optional[float] = None,
        exact_check: bool = False,
    ) -> "ResultRow":
        return cls(
            experiment_id=experiment_id,
            learner=learner,
            g_id=g_id,
            n=n,
            metric=metric,
            value=_render(value),
            value_decimal=None if value is None else format_decimal(value),
            bound=_render(bound),
            bound_decimal=None if bound is None else format_decimal(bound),
            bound_satisfied=bound_satisfied,
            ci_halfwidth=None if ci_halfwidth is None else format_decimal(ci_halfwidth),
            seed=seed,
            exact_check=exact_check,
        )

    def csv_record(self) -> Dict[str, str]:
        """Column -> cell text; empty cells for missing values, booleans as 'true'/'false'."""
        record = {}
        for column, cell in self.model_dump().items():
            if cell is None:
                record[column] = ""
            elif isinstance(cell, bool):
                record[column] = "true" if cell else "false"
            else:
                record[column] = str(cell)
        return record


class RunManifest(BaseModel):
    """
    Everything needed to reproduce a run: the resolved config, its hash, the seed and versions.
    """

    experiment_id: Annotated[str, Field(description="Stem of the run's output files.")]
    experiment: Annotated[str, Field(description="Experiment kind that was executed.")]
    config: Annotated[dict, Field(description="Fully resolved configuration, defaults included.")]
    config_hash: Annotated[str, Field(description="SHA-256 of the canonical JSON of the resolved config.")]
    seed: Annotated[int, Field(description="Master seed of every random stream.")]
    jobs: Annotated[int, Field(description="Worker processes used for trials (results do not depend on it).")]
    versions: Annotated[Dict[str, str], Field(description="Python and library versions of the run.")]
    outputs: Annotated[List[str], Field(description="File names written next to this manifest.")]
    rows: Annotated[int, Field(description="Number of CSV rows written.")]
    bound_failures: Annotated[int, Field(description="Rows whose bound check failed.")]
    exact_failures: Annotated[int, Field(description="Failed rows that came from exact comparisons.")]


class ExperimentReport(BaseModel):
    """
    Result of one experiment run, ready for the report generators.
    """

    config: Annotated[ExperimentConfig, Field(description="The validated configuration of the run.")]
    rows: Annotated[List[ResultRow], Field(description="Metric rows in emission order.")] = []
    notes: Annotated[List[str], Field(description="Free-text findings shown in the Markdown summary.")] = []

    @property
    def bound_failures(self) -> List[ResultRow]:
        return [row for row in self.rows if row.bound_satisfied is False]

    @property
    def exact_failures(self) -> List[ResultRow]:
        return [row for row in self.bound_failures if row.exact_check]

    def add(self, learner: str, metric: str, value: Optional[Number], **fields) -> ResultRow:
        row = ResultRow.of(self.config.experiment_id, self.config.seed, learner, metric, value, **fields)
        self.rows.append(row)
        return row
