"""Defines Pydantic models for experiment configurations."""

from fractions import Fraction
from typing import Annotated, List, Literal, Optional, Tuple

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, field_validator, model_validator

from utils.rationals import format_rational, parse_rational

# Exact rational read from "p/q", integer or decimal input, written back as "p/q".
Rational = Annotated[
    Fraction,
    BeforeValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
]

ExperimentKind = Literal[
    "oig-audit",
    "match-solve",
    "transductive",
    "prediction",
    "pac",
    "agnostic",
    "covering",
    "lowerbound",
    "erm-vs-mgoig",
]

LearnerKind = Literal["mgoig", "majority", "agnostic", "erm"]
CapacityModeName = Literal["exact", "ceil"]


def _check_bit_strings(bits: Optional[List[str]]) -> Optional[List[str]]:
    if bits is None:
        return bits
    for text in bits:
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"Bit strings must be non-empty and contain only 0/1, got '{text}'.")
    return bits


class DomainConfig(BaseModel):
    """
    The finite point set 0..m-1 every other descriptor refers to.
    """

    m: Annotated[int, Field(ge=1, description="Number of distinct points in the domain.")]


class ClassDescriptor(BaseModel):
    """
    Hypothesis-class descriptor, materialized on the domain by concepts.generators.
    """

    kind: Annotated[
        Literal["explicit", "thresholds", "intervals", "singletons", "full_cube"],
        Field(description="Generator used to build the class."),
    ]
    bits: Annotated[
        Optional[List[str]],
        Field(description="Behaviors as 0/1 strings of length m. Required for kind 'explicit'."),
    ] = None

    @field_validator("bits")
    @classmethod
    def _bits_are_binary(cls, bits):
        return _check_bit_strings(bits)

    @model_validator(mode="after")
    def _explicit_needs_bits(self):
        if self.kind == "explicit" and not self.bits:
            raise ValueError("An explicit class needs at least one behavior in 'bits'.")
        return self


class GroupDescriptor(BaseModel):
    """
    Group-family descriptor, materialized on the domain by concepts.generators.
    """

    kind: Annotated[
        Literal["explicit", "singletons", "full", "intervals", "prefixes", "hierarchical"],
        Field(description="Generator used to build the family."),
    ]
    bits: Annotated[
        Optional[List[str]],
        Field(description="Group masks as 0/1 strings of length m. Required for kind 'explicit'."),
    ] = None
    roots: Annotated[int, Field(ge=1, description="Number of disjoint root groups (kind 'hierarchical').")] = 1
    depth: Annotated[int, Field(ge=0, description="Nested subgroups per root (kind 'hierarchical').")] = 0

    @field_validator("bits")
    @classmethod
    def _bits_are_binary(cls, bits):
        return _check_bit_strings(bits)

    @model_validator(mode="after")
    def _explicit_needs_bits(self):
        if self.kind == "explicit":
            if not self.bits:
                raise ValueError("An explicit group family needs at least one mask in 'bits'.")
            if any("1" not in mask for mask in self.bits):
                raise ValueError("Empty groups are not allowed in a group family.")
        return self


class TaskConfig(BaseModel):
    """
    A discrete distribution over the domain together with its labeling rule.
    """

    kind: Annotated[
        Literal["realizable", "agnostic"],
        Field(description="Realizable tasks label by a target concept, agnostic tasks by p(y=1|x)."),
    ] = "realizable"
    masses: Annotated[
        Optional[List[Rational]],
        Field(description="Marginal probability of every point. Defaults to uniform; must sum to exactly 1."),
    ] = None
    target: Annotated[
        Optional[str],
        Field(description="Target concept as a 0/1 string. Defaults to the least group-realizable concept."),
    ] = None
    p_one: Annotated[
        Optional[List[Rational]],
        Field(description="Probability of label 1 at every point (agnostic tasks)."),
    ] = None

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("masses")
    @classmethod
    def _masses_form_a_distribution(cls, masses):
        if masses is None:
            return masses
        if any(mass < 0 for mass in masses):
            raise ValueError("Point masses must be non-negative.")
        if sum(masses, Fraction(0)) != 1:
            raise ValueError(f"Point masses must sum to exactly 1, got {sum(masses, Fraction(0))}.")
        return masses

    @field_validator("p_one")
    @classmethod
    def _p_one_in_unit_interval(cls, p_one):
        if p_one is not None and any(not 0 <= p <= 1 for p in p_one):
            raise ValueError("Label probabilities must lie in [0, 1].")
        return p_one

    @model_validator(mode="after")
    def _labeling_matches_kind(self):
        if self.kind == "agnostic" and self.p_one is None:
            raise ValueError("Agnostic tasks need 'p_one'.")
        if self.kind == "realizable" and self.p_one is not None:
            raise ValueError("Realizable tasks label by 'target'; drop 'p_one' or use kind 'agnostic'.")
        return self


class LearnerConfig(BaseModel):
    """
    Learner choice plus the capacity mode of its matching network.
    """

    kind: Annotated[LearnerKind, Field(description="Which predictor to run.")] = "mgoig"
    capacity_mode: Annotated[
        CapacityModeName,
        Field(description="'ceil' uses integer capacities ceil(d_g); 'exact' uses d_g itself."),
    ] = "ceil"


class LowerBoundConfig(BaseModel):
    """
    Parameters of the disjoint-points lower-bound harness and its geometric tail check.
    """

    points: Annotated[int, Field(ge=2, description="Number I of points with disjoint group memberships.")]
    exhaustive_max: Annotated[
        int,
        Field(ge=0, description="Largest I for which every b in {0,1}^I is searched."),
    ] = 10
    k_grid: Annotated[List[int], Field(description="Values of k for the geometric tail check.")] = [1, 3, 7]
    delta_grid: Annotated[List[Rational], Field(description="Success scales for the tail check.")] = [
        Fraction(3, 10),
        Fraction(1, 2),
        Fraction(9, 10),
    ]
    t_grid: Annotated[List[float], Field(description="Deviations t for the tail check.")] = [0.25, 0.5, 1.0]
    tail_trials: Annotated[int, Field(ge=1, description="Monte Carlo trials per tail-check cell.")] = 10000

    model_config = ConfigDict(arbitrary_types_allowed=True)


class AuditConfig(BaseModel):
    """
    Random-instance settings of the OIG audit.
    """

    random_classes: Annotated[int, Field(ge=0, description="Random classes drawn for the density check.")] = 0
    max_points: Annotated[int, Field(ge=1, le=10, description="Largest domain of a random class.")] = 6


class ExperimentConfig(BaseModel):
    """
    Root configuration of one experiment run.
    """

    version: Annotated[str, Field(description="Configuration version for compatibility checks.")] = "1.0"
    experiment_id: Annotated[
        str,
        Field(min_length=1, pattern=r"^[A-Za-z0-9_.-]+$", description="Stem of every output file."),
    ]
    experiment: Annotated[ExperimentKind, Field(description="Which experiment to run.")]
    description: Annotated[str, Field(description="Free-text description of the run.")] = ""
    domain: Annotated[Optional[DomainConfig], Field(description="The finite domain.")] = None
    hypotheses: Annotated[Optional[ClassDescriptor], Field(description="The hypothesis class H.")] = None
    groups: Annotated[Optional[GroupDescriptor], Field(description="The group family G.")] = None
    task: Annotated[TaskConfig, Field(description="Distribution and labeling rule.")] = TaskConfig()
    learner: Annotated[LearnerConfig, Field(description="Learner under evaluation.")] = LearnerConfig()
    compare_learners: Annotated[
        List[LearnerConfig],
        Field(description="Additional learners run side by side (lowerbound, erm-vs-mgoig)."),
    ] = []
    n_grid: Annotated[List[int], Field(min_length=1, description="Sample sizes to evaluate.")]
    trials: Annotated[int, Field(ge=1, description="Monte Carlo trials per grid cell.")] = 1000
    delta: Annotated[Rational, Field(description="Confidence parameter in (0, 1).")] = Fraction(1, 10)
    epsilon: Annotated[Rational, Field(description="Accuracy parameter in (0, 1).")] = Fraction(1, 10)
    seed: Annotated[int, Field(ge=0, description="Master seed of every random stream.")] = 0
    mode: Annotated[Literal["exact", "mc"], Field(description="Exact enumeration or Monte Carlo.")] = "exact"
    sample_points: Annotated[
        Optional[List[int]],
        Field(description="Sample points of the transductive experiments. Defaults to points 0..n-1."),
    ] = None
    output_dir: Annotated[Optional[str], Field(description="Directory for CSV, manifest and summary.")] = None
    lower_bound: Annotated[Optional[LowerBoundConfig], Field(description="Lower-bound harness settings.")] = None
    audit: Annotated[AuditConfig, Field(description="OIG audit settings.")] = AuditConfig()

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("delta", "epsilon")
    @classmethod
    def _open_unit_interval(cls, value):
        if not 0 < value < 1:
            raise ValueError(f"Expected a value in (0, 1), got {value}.")
        return value

    @field_validator("n_grid")
    @classmethod
    def _non_negative_sizes(cls, n_grid):
        if any(n < 0 for n in n_grid):
            raise ValueError("Sample sizes must be non-negative.")
        return n_grid

    @model_validator(mode="after")
    def _instance_is_complete(self):
        if self.experiment == "lowerbound":
            if self.lower_bound is None:
                raise ValueError("The lowerbound experiment needs a 'lower_bound' section.")
            return self
        missing = [name for name in ("domain", "hypotheses", "groups") if getattr(self, name) is None]
        if missing:
            raise ValueError(f"Experiment '{self.experiment}' needs {', '.join(missing)}.")
        m = self.domain.m
        for name, values in (("task.masses", self.task.masses), ("task.p_one", self.task.p_one)):
            if values is not None and len(values) != m:
                raise ValueError(f"{name} has {len(values)} entries, expected m={m}.")
        if self.task.target is not None and len(self.task.target) != m:
            raise ValueError(f"task.target has length {len(self.task.target)}, expected m={m}.")
        if self.sample_points is not None and any(not 0 <= p < m for p in self.sample_points):
            raise ValueError(f"sample_points must lie in 0..{m - 1}.")
        return self


class SampleConfig(BaseModel):
    """
    A labeled sample for the predict commands.
    """

    entries: Annotated[List[Tuple[int, int]], Field(description="(point, label) pairs in sample order.")] = []

    @field_validator("entries")
    @classmethod
    def _binary_labels(cls, entries):
        if any(label not in (0, 1) for _, label in entries):
            raise ValueError("Sample labels must be 0 or 1.")
        if any(point < 0 for point, _ in entries):
            raise ValueError("Sample points must be non-negative.")
        return entries
