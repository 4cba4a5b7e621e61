"""Finite-domain value types: behaviors, concept classes, group families and labeled samples.

Bit convention: point i of an m-point domain is stored at bit (m - 1 - i), so that
integer order on `bits` coincides with lexicographic order on the string form
("010" labels point 1 with 1). Group masks use the same convention.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

logger = logging.getLogger(__name__)


def point_bit(point: int, length: int) -> int:
    """Returns the integer bit that stores `point` in a vector of `length` points."""
    return 1 << (length - 1 - point)


def mask_from_points(points: Iterable[int], length: int) -> int:
    mask = 0
    for point in points:
        mask |= point_bit(point, length)
    return mask


def points_of_mask(mask: int, length: int) -> List[int]:
    """Lists the point indices set in `mask`, ascending."""
    return [i for i in range(length) if mask & point_bit(i, length)]


def restrict_bits(bits: int, length: int, points: Sequence[int]) -> int:
    """Reads the bits of `points` (in the given order) into a new vector of len(points) bits."""
    new_length = len(points)
    out = 0
    for j, point in enumerate(points):
        if bits & point_bit(point, length):
            out |= point_bit(j, new_length)
    return out


def bits_to_string(bits: int, length: int) -> str:
    return format(bits, f"0{length}b") if length > 0 else ""


def bits_from_string(text: str) -> int:
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"Expected a non-empty string of 0/1 characters, got '{text}'.")
    return int(text, 2)


@dataclass(frozen=True)
class Domain:
    """An ordered finite point set 0..size-1."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"Domain size must be at least 1, got {self.size}.")

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1


@dataclass(frozen=True, order=True)
class Behavior:
    """A labeling of an ordered finite point set. Doubles as concept, hypothesis and OIG vertex."""

    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0 or self.bits < 0 or self.bits >= (1 << self.length):
            raise ValueError(f"Bits {self.bits} do not fit a behavior of length {self.length}.")

    @classmethod
    def from_string(cls, text: str) -> "Behavior":
        return cls(bits=bits_from_string(text), length=len(text))

    def label(self, point: int) -> int:
        return 1 if self.bits & point_bit(point, self.length) else 0

    def restrict(self, points: Sequence[int]) -> "Behavior":
        return Behavior(bits=restrict_bits(self.bits, self.length, points), length=len(points))

    def flip(self, point: int) -> "Behavior":
        return Behavior(bits=self.bits ^ point_bit(point, self.length), length=self.length)

    def hamming(self, other: "Behavior") -> int:
        return (self.bits ^ other.bits).bit_count()

    def __str__(self) -> str:
        return bits_to_string(self.bits, self.length)


@dataclass(frozen=True)
class ConceptClass:
    """A nonempty, duplicate-free, lexicographically ordered set of behaviors of one length."""

    members: Tuple[Behavior, ...]
    length: int

    def __post_init__(self):
        if not self.members:
            raise ValueError("A concept class must have at least one member.")
        if any(member.length != self.length for member in self.members):
            raise ValueError("All members of a concept class must share the class length.")
        if list(self.members) != sorted(set(self.members)):
            raise ValueError("Concept class members must be unique and canonically ordered; use ConceptClass.of.")

    @classmethod
    def of(cls, behaviors: Iterable[Behavior], length: int | None = None) -> "ConceptClass":
        unique = sorted(set(behaviors))
        if length is None:
            if not unique:
                raise ValueError("Cannot infer the length of an empty concept class.")
            length = unique[0].length
        return cls(members=tuple(unique), length=length)

    @classmethod
    def from_bits(cls, bits: Iterable[int], length: int) -> "ConceptClass":
        return cls.of((Behavior(b, length) for b in bits), length)

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> "ConceptClass":
        return cls.of(Behavior.from_string(s) for s in strings)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, behavior: object) -> bool:
        return behavior in self.bit_set

    # Memoized predictors hash the class on every call.
    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.members, self.length))

    @cached_property
    def bit_set(self) -> frozenset:
        return frozenset(self.members)

    def to_strings(self) -> List[str]:
        return [str(member) for member in self.members]


@dataclass(frozen=True)
class GroupFamily:
    """An ordered, duplicate-free family of nonempty group masks over a domain of `length` points.

    Group ids are positions in `masks`.
    """

    masks: Tuple[int, ...]
    length: int

    def __post_init__(self):
        full = (1 << self.length) - 1
        for mask in self.masks:
            if mask == 0:
                raise ValueError("Empty groups are not allowed in a group family.")
            if mask & ~full:
                raise ValueError(f"Group mask {mask} has points outside the {self.length}-point domain.")
        if len(set(self.masks)) != len(self.masks):
            raise ValueError("Group family contains duplicate masks; use GroupFamily.of.")

    @classmethod
    def of(cls, masks: Iterable[int], length: int) -> "GroupFamily":
        """Builds a family keeping first occurrences. Empty masks are rejected."""
        seen: Dict[int, None] = {}
        for mask in masks:
            if mask == 0:
                raise ValueError("Empty groups are not allowed in a group family.")
            seen.setdefault(mask, None)
        return cls(masks=tuple(seen), length=length)

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> "GroupFamily":
        strings = list(strings)
        if not strings:
            return cls(masks=(), length=0)
        length = len(strings[0])
        return cls.of((bits_from_string(s) for s in strings), length)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        return iter(self.masks)

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.masks, self.length))

    def project(self, points: Sequence[int]) -> "GroupFamily":
        """Restricts every mask to `points`; groups that become empty are dropped, duplicates merged."""
        projected = (restrict_bits(mask, self.length, points) for mask in self.masks)
        return GroupFamily.of((mask for mask in projected if mask), len(points))

    def groups_of_point(self, point: int) -> Tuple[int, ...]:
        """Ids of the groups containing `point`."""
        bit = point_bit(point, self.length)
        return tuple(gid for gid, mask in enumerate(self.masks) if mask & bit)

    def to_strings(self) -> List[str]:
        return [bits_to_string(mask, self.length) for mask in self.masks]


@dataclass(frozen=True)
class LabeledSample:
    """An ordered list of (point, label) entries over a domain of `domain_size` points.

    Realizable samples require duplicates of a point to carry identical labels.
    Agnostic samples (require_consistent=False) may label repeated draws differently.
    """

    entries: Tuple[Tuple[int, int], ...]
    domain_size: int
    require_consistent: bool = True

    def __post_init__(self):
        seen: Dict[int, int] = {}
        for point, label in self.entries:
            if not 0 <= point < self.domain_size:
                raise ValueError(f"Sample point {point} is outside the {self.domain_size}-point domain.")
            if label not in (0, 1):
                raise ValueError(f"Sample label must be 0 or 1, got {label}.")
            if self.require_consistent and seen.setdefault(point, label) != label:
                raise ValueError(f"Sample point {point} appears with conflicting labels.")

    @classmethod
    def of(cls, entries: Iterable[Sequence[int]], domain_size: int, require_consistent: bool = True) -> "LabeledSample":
        return cls(
            entries=tuple((int(p), int(y)) for p, y in entries),
            domain_size=domain_size,
            require_consistent=require_consistent,
        )

    @classmethod
    def labeled_by(cls, points: Iterable[int], target: Behavior) -> "LabeledSample":
        return cls.of(((p, target.label(p)) for p in points), target.length)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def distinct_points(self) -> List[int]:
        return sorted({point for point, _ in self.entries})

    def label_of(self) -> Dict[int, int]:
        """Maps each sampled point to its label (realizable samples only)."""
        return {point: label for point, label in self.entries}

    def multiplicity(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for point, _ in self.entries:
            counts[point] = counts.get(point, 0) + 1
        return counts

    def prefix(self, t: int) -> "LabeledSample":
        return LabeledSample(self.entries[:t], self.domain_size, self.require_consistent)

    def without(self, index: int) -> "LabeledSample":
        return LabeledSample(
            self.entries[:index] + self.entries[index + 1 :], self.domain_size, self.require_consistent
        )

    def canonical_key(self) -> Tuple[Tuple[int, int], ...]:
        """Order-free key of the sample (sorted entries with multiplicity)."""
        return tuple(sorted(self.entries))
