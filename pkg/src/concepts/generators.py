"""Builds finite concept classes and group families from descriptors.

Infinite classes enter the package only through these generators, already
projected on the configured m-point domain.
"""

import logging
from typing import List

from concepts.domain import ConceptClass, GroupFamily, bits_from_string, mask_from_points, point_bit
from schemas.config_schemas import ClassDescriptor, GroupDescriptor

logger = logging.getLogger(__name__)


def thresholds(m: int) -> ConceptClass:
    """Labels point i with 1 iff i >= t, for every cut t in 0..m (m + 1 behaviors)."""
    return ConceptClass.from_bits(((1 << (m - t)) - 1 for t in range(m + 1)), m)


def intervals(m: int) -> ConceptClass:
    """Indicators of contiguous runs of points, including the empty run."""
    bits = {0}
    for start in range(m):
        for stop in range(start + 1, m + 1):
            bits.add(mask_from_points(range(start, stop), m))
    return ConceptClass.from_bits(bits, m)


def singletons(m: int) -> ConceptClass:
    """Indicators of single points plus the all-zeros concept."""
    return ConceptClass.from_bits([0] + [point_bit(i, m) for i in range(m)], m)


def full_cube(m: int) -> ConceptClass:
    return ConceptClass.from_bits(range(1 << m), m)


def build_class(descriptor: ClassDescriptor, m: int) -> ConceptClass:
    """Materializes a hypothesis-class descriptor on the m-point domain."""
    match descriptor.kind:
        case "explicit":
            bits = descriptor.bits or []
            bad = [b for b in bits if len(b) != m]
            if bad:
                raise ValueError(f"Explicit behaviors {bad} do not have length m={m}.")
            return ConceptClass.from_bits((bits_from_string(b) for b in bits), m)
        case "thresholds":
            return thresholds(m)
        case "intervals":
            return intervals(m)
        case "singletons":
            return singletons(m)
        case "full_cube":
            return full_cube(m)
        case _:
            raise ValueError(f"Unsupported class kind: {descriptor.kind}")


def hierarchical_masks(roots: int, depth: int, m: int) -> List[int]:
    """Roots first, then each root's chain of nested subgroups.

    Root j owns the block of (depth + 1) consecutive points starting at j * (depth + 1);
    its k-th subgroup (k = 1..depth) drops the last k points of the block.
    """
    block = depth + 1
    if roots * block > m:
        raise ValueError(
            f"Hierarchical family with {roots} roots and depth {depth} needs m >= {roots * block}, got {m}."
        )
    masks = [mask_from_points(range(j * block, (j + 1) * block), m) for j in range(roots)]
    for j in range(roots):
        for k in range(1, depth + 1):
            masks.append(mask_from_points(range(j * block, (j + 1) * block - k), m))
    return masks


def build_groups(descriptor: GroupDescriptor, m: int) -> GroupFamily:
    """Materializes a group-family descriptor on the m-point domain."""
    match descriptor.kind:
        case "explicit":
            bits = descriptor.bits or []
            bad = [b for b in bits if len(b) != m]
            if bad:
                raise ValueError(f"Explicit group masks {bad} do not have length m={m}.")
            return GroupFamily.of((bits_from_string(b) for b in bits), m)
        case "full":
            return GroupFamily.of([(1 << m) - 1], m)
        case "singletons":
            return GroupFamily.of((point_bit(i, m) for i in range(m)), m)
        case "intervals":
            return GroupFamily.of(
                (mask_from_points(range(a, b), m) for a in range(m) for b in range(a + 1, m + 1)), m
            )
        case "prefixes":
            return GroupFamily.of((mask_from_points(range(0, b), m) for b in range(1, m + 1)), m)
        case "hierarchical":
            return GroupFamily.of(hierarchical_masks(descriptor.roots, descriptor.depth, m), m)
        case _:
            raise ValueError(f"Unsupported group kind: {descriptor.kind}")
