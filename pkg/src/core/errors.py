"""Named failure conditions raised across the package.

Each error subclasses a built-in exception so callers may catch either the
specific condition or the generic ValueError / RuntimeError.
"""


class DomainTooLargeError(ValueError):
    """Brute-force enumeration over 2^m labelings would exceed the configured cap."""


class GraphTooLargeError(ValueError):
    """A densest-subgraph search was requested on a component above the vertex cap."""


class InstanceTooLargeError(ValueError):
    """An oracle or agnostic construction was requested above its size cap."""


class InconsistentSampleError(ValueError):
    """No group-realizable concept agrees with the labeled sample."""


class KOutOfRangeError(ValueError):
    """The agnostic mixture size k falls outside 1..n-1."""


class EpsilonOutOfRangeError(ValueError):
    """The accuracy parameter is incompatible with the requested instance."""


class BudgetExceededError(ValueError):
    """Exact enumeration would visit more weighted samples than the budget allows."""


class ConfigInvalidError(ValueError):
    """An experiment configuration failed to parse or validate."""


class NoAugmentingMatchingError(RuntimeError):
    """The matching solver stalled below value |E|: a solver bug or a violated capacity precondition."""


class TransductiveMismatchError(RuntimeError):
    """The closed-form transductive error disagrees with the permutation average."""


class CapacityBelowDensityWarning(UserWarning):
    """Explicit capacities fall below the g-relevant density; completeness is no longer guaranteed."""
