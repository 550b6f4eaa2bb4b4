"""Point-to-set similarity and the Hausdorff fuzzy distance between finite subsets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import DomainError
from .space import FuzzySpace
from .util import TOL, gt_strict, require_positive, require_unit


@dataclass(frozen=True)
class SubsetRef:
    """Nonempty sorted set of point indices into one space."""

    space: FuzzySpace
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(set(int(i) for i in self.indices)))
        object.__setattr__(self, "indices", idx)
        if not idx:
            raise DomainError("subset must be nonempty")
        if idx[0] < 0 or idx[-1] >= self.space.n:
            raise DomainError(f"subset indices out of range for n={self.space.n}")

    @classmethod
    def from_labels(cls, space: FuzzySpace, labels: Iterable[str]) -> "SubsetRef":
        return cls(space, tuple(space.index_of(l) for l in labels))


Subset = Union[SubsetRef, Sequence[int]]


def _resolve(space: FuzzySpace, a: Subset) -> tuple[int, ...]:
    if isinstance(a, SubsetRef):
        if a.space is not space:
            raise DomainError("subset belongs to a different space")
        return a.indices
    return SubsetRef(space, tuple(a)).indices


def point_to_set(space: FuzzySpace, x: int, a: Subset, t: float) -> float:
    """max over points of the subset of M(x, ., t) (the finite supremum)."""
    require_positive(t, "t")
    idx = _resolve(space, a)
    space.entry(x, x)  # index validation
    return max(space.value(x, y, t) for y in idx)


def hausdorff_fuzzy(space: FuzzySpace, a: Subset, b: Subset, t: float) -> float:
    """min of the two directed infima of point-to-set similarities."""
    require_positive(t, "t")
    ia = _resolve(space, a)
    ib = _resolve(space, b)
    fwd = min(max(space.value(x, y, t) for y in ib) for x in ia)
    bwd = min(max(space.value(x, y, t) for x in ia) for y in ib)
    return min(fwd, bwd)


def hausdorff_conditions(
    space: FuzzySpace,
    a: Subset,
    b: Subset,
    t: float,
    eps: float,
    tol: float = TOL,
) -> tuple[bool, list[tuple[str, int]]]:
    """Mutual strict (1 - eps)-coverage of the two subsets at scale t.

    Returns (holds, witnesses); each witness names the side ("a" or "b") and
    the uncovered point.  Holds exactly when every point of either subset has
    a partner on the other side with similarity strictly above 1 - eps.
    """
    require_positive(t, "t")
    require_unit(eps, "eps")
    if eps == 0.0 or eps == 1.0:
        raise DomainError("eps must lie strictly between 0 and 1")
    ia = _resolve(space, a)
    ib = _resolve(space, b)
    threshold = 1.0 - eps
    witnesses: list[tuple[str, int]] = []
    for x in ia:
        if not any(gt_strict(space.value(x, y, t), threshold, tol) for y in ib):
            witnesses.append(("a", x))
    for y in ib:
        if not any(gt_strict(space.value(x, y, t), threshold, tol) for x in ia):
            witnesses.append(("b", y))
    return (not witnesses), witnesses
