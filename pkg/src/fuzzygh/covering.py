"""Nets, minimal covers and cover numbers for finite fuzzy metric spaces.

A (t, eps)-net is a subset whose points cover the space by open balls
B(y, eps, t) = {x : M(x, y, t) > 1 - eps}; the cover number is the minimum
net cardinality.  Ball membership is strict, so boundary similarities do not
cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .space import FuzzySpace
from .util import TOL, gt_strict, require_positive, require_unit

DEFAULT_EXACT_LIMIT = 15


@dataclass(frozen=True)
class NetCertificate:
    """A verified net: per-point coverage witnesses plus a minimality flag."""

    t: float
    eps: float
    indices: tuple[int, ...]
    coverage: tuple[int, ...]  # coverage[x] = net point with M(x, ., t) > 1 - eps
    minimal: bool

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "eps": self.eps,
            "indices": list(self.indices),
            "coverage": list(self.coverage),
            "minimal": self.minimal,
            "size": len(self.indices),
        }

    def verify(self, space: FuzzySpace, tol: float = TOL) -> bool:
        """Re-check coverage independently of the search that produced the net."""
        threshold = 1.0 - self.eps
        for x in range(space.n):
            if not any(
                gt_strict(space.value(x, y, self.t), threshold, tol) for y in self.indices
            ):
                return False
        return True


def _coverage_matrix(space: FuzzySpace, t: float, eps: float, tol: float) -> np.ndarray:
    n = space.n
    cov = np.zeros((n, n), dtype=bool)
    threshold = 1.0 - eps
    for x in range(n):
        for y in range(n):
            cov[x, y] = gt_strict(space.value(x, y, t), threshold, tol)
    return cov


def _witnesses(cov: np.ndarray, net: Sequence[int]) -> tuple[int, ...]:
    out = []
    for x in range(cov.shape[0]):
        for y in net:
            if cov[x, y]:
                out.append(y)
                break
    return tuple(out)


def find_net(
    space: FuzzySpace,
    t: float,
    eps: float,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
    tol: float = TOL,
) -> NetCertificate:
    """Minimum-cardinality net when n <= exact_limit, else a greedy cover.

    The exact search enumerates subsets by increasing size in lexicographic
    order, so the certificate is the lexicographically least minimal net.
    """
    require_positive(t, "t")
    require_unit(eps, "eps")
    if eps == 0.0 or eps == 1.0:
        raise DomainError("eps must lie strictly between 0 and 1")
    n = space.n
    cov = _coverage_matrix(space, t, eps, tol)
    if n <= exact_limit:
        for k in range(1, n + 1):
            for subset in combinations(range(n), k):
                if cov[:, subset].any(axis=1).all():
                    return NetCertificate(t, eps, subset, _witnesses(cov, subset), True)
        # every point covers itself strictly (diagonal is 1), so this is unreachable
        raise AssertionError("finite space admits the trivial net")
    # greedy set cover: repeatedly take the point covering most uncovered points
    uncovered = np.ones(n, dtype=bool)
    net: list[int] = []
    while uncovered.any():
        gains = cov[uncovered].sum(axis=0)
        best = int(np.argmax(gains))  # argmax keeps the lowest index on ties
        if gains[best] == 0:
            raise AssertionError("self-coverage guarantees progress")
        net.append(best)
        uncovered &= ~cov[:, best]
    net_t = tuple(sorted(net))
    return NetCertificate(t, eps, net_t, _witnesses(cov, net_t), False)


def cover_number(
    space: FuzzySpace,
    eps: float,
    t: float,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
    tol: float = TOL,
) -> tuple[int, NetCertificate]:
    """Minimum number of balls B(c, eps, t) covering the space, with certificate.

    Argument order is (eps, t): the ball parameter first, then the scale.
    """
    cert = find_net(space, t, eps, exact_limit=exact_limit, tol=tol)
    return len(cert.indices), cert


def uniform_cover_bound(
    spaces: Sequence[FuzzySpace],
    eps: float,
    t: float,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> int:
    """Smallest uniform bound on the cover numbers of a finite family."""
    if not spaces:
        raise DomainError("family must be nonempty")
    return max(cover_number(sp, eps, t, exact_limit=exact_limit)[0] for sp in spaces)


def metric_cover_number(
    distances,
    radius: float,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
    tol: float = TOL,
) -> int:
    """Classical covering number with strict open balls {y : d(c, y) < radius}."""
    d = np.asarray(distances, dtype=float)
    n = d.shape[0]
    require_positive(radius, "radius")
    cov = d < radius - tol
    np.fill_diagonal(cov, True)
    if n <= exact_limit:
        for k in range(1, n + 1):
            for subset in combinations(range(n), k):
                if cov[:, subset].any(axis=1).all():
                    return k
        raise AssertionError("self-coverage guarantees a cover")
    uncovered = np.ones(n, dtype=bool)
    count = 0
    while uncovered.any():
        gains = cov[uncovered].sum(axis=0)
        best = int(np.argmax(gains))
        count += 1
        uncovered &= ~cov[:, best]
    return count


CoverBoundFn = Callable[[float], int]
