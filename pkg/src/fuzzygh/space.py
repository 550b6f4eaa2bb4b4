"""Finite fuzzy metric spaces, axiom verification, t-diameter, isometry testing.

A space stores one value function per unordered off-diagonal pair; the
diagonal is implicit (1 for t > 0, 0 at t = 0), which builds the symmetry and
self-identity axioms into the representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import ConstructionError, DomainError
from .grids import GridSpec
from .tnorm import TNorm, tn_check_axioms
from .util import TOL
from .valuefn import (
    ONE,
    Standard,
    Stationary,
    Step,
    ValueFn,
    attains_below_one,
    is_steplike,
    vf_breakpoints,
    vf_min,
)


@dataclass(frozen=True)
class FuzzySpace:
    """Finite point set with a t-norm and per-pair value functions.

    ``pairs`` lists the off-diagonal entries in lexicographic (i < j) order.
    """

    name: str
    labels: tuple[str, ...]
    norm: TNorm
    pairs: tuple[ValueFn, ...]

    def __post_init__(self):
        n = len(self.labels)
        if n < 1:
            raise ConstructionError("space needs at least one point")
        if len(set(self.labels)) != n:
            raise ConstructionError("point labels must be unique")
        if len(self.pairs) != n * (n - 1) // 2:
            raise ConstructionError("wrong number of off-diagonal entries")
        for idx, f in enumerate(self.pairs):
            if not attains_below_one(f):
                i, j = _unrank_pair(idx, n)
                raise ConstructionError(
                    f"pair ({self.labels[i]}, {self.labels[j]}) never drops below 1; "
                    "distinct points must be separated"
                )

    @property
    def n(self) -> int:
        return len(self.labels)

    def pair_index(self, i: int, j: int) -> int:
        if i == j:
            raise DomainError("diagonal has no stored entry")
        if i > j:
            i, j = j, i
        return i * (2 * self.n - i - 1) // 2 + (j - i - 1)

    def entry(self, i: int, j: int) -> ValueFn:
        """Value function of the pair {i, j}; the diagonal is the constant-one function."""
        self._check_index(i)
        self._check_index(j)
        if i == j:
            return ONE
        return self.pairs[self.pair_index(i, j)]

    def value(self, i: int, j: int, t: float) -> float:
        return self.entry(i, j).eval(t)

    def grid_values(self, grid: GridSpec) -> np.ndarray:
        """(T, n, n) array of values on the grid, diagonal filled with 1."""
        return _grid_values_cached(self, grid)

    def breakpoints(self) -> tuple[float, ...]:
        out: set[float] = set()
        for f in self.pairs:
            out.update(vf_breakpoints(f))
        return tuple(sorted(out))

    def all_steplike(self) -> bool:
        return all(is_steplike(f) for f in self.pairs)

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise DomainError(f"point index {i} out of range for n={self.n}")

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as exc:
            raise DomainError(f"unknown point label {label!r}") from exc


def _unrank_pair(idx: int, n: int) -> tuple[int, int]:
    for i in range(n):
        row = n - i - 1
        if idx < row:
            return i, i + 1 + idx
        idx -= row
    raise IndexError(idx)


@lru_cache(maxsize=512)
def _grid_values_cached(space: FuzzySpace, grid: GridSpec) -> np.ndarray:
    ts = grid.array()
    n = space.n
    out = np.ones((len(ts), n, n))
    for i in range(n):
        for j in range(i + 1, n):
            vals = space.entry(i, j).eval_array(ts)
            out[:, i, j] = vals
            out[:, j, i] = vals
    out.setflags(write=False)
    return out


def certification_grid(
    grid: Optional[GridSpec],
    *spaces: FuzzySpace,
    extra: Sequence[float] = (),
) -> GridSpec:
    """Merge the working grid with all step breakpoints (plus a tail point).

    Checks on piecewise-constant spaces become exact: between consecutive
    breakpoints every entry is constant, and one point beyond the largest
    breakpoint pins the tail values.
    """
    g = grid if grid is not None else GridSpec.default()
    merge: list[float] = list(extra)
    bps: list[float] = []
    for sp in spaces:
        bps.extend(sp.breakpoints())
    if bps:
        top = max(bps)
        merge.extend(bps)
        merge.append(top * 1.5 + 1.0)
    return g.merged(merge)


# ---------------------------------------------------------------------------
# constructors


def _validate_norm(norm: TNorm) -> TNorm:
    if not norm.is_builtin:
        report = tn_check_axioms(norm, [0.0, 0.25, 0.5, 0.75, 1.0])
        if not report.passed:
            raise ConstructionError(
                f"custom t-norm {norm.kind!r} fails the axiom check: {report.as_dict()}"
            )
    return norm


def validate_distance_matrix(distances, tol: float = 1e-9) -> np.ndarray:
    """Check symmetry, zero diagonal, positivity and the triangle inequality."""
    d = np.asarray(distances, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ConstructionError("distance matrix must be square")
    n = d.shape[0]
    if np.any(np.abs(np.diag(d)) > tol):
        raise ConstructionError("distance matrix must have zero diagonal")
    if np.any(np.abs(d - d.T) > tol):
        raise ConstructionError("distance matrix must be symmetric")
    for i in range(n):
        for j in range(i + 1, n):
            if not d[i, j] > 0.0:
                raise ConstructionError(f"distance between points {i} and {j} must be positive")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if d[i, k] > d[i, j] + d[j, k] + tol:
                    raise ConstructionError(
                        f"triangle inequality fails on ({i}, {j}, {k}): "
                        f"{d[i, k]} > {d[i, j]} + {d[j, k]}"
                    )
    return d


def make_standard_space(
    labels: Sequence[str],
    distances,
    norm: TNorm,
    name: str = "",
) -> FuzzySpace:
    """Space with pair values t/(t+d) induced by a classical metric."""
    labels = tuple(labels)
    d = validate_distance_matrix(distances)
    if d.shape[0] != len(labels):
        raise ConstructionError("label count does not match the distance matrix")
    pairs = tuple(
        Standard(float(d[i, j]))
        for i in range(len(labels))
        for j in range(i + 1, len(labels))
    )
    return FuzzySpace(name, labels, _validate_norm(norm), pairs)


def make_stationary_space(
    labels: Sequence[str],
    values,
    norm: TNorm,
    name: str = "",
) -> FuzzySpace:
    """Space with t-independent pair values; the triangle axiom is *not* checked here."""
    labels = tuple(labels)
    v = np.asarray(values, dtype=float)
    n = len(labels)
    if v.shape != (n, n):
        raise ConstructionError("values matrix shape does not match labels")
    if np.any(np.abs(v - v.T) > TOL):
        raise ConstructionError("values matrix must be symmetric")
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            c = float(v[i, j])
            if not 0.0 <= c < 1.0:
                raise ConstructionError(
                    f"off-diagonal value for ({labels[i]}, {labels[j]}) must lie in [0, 1), got {c}"
                )
            pairs.append(Stationary(c))
    return FuzzySpace(name, labels, _validate_norm(norm), tuple(pairs))


def make_step_space(
    labels: Sequence[str],
    pair_steps: dict[tuple[int, int], Step],
    norm: TNorm,
    name: str = "",
) -> FuzzySpace:
    """Space with piecewise-constant pair values given per unordered pair {i, j}."""
    labels = tuple(labels)
    n = len(labels)
    entries: dict[tuple[int, int], Step] = {}
    for (i, j), step in pair_steps.items():
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise ConstructionError(f"bad pair indices ({i}, {j})")
        key = (min(i, j), max(i, j))
        if key in entries:
            raise ConstructionError(f"duplicate entry for pair {key}")
        if not isinstance(step, Step):
            raise ConstructionError("pair entries must be Step functions")
        entries[key] = step
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in entries:
                raise ConstructionError(f"missing entry for pair ({i}, {j})")
            pairs.append(entries[(i, j)])
    return FuzzySpace(name, labels, _validate_norm(norm), tuple(pairs))


# ---------------------------------------------------------------------------
# axiom verification


@dataclass(frozen=True)
class AxiomReport:
    """Pass/fail per axiom with the worst triangle residual and its witness.

    ``na1_residual`` is the minimum over grid t and ordered triples (i, j, k)
    of M(i,k,t) - M(i,j,t) * M(j,k,t); nonnegative residual means the
    non-Archimedean triangle inequality holds on the grid.
    """

    km1: bool
    km2: bool
    km3: bool
    km5: bool
    na1: bool
    na2: bool
    na1_residual: float
    witness: Optional[tuple[int, int, int, float]]
    grid: tuple[float, ...]
    tol: float

    @property
    def passed(self) -> bool:
        return self.km1 and self.km2 and self.km3 and self.km5 and self.na1 and self.na2

    def as_dict(self) -> dict:
        return {
            "km1": self.km1,
            "km2": self.km2,
            "km3": self.km3,
            "km5": self.km5,
            "na1": self.na1,
            "na2": self.na2,
            "na1_residual": self.na1_residual,
            "witness": list(self.witness) if self.witness is not None else None,
            "grid_size": len(self.grid),
            "tol": self.tol,
            "passed": self.passed,
        }


def check_axioms(space: FuzzySpace, grid: Optional[GridSpec] = None, tol: float = TOL) -> AxiomReport:
    """Verify the fuzzy-metric axioms on the grid merged with all breakpoints.

    Vanishing at zero, symmetry and left continuity hold structurally for the
    three representations; separation and monotonicity are checked per pair;
    the pointwise triangle inequality is checked at every grid t over all
    ordered triples.  For piecewise-constant spaces the merged grid makes the
    triangle check exact, otherwise it is grid-certified.
    """
    g = certification_grid(grid, space)
    km2 = all(attains_below_one(f) for f in space.pairs)
    # monotonicity: structural for each representation, re-checked numerically
    V = space.grid_values(g)
    na2 = bool(np.all(V[1:] - V[:-1] >= -tol)) if len(g) > 1 else True
    P = space.norm.array(V[:, :, :, None], V[:, None, :, :])
    R = V[:, :, None, :] - P
    worst = float(R.min())
    na1 = worst >= -tol
    witness = None
    if not na1:
        flat = int(np.argmin(R))
        tpos, i, j, k = np.unravel_index(flat, R.shape)
        witness = (int(i), int(j), int(k), float(g.values[tpos]))
    return AxiomReport(
        km1=True,
        km2=km2,
        km3=True,
        km5=True,
        na1=na1,
        na2=na2,
        na1_residual=worst,
        witness=witness,
        grid=g.values,
        tol=tol,
    )


def t_diameter(space: FuzzySpace, t: float) -> float:
    """Minimum pair value at scale t; 1 for a single point."""
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t!r}")
    if space.n == 1:
        return 1.0
    return min(f.eval(t) for f in space.pairs)


def diameter_fn(space: FuzzySpace, grid: Optional[GridSpec] = None) -> ValueFn:
    """The map s -> t_diameter(space, s) as a value function.

    Exact for all-Standard and all-steplike spaces; otherwise the step lower
    envelope on the certification grid (sound from below).
    """
    if space.n == 1:
        return ONE
    g = certification_grid(grid, space)
    return vf_min(list(space.pairs), grid=g.values)


# ---------------------------------------------------------------------------
# isometry


def is_isometric(
    a: FuzzySpace,
    b: FuzzySpace,
    grid: Optional[GridSpec] = None,
    tol: float = TOL,
) -> Optional[tuple[int, ...]]:
    """Permutation matching all pair values on the grid, or None.

    The comparison grid merges both spaces' breakpoints, so piecewise-constant
    spaces are compared exactly; analytic entries are grid-certified.
    """
    if a.norm.kind != b.norm.kind:
        raise DomainError("isometry testing requires the same t-norm kind")
    if a.n != b.n:
        return None
    g = certification_grid(grid, a, b)
    Va = a.grid_values(g)
    Vb = b.grid_values(g)
    n = a.n

    def extend(partial: list[int], used: set[int]) -> Optional[list[int]]:
        i = len(partial)
        if i == n:
            return partial
        for cand in range(n):
            if cand in used:
                continue
            ok = True
            for j, pj in enumerate(partial):
                if np.max(np.abs(Va[:, i, j] - Vb[:, cand, pj])) > tol:
                    ok = False
                    break
            if ok:
                res = extend(partial + [cand], used | {cand})
                if res is not None:
                    return res
        return None

    res = extend([], set())
    return tuple(res) if res is not None else None
