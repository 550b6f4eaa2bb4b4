"""Admissible non-Archimedean metrics on disjoint unions of two finite spaces.

The two constructions are the constant gluing (every cross similarity equals a
shared floor function below both t-diameters) and the matched-net gluing
(cross similarities routed through paired nets, spliced at a persistence
width below the working scale).  Every returned union re-certifies the full
axiom suite on its certification grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import ConstructionError, DomainError, HypothesisError
from .grids import GridSpec
from .hausdorff import hausdorff_fuzzy
from .space import AxiomReport, FuzzySpace, check_axioms, certification_grid
from .util import TOL, geq, gt_strict, require_positive, require_unit
from .valuefn import (
    ONE,
    Standard,
    ValueFn,
    is_steplike,
    materialize_exact,
    vf_breakpoints,
    vf_min,
)


@dataclass(frozen=True)
class UnionMetric:
    """Two spaces plus a cross matrix of value functions (admissible by storage).

    Union indexing: 0..n_left-1 are left points, n_left.. are right points.
    """

    left: FuzzySpace
    right: FuzzySpace
    cross: tuple[tuple[ValueFn, ...], ...]

    def __post_init__(self):
        if self.left.norm.kind != self.right.norm.kind:
            raise ConstructionError("both parts must share the t-norm kind")
        if len(self.cross) != self.left.n or any(
            len(row) != self.right.n for row in self.cross
        ):
            raise ConstructionError("cross matrix shape must be n_left x n_right")

    @property
    def n_left(self) -> int:
        return self.left.n

    @property
    def n_right(self) -> int:
        return self.right.n

    def cross_value(self, p: int, q: int, t: float) -> float:
        return self.cross[p][q].eval(t)

    def value(self, i: int, j: int, t: float) -> float:
        nl = self.n_left
        if i < nl and j < nl:
            return self.left.value(i, j, t)
        if i >= nl and j >= nl:
            return self.right.value(i - nl, j - nl, t)
        if i < nl:
            return self.cross[i][j - nl].eval(t)
        return self.cross[j][i - nl].eval(t)

    def as_space(self) -> FuzzySpace:
        return _union_space(self)

    def left_indices(self) -> tuple[int, ...]:
        return tuple(range(self.n_left))

    def right_indices(self) -> tuple[int, ...]:
        return tuple(range(self.n_left, self.n_left + self.n_right))


@lru_cache(maxsize=256)
def _union_space(u: UnionMetric) -> FuzzySpace:
    labels = tuple(f"L.{l}" for l in u.left.labels) + tuple(f"R.{l}" for l in u.right.labels)
    nl, nr = u.n_left, u.n_right
    n = nl + nr
    pairs: list[ValueFn] = []
    for i in range(n):
        for j in range(i + 1, n):
            if j < nl:
                pairs.append(u.left.entry(i, j))
            elif i >= nl:
                pairs.append(u.right.entry(i - nl, j - nl))
            else:
                pairs.append(u.cross[i][j - nl])
    return FuzzySpace("", labels, u.left.norm, tuple(pairs))


def validate_union(u: UnionMetric, grid: Optional[GridSpec] = None, tol: float = TOL) -> AxiomReport:
    """Full axiom check over all points of the union on the certification grid."""
    return check_axioms(u.as_space(), grid, tol=tol)


def union_hausdorff(u: UnionMetric, t: float) -> float:
    """Hausdorff fuzzy distance between the two full parts inside the union."""
    space = u.as_space()
    return hausdorff_fuzzy(space, u.left_indices(), u.right_indices(), t)


def floor_envelope(x: FuzzySpace, y: FuzzySpace, grid: Optional[GridSpec] = None) -> ValueFn:
    """Pointwise min of both t-diameters, as a value function.

    Exact when the pair entries share a representation family; otherwise a
    step lower envelope on the certification grid (sound from below).
    """
    fns = list(x.pairs) + list(y.pairs)
    if not fns:
        return ONE
    g = certification_grid(grid, x, y)
    return vf_min(fns, grid=g.values)


def _check_floor(
    x: FuzzySpace,
    y: FuzzySpace,
    c: ValueFn,
    grid: GridSpec,
    tol: float,
) -> None:
    fns = list(x.pairs) + list(y.pairs)
    if not fns:
        return
    for s in grid:
        bound = min(f.eval(s) for f in fns)
        if c.eval(s) > bound + tol:
            raise HypothesisError(
                "floor",
                where=s,
                detail=f"floor value {c.eval(s)} exceeds min t-diameter {bound}",
            )


def glue_constant(
    x: FuzzySpace,
    y: FuzzySpace,
    c: ValueFn,
    grid: Optional[GridSpec] = None,
    tol: float = TOL,
) -> UnionMetric:
    """Union metric whose every cross similarity equals the floor function c.

    Requires c(s) <= min of both t-diameters at every certification-grid point
    (exact on step breakpoints).  The output re-certifies the union axioms.
    """
    if x.norm.kind != y.norm.kind:
        raise DomainError("both spaces must share the t-norm kind")
    g = certification_grid(grid, x, y, extra=vf_breakpoints(c))
    _check_floor(x, y, c, g, tol)
    cross = tuple(tuple(c for _ in range(y.n)) for _ in range(x.n))
    u = UnionMetric(x, y, cross)
    report = validate_union(u, g, tol=tol)
    if not report.passed:
        raise ConstructionError(f"constant gluing fails the union axiom check: {report.as_dict()}")
    return u


# ---------------------------------------------------------------------------
# persistence width


def persistence_delta(
    x: FuzzySpace,
    y: FuzzySpace,
    px: int,
    px2: int,
    py: int,
    py2: int,
    t: float,
    eps: float,
    tol: float = 1e-9,
) -> float:
    """Largest width d such that the mutual (1-eps) bounds persist on [t-d, t].

    The bounds are M_X(px, px2, s) >= M_Y(py, py2, s) * (1 - eps) and the
    symmetric one.  Piecewise-constant pairs give the exact distance down to
    the last breakpoint below t; pairs involving an analytic entry are solved
    by bisection to ``tol``; constant pairs return t/2.
    """
    require_positive(t, "t")
    require_unit(eps, "eps")
    if x.norm.kind != y.norm.kind:
        raise DomainError("both spaces must share the t-norm kind")
    fX = x.entry(px, px2)
    fY = y.entry(py, py2)
    norm = x.norm
    one_minus = 1.0 - eps

    def conds_at(s: float) -> bool:
        a = fX.eval(s)
        b = fY.eval(s)
        return geq(a, norm(b, one_minus)) and geq(b, norm(a, one_minus))

    if not conds_at(t):
        raise HypothesisError("(a)/(b)", where=t, detail="mutual bounds fail at t")

    bps = sorted(set(vf_breakpoints(fX)) | set(vf_breakpoints(fY)))
    if is_steplike(fX) and is_steplike(fY):
        below = [b for b in bps if b < t]
        if not below:
            return t / 2.0
        b = max(below)
        delta = t - b
        # both functions are constant on (b, t]; include b itself only if the
        # bounds survive the jump
        return delta if conds_at(b) else delta * (1.0 - 1e-12)

    def predicate(delta: float) -> bool:
        lo = t - delta
        samples = list(np.linspace(lo, t, 33))
        samples.extend(b for b in bps if lo <= b <= t)
        return all(conds_at(s) for s in samples)

    if predicate(t):
        return t
    lo_d, hi_d = 0.0, t
    while hi_d - lo_d > tol:
        mid = 0.5 * (lo_d + hi_d)
        if predicate(mid):
            lo_d = mid
        else:
            hi_d = mid
    if lo_d <= 0.0:
        raise HypothesisError(
            "(a)/(b)",
            where=t,
            detail="bounds hold at t with no positive persistence width (exact tie)",
        )
    return lo_d


# ---------------------------------------------------------------------------
# matched nets


@dataclass(frozen=True)
class MatchedNets:
    """Positionally aligned nets in two spaces with verification flags.

    ``factor`` is the multiplier used for the per-pair mutual-bound flags;
    net flags record strict ball coverage at eps and at eps*eps*eps.
    """

    t: float
    eps: float
    left: tuple[int, ...]
    right: tuple[int, ...]
    factor: float
    cond_a: tuple[tuple[bool, ...], ...]
    cond_b: tuple[tuple[bool, ...], ...]
    strict_a: tuple[tuple[bool, ...], ...]
    strict_b: tuple[tuple[bool, ...], ...]
    left_net_eps: bool
    right_net_eps: bool
    left_net_eps3: bool
    right_net_eps3: bool

    def __post_init__(self):
        if len(self.left) != len(self.right) or not self.left:
            raise ConstructionError("matched nets must be nonempty and equally long")

    @property
    def size(self) -> int:
        return len(self.left)

    def all_conditions_hold(self) -> bool:
        return all(all(row) for row in self.cond_a) and all(all(row) for row in self.cond_b)

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "eps": self.eps,
            "left": list(self.left),
            "right": list(self.right),
            "factor": self.factor,
            "cond_a": [list(r) for r in self.cond_a],
            "cond_b": [list(r) for r in self.cond_b],
            "strict_a": [list(r) for r in self.strict_a],
            "strict_b": [list(r) for r in self.strict_b],
            "left_net_eps": self.left_net_eps,
            "right_net_eps": self.right_net_eps,
            "left_net_eps3": self.left_net_eps3,
            "right_net_eps3": self.right_net_eps3,
        }


def _is_net(space: FuzzySpace, indices: Sequence[int], t: float, threshold: float, tol: float) -> bool:
    pts = set(indices)
    return all(
        any(gt_strict(space.value(p, q, t), threshold, tol) for q in pts)
        for p in range(space.n)
    )


def match_nets(
    x: FuzzySpace,
    y: FuzzySpace,
    t: float,
    eps: float,
    left: Sequence[int],
    right: Sequence[int],
    factor: Optional[float] = None,
    tol: float = TOL,
) -> MatchedNets:
    """Pair two index lists positionally and record all verification flags.

    ``factor`` defaults to (1-eps)*(1-eps), the multiplier appearing in the
    necessary-condition direction; the sufficient-condition direction
    re-verifies its own single-factor bounds over all scales >= t.
    """
    require_positive(t, "t")
    require_unit(eps, "eps")
    if eps == 0.0 or eps == 1.0:
        raise DomainError("eps must lie strictly between 0 and 1")
    norm = x.norm
    if factor is None:
        factor = norm(1.0 - eps, 1.0 - eps)
    left = tuple(int(i) for i in left)
    right = tuple(int(i) for i in right)
    n = len(left)
    if n == 0 or len(right) != n:
        raise DomainError("nets must be nonempty and equally long")
    mx = [[x.value(left[i], left[j], t) for j in range(n)] for i in range(n)]
    my = [[y.value(right[i], right[j], t) for j in range(n)] for i in range(n)]
    cond_a = tuple(
        tuple(geq(mx[i][j], norm(my[i][j], factor), tol) for j in range(n)) for i in range(n)
    )
    cond_b = tuple(
        tuple(geq(my[i][j], norm(mx[i][j], factor), tol) for j in range(n)) for i in range(n)
    )
    strict_a = tuple(
        tuple(gt_strict(mx[i][j], norm(my[i][j], factor), tol) for j in range(n)) for i in range(n)
    )
    strict_b = tuple(
        tuple(gt_strict(my[i][j], norm(mx[i][j], factor), tol) for j in range(n)) for i in range(n)
    )
    thr1 = 1.0 - eps
    thr3 = norm(norm(thr1, thr1), thr1)
    return MatchedNets(
        t=t,
        eps=eps,
        left=left,
        right=right,
        factor=factor,
        cond_a=cond_a,
        cond_b=cond_b,
        strict_a=strict_a,
        strict_b=strict_b,
        left_net_eps=_is_net(x, left, t, thr1, tol),
        right_net_eps=_is_net(y, right, t, thr1, tol),
        left_net_eps3=_is_net(x, left, t, thr3, tol),
        right_net_eps3=_is_net(y, right, t, thr3, tol),
    )


def extract_matched_nets(
    u: UnionMetric,
    t: float,
    eps: float,
    net_left: Sequence[int],
    tol: float = TOL,
) -> MatchedNets:
    """From a close union metric, pair each left net point with its best partner.

    Requires the union's Hausdorff value at t to exceed 1 - eps strictly and
    ``net_left`` to be a (t, eps)-net on the left.  Partners are the argmax of
    the cross similarity (ties broken by lowest index); the result records
    whether the right side is a (t, eps*eps*eps)-net and whether the mutual
    bounds with factor (1-eps)*(1-eps) hold for every pair.
    """
    require_positive(t, "t")
    require_unit(eps, "eps")
    h = union_hausdorff(u, t)
    if not gt_strict(h, 1.0 - eps, tol):
        raise HypothesisError(
            "H > 1-eps", where=t, detail=f"Hausdorff value {h} does not exceed {1.0 - eps}"
        )
    if not _is_net(u.left, net_left, t, 1.0 - eps, tol):
        raise DomainError("net_left is not a (t, eps)-net in the left space")
    right = []
    for p in net_left:
        best_q, best_v = 0, -1.0
        for q in range(u.n_right):
            v = u.cross_value(p, q, t)
            if v > best_v:
                best_q, best_v = q, v
        right.append(best_q)
    return match_nets(u.left, u.right, t, eps, tuple(net_left), tuple(right), tol=tol)


# ---------------------------------------------------------------------------
# the matched-net gluing


def _cross_points(
    x: FuzzySpace,
    y: FuzzySpace,
    floor: ValueFn,
    grid: GridSpec,
    splice: float,
    t: float,
) -> list[float]:
    exact = x.all_steplike() and y.all_steplike() and is_steplike(floor)
    pts: set[float] = set(x.breakpoints()) | set(y.breakpoints()) | set(vf_breakpoints(floor))
    pts.add(t)
    if splice > 0.0:
        pts.add(splice)
    if not exact:
        pts.update(grid.values)
        # a far sample where every analytic entry has converged within ~1e-13,
        # so the frozen step tail stays inside the certification tolerance
        max_d = max(
            (f.d for f in (*x.pairs, *y.pairs, floor) if isinstance(f, Standard)),
            default=1.0,
        )
        far = max(1e16, max_d * 1e14, t * 10.0, max(pts, default=1.0) * 2.0)
        pts.add(far)
    return sorted(p for p in pts if p > 0.0)


def glue_via_nets(
    x: FuzzySpace,
    y: FuzzySpace,
    nets: MatchedNets,
    delta: float,
    floor: ValueFn,
    grid: Optional[GridSpec] = None,
    tol: float = TOL,
) -> UnionMetric:
    """Union metric routing cross similarities through the matched nets.

    Below the splice scale t - delta every cross value is
    floor*floor*(1-eps); above it, the best net detour
    max_j M_X(p, left_j, s) * M_Y(q, right_j, s), damped by (1-eps).

    Hypotheses verified before construction: (1) the floor stays below both
    t-diameters; (2) both sides are (t, eps)-nets; (a)/(b) the single-factor
    mutual bounds hold at every certification-grid scale >= t.  The output is
    re-certified against the full union axiom suite and must beat
    (1-eps)*(1-eps) in Hausdorff value at t.
    """
    if x.norm.kind != y.norm.kind:
        raise DomainError("both spaces must share the t-norm kind")
    t, eps = nets.t, nets.eps
    require_positive(t, "t")
    if not 0.0 < delta <= t:
        raise DomainError(f"delta must lie in (0, t], got {delta!r}")
    norm = x.norm
    one_minus = 1.0 - eps
    g = certification_grid(grid, x, y, extra=(t, t - delta, *vf_breakpoints(floor)))

    _check_floor(x, y, floor, g, tol)
    if not nets.left_net_eps:
        raise HypothesisError("(2)", detail="left side is not a (t, eps)-net")
    if not nets.right_net_eps:
        raise HypothesisError("(2)", detail="right side is not a (t, eps)-net")

    # single-factor mutual bounds at every grid scale >= t
    s_check = [s for s in g.values if s >= t]
    for i in range(nets.size):
        for j in range(nets.size):
            fx = x.entry(nets.left[i], nets.left[j])
            fy = y.entry(nets.right[i], nets.right[j])
            for s in s_check:
                a, b = fx.eval(s), fy.eval(s)
                if not geq(a, norm(b, one_minus), tol):
                    raise HypothesisError("(a)", where=(i, j, s))
                if not geq(b, norm(a, one_minus), tol):
                    raise HypothesisError("(b)", where=(i, j, s))

    splice = t - delta
    points = _cross_points(x, y, floor, g, splice, t)
    cross_rows = []
    for p in range(x.n):
        row = []
        for q in range(y.n):
            fxs = [x.entry(p, nets.left[i]) for i in range(nets.size)]
            fys = [y.entry(q, nets.right[i]) for i in range(nets.size)]

            def at(s, fxs=fxs, fys=fys):
                if s <= splice:
                    c = floor.eval(s)
                    return norm(norm(c, c), one_minus)
                best = max(norm(fx.eval(s), fy.eval(s)) for fx, fy in zip(fxs, fys))
                return norm(best, one_minus)

            def after(s, fxs=fxs, fys=fys):
                if s < splice:
                    c = floor.right_limit(s)
                    return norm(norm(c, c), one_minus)
                best = max(
                    norm(fx.right_limit(s), fy.right_limit(s)) for fx, fy in zip(fxs, fys)
                )
                return norm(best, one_minus)

            row.append(materialize_exact(at, after, points))
        cross_rows.append(tuple(row))
    u = UnionMetric(x, y, tuple(cross_rows))

    report = validate_union(u, g, tol=tol)
    if not report.passed:
        raise ConstructionError(
            f"matched-net gluing fails the union axiom check: {report.as_dict()}"
        )
    h = union_hausdorff(u, t)
    threshold = norm(one_minus, one_minus)
    if not gt_strict(h, threshold, tol):
        raise ConstructionError(
            f"matched-net gluing reaches Hausdorff value {h}, not above {threshold}"
        )
    return u


def attempt_net_gluing(
    x: FuzzySpace,
    y: FuzzySpace,
    t: float,
    eps: float,
    left: Sequence[int],
    right: Sequence[int],
    floor: Optional[ValueFn] = None,
    grid: Optional[GridSpec] = None,
    tol: float = TOL,
) -> UnionMetric:
    """Convenience pipeline: match the nets, take the worst pairwise persistence
    width, and build the matched-net gluing."""
    nets = match_nets(x, y, t, eps, left, right, tol=tol)
    delta = t
    for i in range(nets.size):
        for j in range(i, nets.size):
            delta = min(
                delta,
                persistence_delta(
                    x, y, nets.left[i], nets.left[j], nets.right[i], nets.right[j], t, eps
                ),
            )
    if floor is None:
        floor = floor_envelope(x, y, grid)
    return glue_via_nets(x, y, nets, delta, floor, grid, tol=tol)


# ---------------------------------------------------------------------------
# near-equal values dominate each other after damping


def mutual_eps_domination(a: float, b: float, k: float, eps: float, norm) -> bool:
    """Whether a >= b*(1-eps) and b >= a*(1-eps), for values within k*eps.

    Callers invoke this under the premise |a - b| < k*eps with 0 < k <
    min(a, b) < 1; for norms with the damping property a - a*b >= a*(1-b) the
    conclusion always holds then.  Norms without that property are rejected.
    """
    require_unit(a, "a")
    require_unit(b, "b")
    require_unit(k, "k")
    require_unit(eps, "eps")
    if not (0.0 < eps < 1.0):
        raise DomainError("eps must lie strictly between 0 and 1")
    if not (0.0 < k < min(a, b) < 1.0):
        raise DomainError("need 0 < k < min(a, b) < 1")
    known = norm.has_tn1_known()
    if known is not True:
        raise DomainError(f"t-norm {norm.kind!r} lacks the required damping property")
    one_minus = 1.0 - eps
    return geq(a, norm(b, one_minus)) and geq(b, norm(a, one_minus))
