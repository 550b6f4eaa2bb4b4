"""Families of spaces and the constructive subsequence-extraction pipeline.

Given a family with a shared positive diameter floor, uniformly bounded cover
numbers and registered nets, the pigeonhole step groups spaces whose net
similarity matrices agree cell-wise; within a group the mutual damped bounds
hold, so the matched-net gluing certifies pairwise closeness in the GH fuzzy
distance.  The module also houses the two reference families showing the
hypotheses cannot be dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .covering import cover_number, find_net, metric_cover_number, uniform_cover_bound
from .errors import ConstructionError, DomainError, HypothesisError
from .ghdist import DistanceMatrix, gh_fuzzy_lower_bound, gh_fuzzy_upper_bound
from .gluing import attempt_net_gluing, union_hausdorff
from .grids import GridSpec
from .space import (
    FuzzySpace,
    certification_grid,
    make_standard_space,
    make_step_space,
    t_diameter,
)
from .tnorm import TNorm
from .util import TOL, geq, gt_strict, require_positive, require_unit
from .valuefn import Standard, Stationary, Step, ValueFn, vf_breakpoints


@dataclass
class SequenceFamily:
    """Ordered spaces with a shared t-norm, an optional floor and registered nets.

    ``nets`` maps (t, eps) to one index tuple per space; all tuples under one
    key have equal length and each is a verified (t, eps)-net.
    """

    spaces: tuple[FuzzySpace, ...]
    floor: Optional[ValueFn] = None
    nets: dict = field(default_factory=dict)

    def __post_init__(self):
        self.spaces = tuple(self.spaces)
        if not self.spaces:
            raise ConstructionError("family must contain at least one space")
        kinds = {sp.norm.kind for sp in self.spaces}
        if len(kinds) != 1:
            raise ConstructionError(f"family mixes t-norm kinds: {sorted(kinds)}")

    @property
    def norm(self) -> TNorm:
        return self.spaces[0].norm

    def nets_for(self, t: float, eps: float) -> tuple[tuple[int, ...], ...]:
        key = (float(t), float(eps))
        if key not in self.nets:
            raise DomainError(f"no nets registered for (t, eps) = {key}")
        return self.nets[key]


def register_nets(
    family: SequenceFamily,
    t: float,
    eps: float,
    indices: Optional[Sequence[Sequence[int]]] = None,
    exact_limit: int = 15,
    tol: float = TOL,
) -> int:
    """Register per-space (t, eps)-nets of a common length and return it.

    When ``indices`` is omitted, minimal nets are computed and shorter ones
    are padded to the common length with unused points in index order,
    repeating the first net point once a space runs out of points; padding
    never breaks the net property.
    """
    require_positive(t, "t")
    require_unit(eps, "eps")
    if indices is None:
        raw = [find_net(sp, t, eps, exact_limit=exact_limit, tol=tol).indices for sp in family.spaces]
    else:
        raw = [tuple(int(i) for i in idx) for idx in indices]
        if len(raw) != len(family.spaces):
            raise DomainError("one net per space required")
    size = max(len(r) for r in raw)
    padded_list = []
    for sp, r in zip(family.spaces, raw):
        unused = [i for i in range(sp.n) if i not in set(r)]
        fill = tuple(unused[: size - len(r)])
        fill = fill + (r[0],) * (size - len(r) - len(fill))
        padded_list.append(tuple(r) + fill)
    padded = tuple(padded_list)
    threshold = 1.0 - eps
    for sp, net in zip(family.spaces, padded):
        for p in range(sp.n):
            if not any(gt_strict(sp.value(p, q, t), threshold, tol) for q in set(net)):
                raise ConstructionError(
                    f"registered indices are not a (t, eps)-net in space {sp.name!r}"
                )
    family.nets[(float(t), float(eps))] = padded
    return size


# ---------------------------------------------------------------------------
# hypothesis checks


@dataclass(frozen=True)
class FloorReport:
    passed: bool
    positive: bool
    below_diameters: bool
    worst_slack: float
    violations: tuple[tuple[int, float, float, float], ...]  # (space, s, floor, diam)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "positive": self.positive,
            "below_diameters": self.below_diameters,
            "worst_slack": self.worst_slack,
            "violations": [list(v) for v in self.violations[:20]],
        }


def check_diameter_floor(
    family: SequenceFamily,
    grid: Optional[GridSpec] = None,
    tol: float = TOL,
) -> FloorReport:
    """Verify 0 < floor(s) <= t-diameter of every space at every grid scale."""
    if family.floor is None:
        raise DomainError("family has no floor function registered")
    c = family.floor
    g = certification_grid(grid, *family.spaces, extra=vf_breakpoints(c))
    positive = True
    below = True
    worst = math.inf
    violations: list[tuple[int, float, float, float]] = []
    for s in g:
        c_val = c.eval(s)
        if not c_val > 0.0:
            positive = False
            violations.append((-1, float(s), c_val, math.nan))
        for n, sp in enumerate(family.spaces):
            d_val = t_diameter(sp, s)
            slack = d_val - c_val
            worst = min(worst, slack)
            if slack < -tol:
                below = False
                violations.append((n, float(s), c_val, d_val))
    return FloorReport(
        passed=positive and below,
        positive=positive,
        below_diameters=below,
        worst_slack=worst,
        violations=tuple(violations),
    )


def default_ratio_grid(family: SequenceFamily, t: float, count: int = 32) -> tuple[float, ...]:
    """Scales above t where the ratio condition is checked: a log sweep of
    (t, 100t] merged with every step breakpoint above t and a tail point."""
    vals = set(np.logspace(math.log10(t), math.log10(100.0 * t), count + 1)[1:])
    bps = [b for sp in family.spaces for b in sp.breakpoints() if b > t]
    vals.update(bps)
    if bps:
        vals.add(max(bps) * 1.5 + 1.0)
    return tuple(sorted(vals))


@dataclass(frozen=True)
class RatioReport:
    passed: bool
    product_form_passed: Optional[bool]
    worst_margin: float
    witnesses: tuple[tuple[int, int, int, int, float], ...]  # (n, m, i, j, s)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "product_form_passed": self.product_form_passed,
            "worst_margin": self.worst_margin,
            "witnesses": [list(w) for w in self.witnesses[:20]],
        }


def check_ratio_condition(
    family: SequenceFamily,
    t: float,
    eps: float,
    s_grid: Optional[Sequence[float]] = None,
    tol: float = TOL,
) -> RatioReport:
    """Monotone-ratio condition between registered net similarities.

    For every ordered space pair (n, m), net positions (i, j) and scale s > t
    with M_n(s) < M_m(s), the damped ratio at s must not drop below its value
    at t.  For the product norm the undamped ratio form is checked as well.
    """
    nets = family.nets_for(t, eps)
    norm = family.norm
    one_minus = 1.0 - eps
    if s_grid is None:
        s_grid = default_ratio_grid(family, t)
    s_vals = [s for s in s_grid if s > t]
    size = len(nets[0])
    count = len(family.spaces)
    vals_t = np.empty((count, size, size))
    for n, (sp, net) in enumerate(zip(family.spaces, nets)):
        for i in range(size):
            for j in range(size):
                vals_t[n, i, j] = sp.value(net[i], net[j], t)
    if np.any(vals_t <= tol):
        raise DomainError("zero net similarity at t; the diameter floor must be violated")
    vals_s = np.empty((count, size, size, len(s_vals)))
    for n, (sp, net) in enumerate(zip(family.spaces, nets)):
        for i in range(size):
            for j in range(size):
                vals_s[n, i, j, :] = sp.entry(net[i], net[j]).eval_array(np.asarray(s_vals))

    is_product = norm.kind == "product"
    passed = True
    product_passed: Optional[bool] = True if is_product else None
    worst = math.inf
    witnesses: list[tuple[int, int, int, int, float]] = []
    for n in range(count):
        for m in range(count):
            if n == m:
                continue
            for i in range(size):
                for j in range(size):
                    a_t, b_t = vals_t[n, i, j], vals_t[m, i, j]
                    den_t = norm(b_t, one_minus)
                    if den_t <= tol:
                        raise DomainError("zero damped denominator at t")
                    base = a_t / den_t
                    base_plain = a_t / b_t
                    for s_pos, s in enumerate(s_vals):
                        a_s = vals_s[n, i, j, s_pos]
                        b_s = vals_s[m, i, j, s_pos]
                        if not gt_strict(b_s, a_s, tol):
                            continue
                        den_s = norm(b_s, one_minus)
                        if den_s <= tol:
                            raise DomainError("zero damped denominator above t")
                        margin = a_s / den_s - base
                        worst = min(worst, margin)
                        if margin < -tol:
                            passed = False
                            witnesses.append((n, m, i, j, float(s)))
                        if is_product and a_s / b_s - base_plain < -tol:
                            product_passed = False
    return RatioReport(
        passed=passed,
        product_form_passed=product_passed,
        worst_margin=worst if worst is not math.inf else 0.0,
        witnesses=tuple(witnesses),
    )


# ---------------------------------------------------------------------------
# pigeonhole extraction


@dataclass(frozen=True)
class PigeonholeTable:
    """Integer-part matrices of net similarities and their equality groups."""

    t: float
    eps: float
    cell_width: float
    matrices: tuple[tuple[tuple[int, ...], ...], ...]
    groups: tuple[tuple[int, ...], ...]
    selected: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "eps": self.eps,
            "cell_width": self.cell_width,
            "matrices": [[list(r) for r in m] for m in self.matrices],
            "groups": [list(g) for g in self.groups],
            "selected": list(self.selected),
        }


def pigeonhole_subsequence(
    family: SequenceFamily,
    t: float,
    eps: float,
) -> tuple[PigeonholeTable, tuple[int, ...]]:
    """Group spaces by the integer parts of net similarities over the cell
    width floor(t)*eps and return the largest group.

    Equal matrices force |M_n - M_m| < cell width entry-wise, which is exactly
    the closeness the damped mutual bounds need.  Ties between groups go to
    the one containing the smallest space index.  Values landing exactly on a
    cell boundary are floored downward; near-boundary fragmentation is
    inherent to the method.
    """
    if family.floor is None:
        raise DomainError("pigeonhole extraction needs a floor function")
    nets = family.nets_for(t, eps)
    width = family.norm(family.floor.eval(t), eps)
    if not width > 0.0:
        raise DomainError(f"cell width {width} is not positive; pick a larger eps or floor")
    matrices = []
    for sp, net in zip(family.spaces, nets):
        size = len(net)
        mat = tuple(
            tuple(int(math.floor(sp.value(net[i], net[j], t) / width)) for j in range(size))
            for i in range(size)
        )
        matrices.append(mat)
    groups_by_matrix: dict = {}
    for n, mat in enumerate(matrices):
        groups_by_matrix.setdefault(mat, []).append(n)
    groups = tuple(tuple(g) for g in groups_by_matrix.values())
    selected = min(groups, key=lambda g: (-len(g), g[0]))
    # soundness: equal integer parts bound the similarity gap by the cell width
    for a_pos in range(len(selected)):
        for b_pos in range(a_pos + 1, len(selected)):
            na, nb = selected[a_pos], selected[b_pos]
            size = len(nets[na])
            for i in range(size):
                for j in range(size):
                    gap = abs(
                        family.spaces[na].value(nets[na][i], nets[na][j], t)
                        - family.spaces[nb].value(nets[nb][i], nets[nb][j], t)
                    )
                    if not gap < width:
                        raise AssertionError("pigeonhole grouping lost its width guarantee")
    table = PigeonholeTable(
        t=t,
        eps=eps,
        cell_width=width,
        matrices=tuple(matrices),
        groups=groups,
        selected=selected,
    )
    return table, selected


@dataclass(frozen=True)
class GroupCertificate:
    """Achieved Hausdorff values of the pairwise gluings within a group."""

    t: float
    eps: float
    threshold: float
    h_values: tuple[tuple[int, int, float], ...]
    failures: tuple[tuple[int, int, str], ...]

    @property
    def passed(self) -> bool:
        return not self.failures and all(h > self.threshold for _, _, h in self.h_values)

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "eps": self.eps,
            "threshold": self.threshold,
            "h_values": [list(v) for v in self.h_values],
            "failures": [list(f) for f in self.failures],
            "passed": self.passed,
        }


def certify_group(
    family: SequenceFamily,
    group: Sequence[int],
    t: float,
    eps: float,
    grid: Optional[GridSpec] = None,
    tol: float = TOL,
) -> GroupCertificate:
    """Build the matched-net gluing for every pair in the group and record the
    achieved Hausdorff values; each must exceed (1-eps)*(1-eps)."""
    if family.floor is None:
        raise DomainError("certification needs a floor function")
    nets = family.nets_for(t, eps)
    norm = family.norm
    threshold = norm(1.0 - eps, 1.0 - eps)
    h_values: list[tuple[int, int, float]] = []
    failures: list[tuple[int, int, str]] = []
    group = sorted(int(g) for g in group)
    for a_pos in range(len(group)):
        for b_pos in range(a_pos + 1, len(group)):
            na, nb = group[a_pos], group[b_pos]
            try:
                u = attempt_net_gluing(
                    family.spaces[na],
                    family.spaces[nb],
                    t,
                    eps,
                    nets[na],
                    nets[nb],
                    floor=family.floor,
                    grid=grid,
                    tol=tol,
                )
            except (HypothesisError, ConstructionError, DomainError) as exc:
                failures.append((na, nb, str(exc)))
                continue
            h_values.append((na, nb, union_hausdorff(u, t)))
    return GroupCertificate(
        t=t,
        eps=eps,
        threshold=threshold,
        h_values=tuple(h_values),
        failures=tuple(failures),
    )


def diagonal_subsequence(
    selector: Callable[[float, float, Optional[tuple[int, ...]]], Sequence[int]],
    depth: int,
) -> tuple[int, ...]:
    """Diagonal of nested refinements at scales t = eps = 1/level.

    ``selector(t, eps, previous)`` must return a subsequence of ``previous``
    (any index sequence at the first level) of length at least the level
    number; the diagonal collects the level-th element of each level.
    """
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    diagonal: list[int] = []
    prev: Optional[tuple[int, ...]] = None
    for level in range(1, depth + 1):
        out = tuple(int(v) for v in selector(1.0 / level, 1.0 / level, prev))
        if prev is not None and not _is_subsequence(out, prev):
            raise DomainError(f"level {level} output is not a subsequence of the previous level")
        if len(out) < level:
            raise DomainError(f"level {level} output is shorter than the level index")
        diagonal.append(out[level - 1])
        prev = out
    return tuple(diagonal)


def _is_subsequence(sub: Sequence[int], seq: Sequence[int]) -> bool:
    pos = 0
    for v in sub:
        while pos < len(seq) and seq[pos] != v:
            pos += 1
        if pos == len(seq):
            return False
        pos += 1
    return True


# ---------------------------------------------------------------------------
# stationary pipeline


@dataclass(frozen=True)
class StationaryReport:
    passed: bool
    failures: tuple[str, ...]
    floor_value: float
    cover_bound: Optional[int]
    group: tuple[int, ...]
    certificate: Optional[GroupCertificate]

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "failures": list(self.failures),
            "floor_value": self.floor_value,
            "cover_bound": self.cover_bound,
            "group": list(self.group),
            "certificate": self.certificate.as_dict() if self.certificate else None,
        }


def check_stationary_hypotheses(
    family: SequenceFamily,
    eps: float,
    exact_limit: int = 15,
    tol: float = TOL,
) -> StationaryReport:
    """Verify the stationary-family hypotheses and run the extraction pipeline.

    Checks: every space is stationary and the norm has the damping property;
    the best constant floor (the least diameter) is positive; a uniform cover
    bound exists.  Stationary values are scale-free, so the pipeline runs at
    t = 1.
    """
    require_unit(eps, "eps")
    failures: list[str] = []
    if family.norm.has_tn1_known() is not True:
        failures.append(f"t-norm {family.norm.kind!r} lacks the damping property")
    for n, sp in enumerate(family.spaces):
        if not all(isinstance(f, Stationary) for f in sp.pairs):
            failures.append(f"space {n} ({sp.name!r}) is not stationary")
    best_c = min(t_diameter(sp, 1.0) for sp in family.spaces)
    if not best_c > 0.0:
        failures.append("some space has zero diameter value; no positive constant floor exists")
    cover_bound: Optional[int] = None
    if not failures:
        cover_bound = uniform_cover_bound(family.spaces, eps, 1.0, exact_limit=exact_limit)
    if failures:
        return StationaryReport(False, tuple(failures), best_c, cover_bound, (), None)

    pipeline = SequenceFamily(family.spaces, floor=Stationary(best_c))
    register_nets(pipeline, 1.0, eps, exact_limit=exact_limit, tol=tol)
    _, group = pigeonhole_subsequence(pipeline, 1.0, eps)
    cert = certify_group(pipeline, group, 1.0, eps, tol=tol)
    return StationaryReport(
        passed=cert.passed,
        failures=(),
        floor_value=best_c,
        cover_bound=cover_bound,
        group=group,
        certificate=cert,
    )


# ---------------------------------------------------------------------------
# classical-metric bridge


@dataclass(frozen=True)
class BridgeReport:
    passed: bool
    floor: FloorReport
    cover_rows: tuple[tuple[int, int, int, int], ...]  # (space, fuzzy, metric, bound)
    cover_translation_ok: bool
    cover_bound_ok: bool
    ratio: RatioReport
    t: float
    eps: float
    radius: float

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "floor": self.floor.as_dict(),
            "cover_rows": [list(r) for r in self.cover_rows],
            "cover_translation_ok": self.cover_translation_ok,
            "cover_bound_ok": self.cover_bound_ok,
            "ratio": self.ratio.as_dict(),
            "t": self.t,
            "eps": self.eps,
            "radius": self.radius,
        }


def standard_bridge_check(
    metrics: Sequence,
    bound: float,
    cover_n: Optional[Callable[[float], int]] = None,
    t: float = 1.0,
    eps: float = 0.1,
    grid: Optional[GridSpec] = None,
    exact_limit: int = 15,
    tol: float = TOL,
) -> tuple[BridgeReport, SequenceFamily]:
    """Build the product-norm standard family of the given metrics and verify
    the three extraction hypotheses against the classical data.

    The floor is s/(s+bound); ball membership translates to classical balls of
    radius eps*t/(1-eps), so fuzzy cover numbers must match classical covering
    numbers at that radius and stay below the uniform bound; the ratio
    condition holds identically for standard values and is re-verified on the
    grid.  Failures are reported, not raised.
    """
    require_positive(bound, "bound")
    require_positive(t, "t")
    require_unit(eps, "eps")
    mats = [m if isinstance(m, DistanceMatrix) else DistanceMatrix.from_array(m) for m in metrics]
    if not mats:
        raise DomainError("at least one metric required")
    spaces = tuple(
        make_standard_space(
            [f"p{i}" for i in range(m.n)], m.as_array(), TNorm.product(), name=f"X{k + 1}"
        )
        for k, m in enumerate(mats)
    )
    family = SequenceFamily(spaces, floor=Standard(bound))
    floor_report = check_diameter_floor(family, grid, tol=tol)

    radius = eps * t / (1.0 - eps)
    if cover_n is None:
        uniform = max(metric_cover_number(m.as_array(), radius, exact_limit) for m in mats)
        cover_n = lambda r, _u=uniform: _u
    cover_rows = []
    translation_ok = True
    bound_ok = True
    n_bound = int(cover_n(radius))
    for k, (sp, m) in enumerate(zip(spaces, mats)):
        fuzzy, _ = cover_number(sp, eps, t, exact_limit=exact_limit, tol=tol)
        classical = metric_cover_number(m.as_array(), radius, exact_limit)
        cover_rows.append((k, fuzzy, classical, n_bound))
        if fuzzy != classical:
            translation_ok = False
        if fuzzy > n_bound:
            bound_ok = False

    register_nets(family, t, eps, exact_limit=exact_limit, tol=tol)
    ratio_report = check_ratio_condition(family, t, eps, tol=tol)

    report = BridgeReport(
        passed=floor_report.passed and translation_ok and bound_ok and ratio_report.passed,
        floor=floor_report,
        cover_rows=tuple(cover_rows),
        cover_translation_ok=translation_ok,
        cover_bound_ok=bound_ok,
        ratio=ratio_report,
        t=t,
        eps=eps,
        radius=radius,
    )
    return report, family


# ---------------------------------------------------------------------------
# reference family without Cauchy subsequences


def gen_no_cauchy_family(count: int) -> SequenceFamily:
    """Two-point spaces with similarity 1/2 (even index) or 1/3 (odd index)
    up to a breakpoint that grows with the index; product norm, floor 1/3.

    Diameters alternate between two levels while the breakpoints diverge, so
    no subsequence can stay GH-close at a fixed scale.
    """
    if count < 2:
        raise DomainError("need at least two spaces")
    spaces = []
    for n in range(1, count + 1):
        level = 0.5 if n % 2 == 0 else 1.0 / 3.0
        step = Step((float(n),), (level, 1.0))
        spaces.append(
            make_step_space(["x1", "x2"], {(0, 1): step}, TNorm.product(), name=f"X{n}")
        )
    return SequenceFamily(tuple(spaces), floor=Stationary(1.0 / 3.0))


@dataclass(frozen=True)
class NoCauchyReport:
    count: int
    t: float
    eps: float
    even_value: float
    odd_value: float
    damped_requirement: float
    necessity_inequality_holds: bool
    net_sizes: tuple[int, ...]
    pair_upper_bounds: tuple[tuple[int, int, float], ...]
    max_pair_upper: float
    threshold: float
    self_lower_bound: float
    contradiction_confirmed: bool

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "t": self.t,
            "eps": self.eps,
            "even_value": self.even_value,
            "odd_value": self.odd_value,
            "damped_requirement": self.damped_requirement,
            "necessity_inequality_holds": self.necessity_inequality_holds,
            "net_sizes": list(self.net_sizes),
            "pair_upper_bounds": [list(p) for p in self.pair_upper_bounds],
            "max_pair_upper": self.max_pair_upper,
            "threshold": self.threshold,
            "self_lower_bound": self.self_lower_bound,
            "contradiction_confirmed": self.contradiction_confirmed,
        }


def verify_no_cauchy(
    family: SequenceFamily,
    t: float = 0.5,
    eps: float = 0.1,
    resolution: float = 0.01,
) -> NoCauchyReport:
    """Reproduce the contradiction: adjacent spaces cannot be GH-close at t.

    Closeness above 1 - eps would force the odd level to dominate the damped
    even level, which fails numerically; independently, the certified upper
    bound for every adjacent pair stays below 1 - eps.  A self-pair lower
    bound near 1 sanity-checks the bound machinery.
    """
    require_positive(t, "t")
    require_unit(eps, "eps")
    spaces = family.spaces
    norm = family.norm
    values = [sp.value(0, 1, t) for sp in spaces]
    evens = [v for n, v in enumerate(values, start=1) if n % 2 == 0]
    odds = [v for n, v in enumerate(values, start=1) if n % 2 == 1]
    even_value = evens[0]
    odd_value = odds[0]
    damped = norm(even_value, norm(1.0 - eps, 1.0 - eps))
    necessity_holds = geq(odd_value, damped)

    net_sizes = tuple(len(find_net(sp, t, eps).indices) for sp in spaces)
    pair_uppers = []
    for n in range(len(spaces) - 1):
        ub = gh_fuzzy_upper_bound(spaces[n], spaces[n + 1], t, resolution=resolution)
        pair_uppers.append((n, n + 1, ub.value))
    max_upper = max(v for _, _, v in pair_uppers)
    threshold = 1.0 - eps

    self_lower = gh_fuzzy_lower_bound(spaces[0], spaces[0], t).value
    return NoCauchyReport(
        count=len(spaces),
        t=t,
        eps=eps,
        even_value=even_value,
        odd_value=odd_value,
        damped_requirement=damped,
        necessity_inequality_holds=necessity_holds,
        net_sizes=net_sizes,
        pair_upper_bounds=tuple(pair_uppers),
        max_pair_upper=max_upper,
        threshold=threshold,
        self_lower_bound=self_lower,
        contradiction_confirmed=(not necessity_holds) and max_upper < threshold,
    )
