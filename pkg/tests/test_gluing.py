import pytest
from hypothesis import given, settings, strategies as st

from fuzzygh import (
    DomainError,
    HypothesisError,
    Standard,
    Stationary,
    Step,
    TNorm,
    ZERO,
    attempt_net_gluing,
    extract_matched_nets,
    floor_envelope,
    glue_constant,
    glue_via_nets,
    make_standard_space,
    make_stationary_space,
    make_step_space,
    match_nets,
    mutual_eps_domination,
    persistence_delta,
    t_diameter,
    union_hausdorff,
    validate_union,
)

from conftest import make_random_standard, make_random_stationary


def test_zero_floor_always_glues(rng, product):
    x = make_random_standard(rng, 3, product)
    y = make_random_stationary(rng, 2, product)
    u = glue_constant(x, y, ZERO)
    assert validate_union(u).passed
    assert union_hausdorff(u, 1.0) == 0.0


def test_standard_floor_with_large_offset(rng, product):
    x = make_random_standard(rng, 3, product, name="X")
    y = make_random_standard(rng, 3, product, name="Y")
    big = max(
        max(f.d for f in x.pairs),
        max(f.d for f in y.pairs),
    )
    u = glue_constant(x, y, Standard(big))
    assert validate_union(u).passed
    t = 1.5
    assert union_hausdorff(u, t) == pytest.approx(t / (t + big), abs=1e-12)


def test_floor_violation_names_scale(two_point_half, two_point_third):
    with pytest.raises(HypothesisError) as err:
        glue_constant(two_point_half, two_point_third, Stationary(0.4))
    assert err.value.which == "floor"
    assert err.value.where is not None


def test_constant_third_gluing(two_point_half, two_point_third):
    u = glue_constant(two_point_half, two_point_third, Stationary(1 / 3))
    assert validate_union(u).passed
    assert union_hausdorff(u, 0.7) == pytest.approx(1 / 3, abs=1e-15)


def test_envelope_exact_for_standard_pairs(rng, product):
    x = make_random_standard(rng, 3, product)
    y = make_random_standard(rng, 4, product)
    u = glue_constant(x, y, floor_envelope(x, y))
    for t in (0.4, 1.0, 3.0):
        assert union_hausdorff(u, t) == pytest.approx(
            min(t_diameter(x, t), t_diameter(y, t)), abs=1e-12
        )


def test_envelope_below_min_diameter_for_mixed_pairs(rng, product):
    x = make_random_standard(rng, 3, product)
    y = make_random_stationary(rng, 3, product)
    env = floor_envelope(x, y)
    u = glue_constant(x, y, env)
    assert validate_union(u).passed
    for t in (0.4, 1.0, 3.0):
        # every cross similarity is the floor, so H reproduces it exactly
        assert union_hausdorff(u, t) == pytest.approx(env.eval(t), abs=1e-15)
        expected = min(t_diameter(x, t), t_diameter(y, t))
        assert union_hausdorff(u, t) <= expected + 1e-12


def test_mixed_norm_kinds_rejected(two_point_half):
    other = make_stationary_space(["a", "b"], [[1, 0.5], [0.5, 1]], TNorm.minimum())
    with pytest.raises(DomainError):
        glue_constant(two_point_half, other, ZERO)


# ---------------------------------------------------------------------------
# persistence width


def test_persistence_delta_step_breakpoint_arithmetic(product):
    x = make_step_space(["a", "b"], {(0, 1): Step((2.0,), (0.5, 1.0))}, product)
    y = make_step_space(["a", "b"], {(0, 1): Step((2.0,), (0.45, 1.0))}, product)
    delta = persistence_delta(x, y, 0, 1, 0, 1, 3.0, 0.2)
    assert delta == pytest.approx(1.0, rel=1e-9)


def test_persistence_delta_stationary_is_half(two_point_half, two_point_third):
    assert persistence_delta(two_point_half, two_point_third, 0, 1, 0, 1, 2.0, 0.5) == 1.0


def test_persistence_delta_standard_bisection(product):
    x = make_standard_space(["a", "b"], [[0, 1.0], [1.0, 0]], product)
    y = make_standard_space(["a", "b"], [[0, 1.3], [1.3, 0]], product)
    t, eps = 1.0, 0.2
    delta = persistence_delta(x, y, 0, 1, 0, 1, t, eps)
    assert delta > 0.0
    # re-check both bounds at the bottom of the certified interval
    s = t - delta
    a, b = x.value(0, 1, s), y.value(0, 1, s)
    assert a >= b * (1 - eps) - 1e-9
    assert b >= a * (1 - eps) - 1e-9


def test_persistence_delta_requires_bounds_at_t(two_point_half, product):
    far = make_stationary_space(["a", "b"], [[1, 0.05], [0.05, 1]], product)
    with pytest.raises(HypothesisError):
        persistence_delta(two_point_half, far, 0, 1, 0, 1, 1.0, 0.1)


# ---------------------------------------------------------------------------
# matched nets and the spliced gluing


def test_worked_stationary_example(product):
    x = make_stationary_space(["a", "b"], [[1, 0.5], [0.5, 1]], product)
    y = make_stationary_space(["a", "b"], [[1, 0.45], [0.45, 1]], product)
    # mutual bounds: 0.5 >= 0.45*0.8 and 0.45 >= 0.5*0.8
    u = attempt_net_gluing(x, y, 0.5, 0.2, (0, 1), (0, 1))
    assert validate_union(u).passed
    h = union_hausdorff(u, 0.5)
    assert h > 0.8 * 0.8


def test_identity_gluing_of_a_space_with_itself(rng, product):
    x = make_random_standard(rng, 3, product)
    eps = 0.25
    u = attempt_net_gluing(x, x, 1.0, eps, tuple(range(3)), tuple(range(3)))
    assert validate_union(u).passed
    assert union_hausdorff(u, 1.0) > (1 - eps) * (1 - eps)


def test_hypothesis_b_violation_is_rejected(product):
    x = make_stationary_space(["a", "b"], [[1, 0.9], [0.9, 1]], product)
    y = make_stationary_space(["a", "b"], [[1, 0.3], [0.3, 1]], product)
    with pytest.raises(HypothesisError):
        attempt_net_gluing(x, y, 1.0, 0.2, (0, 1), (0, 1))


def test_net_detour_bound_for_matched_index(product):
    # cross(x, right_j, t) >= M_X(x, left_j, t) * (1 - eps)
    x = make_stationary_space(["a", "b"], [[1, 0.7], [0.7, 1]], product)
    y = make_stationary_space(["a", "b"], [[1, 0.68], [0.68, 1]], product)
    eps = 0.25
    u = attempt_net_gluing(x, y, 1.0, eps, (0, 1), (0, 1))
    for p in range(2):
        for j in range(2):
            assert u.cross_value(p, j, 1.0) >= x.value(p, j, 1.0) * (1 - eps) - 1e-12


def test_non_net_is_rejected(product):
    x = make_stationary_space(["a", "b"], [[1, 0.5], [0.5, 1]], product)
    with pytest.raises(HypothesisError) as err:
        # {0} is not a (t, 0.2)-net: 0.5 is not above 0.8
        attempt_net_gluing(x, x, 1.0, 0.2, (0,), (0,))
    assert err.value.which == "(2)"


def test_glue_via_nets_rejects_bad_delta(product):
    x = make_stationary_space(["a", "b"], [[1, 0.5], [0.5, 1]], product)
    nets = match_nets(x, x, 1.0, 0.3, (0, 1), (0, 1))
    with pytest.raises(DomainError):
        glue_via_nets(x, x, nets, 0.0, ZERO)


def test_mixed_representation_gluing(rng, product):
    x = make_random_standard(rng, 2, product)
    y = make_random_stationary(rng, 2, product)
    u = glue_constant(x, y, floor_envelope(x, y))
    assert validate_union(u).passed


# ---------------------------------------------------------------------------
# extraction


def test_extract_from_identity_gluing(rng, product):
    x = make_random_stationary(rng, 3, product)
    # the identity gluing at eps=0.1 reaches H = 0.9, strictly above 1 - 0.2
    u = attempt_net_gluing(x, x, 1.0, 0.1, (0, 1, 2), (0, 1, 2))
    nets = extract_matched_nets(u, 1.0, 0.2, (0, 1, 2))
    assert nets.right == (0, 1, 2)
    assert nets.all_conditions_hold()
    assert nets.right_net_eps3


def test_extract_requires_strict_closeness(product):
    x = make_stationary_space(["a", "b"], [[1, 0.8], [0.8, 1]], product)
    u = glue_constant(x, x, Stationary(0.8))
    # H equals exactly 1 - eps: strictness must reject
    with pytest.raises(HypothesisError):
        extract_matched_nets(u, 1.0, 0.2, (0, 1))


def test_extract_near_isometric_pair(product):
    x = make_stationary_space(["a", "b"], [[1, 0.7], [0.7, 1]], product)
    y = make_stationary_space(["a", "b"], [[1, 0.68], [0.68, 1]], product)
    u = attempt_net_gluing(x, y, 1.0, 0.3, (0, 1), (0, 1))  # H = 0.7
    nets = extract_matched_nets(u, 1.0, 0.45, (0, 1))
    assert nets.all_conditions_hold()
    assert nets.left_net_eps3 and nets.right_net_eps3


# ---------------------------------------------------------------------------
# damped mutual domination


def test_damped_domination_worked_example(product):
    assert mutual_eps_domination(0.5, 0.45, 0.4, 0.2, product)


def test_damped_domination_equal_values(product):
    assert mutual_eps_domination(0.5, 0.5, 0.3, 0.1, product)


def test_damped_domination_rejects_minimum_norm():
    with pytest.raises(DomainError):
        mutual_eps_domination(0.5, 0.45, 0.4, 0.2, TNorm.minimum())


def test_damped_domination_precondition(product):
    with pytest.raises(DomainError):
        mutual_eps_domination(0.5, 0.45, 0.6, 0.2, product)  # k >= min(a, b)


@settings(max_examples=200, deadline=None)
@given(
    a=st.floats(0.05, 0.99),
    gap=st.floats(0.0, 0.5),
    k_frac=st.floats(0.01, 0.99),
    eps=st.floats(0.01, 0.99),
    kind=st.sampled_from(["product", "lukasiewicz"]),
)
def test_damped_domination_under_premise(a, gap, k_frac, eps, kind):
    norm = TNorm(kind)
    b = min(0.995, a + gap)
    k = k_frac * min(a, b)
    if not 0.0 < k < min(a, b) < 1.0:
        return
    if abs(a - b) < norm(k, eps):  # the premise
        assert mutual_eps_domination(a, b, k, eps, norm)


def test_damped_domination_bulk_samples(rng):
    # dense sweep constructed under the premise |a - b| < k * eps, both norms
    for kind in ("product", "lukasiewicz"):
        norm = TNorm(kind)
        count = 0
        while count < 50_000:
            a = float(rng.uniform(0.05, 0.99))
            eps = float(rng.uniform(0.01, 0.99))
            k = float(rng.uniform(0.3, 0.999)) * a
            width = norm(k, eps)
            if width <= 0.0:
                continue
            b = a + float(rng.uniform(-1.0, 1.0)) * width * 0.999
            if not (0.0 < b < 1.0):
                continue
            if not (0.0 < k < min(a, b) < 1.0) or abs(a - b) >= width:
                continue
            count += 1
            assert mutual_eps_domination(a, b, k, eps, norm)
