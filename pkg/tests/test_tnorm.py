import numpy as np
import pytest
from hypothesis import given, strategies as st

from fuzzygh import DomainError, TNorm, tn_check_axioms, tn_eval, tn_has_tn1, tn_leq
from fuzzygh.tnorm import unit_grid, unit_grid_pairs

unit = st.floats(0.0, 1.0, allow_nan=False)


def test_eval_closed_forms():
    assert tn_eval(TNorm.product(), 0.5, 0.5) == 0.25
    assert tn_eval(TNorm.lukasiewicz(), 0.7, 0.7) == pytest.approx(0.4, abs=1e-15)
    assert tn_eval(TNorm.lukasiewicz(), 0.3, 0.3) == 0.0
    for norm in (TNorm.minimum(), TNorm.product(), TNorm.lukasiewicz()):
        assert tn_eval(norm, 0.3, 1.0) == pytest.approx(0.3, abs=1e-15)


def test_eval_rejects_out_of_range():
    with pytest.raises(DomainError):
        tn_eval(TNorm.product(), 1.5, 0.5)
    with pytest.raises(DomainError):
        tn_eval(TNorm.product(), 0.5, -0.1)


@pytest.mark.parametrize("kind", ["minimum", "product", "lukasiewicz"])
def test_axioms_exact_on_grid(kind):
    report = tn_check_axioms(TNorm(kind), [0.0, 0.25, 0.5, 0.75, 1.0])
    assert report.passed
    assert report.commutativity == 0.0
    assert report.associativity == 0.0
    assert report.identity == 0.0
    assert report.monotonicity == 0.0


def test_axioms_reject_empty_grid():
    with pytest.raises(DomainError):
        tn_check_axioms(TNorm.product(), [])


def test_tn1_product_is_an_identity():
    # a - a*b == a*(1-b) exactly in real arithmetic
    holds, witness = tn_has_tn1(TNorm.product())
    assert holds and witness is None


def test_tn1_lukasiewicz_full_grid():
    holds, witness = tn_has_tn1(TNorm.lukasiewicz())
    assert holds and witness is None


def test_tn1_minimum_fails_with_canonical_witness():
    holds, witness = tn_has_tn1(TNorm.minimum())
    assert not holds
    assert witness is not None
    a, b = witness
    assert a - min(a, b) < min(a, 1 - b)  # the returned pair genuinely violates
    # the canonical counterexample
    assert 0.5 - min(0.5, 0.5) < min(0.5, 1 - 0.5)


def test_ordering_chain():
    pairs = unit_grid_pairs(0.01)
    assert tn_leq(TNorm.lukasiewicz(), TNorm.product(), pairs)
    assert tn_leq(TNorm.product(), TNorm.minimum(), pairs)
    assert not tn_leq(TNorm.minimum(), TNorm.product(), [(0.5, 0.5)])


@given(a=unit, b=unit)
def test_eval_below_minimum(a, b):
    for kind in ("minimum", "product", "lukasiewicz"):
        assert TNorm(kind)(a, b) <= min(a, b) + 1e-15


@given(a=unit, b=unit, c=unit)
def test_one_lipschitz_in_each_argument(a, b, c):
    for kind in ("minimum", "product", "lukasiewicz"):
        norm = TNorm(kind)
        assert abs(norm(a, c) - norm(b, c)) <= abs(a - b) + 1e-15


@given(a=unit, b=unit)
def test_array_matches_scalar(a, b):
    for kind in ("minimum", "product", "lukasiewicz"):
        norm = TNorm(kind)
        assert float(norm.array(np.asarray(a), np.asarray(b))) == pytest.approx(
            norm(a, b), abs=1e-15
        )


def test_custom_norm_extension_point():
    norm = TNorm.custom("drastic-ish", lambda a, b: a * b * b)
    report = tn_check_axioms(norm, list(unit_grid(0.25)))
    assert not report.passed  # not associative/commutative: must be rejected downstream
