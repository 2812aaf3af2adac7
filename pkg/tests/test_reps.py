import math

import pytest
from hypothesis import given, settings, strategies as st

from heunqes.reps import (RepClass, RepKind, boundary_weights, classify_representation,
                          taxonomy_table, weight_data)


def test_weight_data_finite_piece():
    w = weight_data(1.0, -0.5)  # j = 3/2
    assert w.casimir == pytest.approx(-1.5 * 2.5)
    assert w.overlap == 3
    rc = classify_representation(w)
    assert str(rc.finite_piece) == "FD(4)"
    assert rc.bounded_below.kind is RepKind.NON_UNITARY_BOUNDED_BELOW
    assert rc.bounded_above.kind is RepKind.NON_UNITARY_BOUNDED_ABOVE


def test_discrete_series_for_negative_j():
    rc = classify_representation(weight_data(0.0, 0.3))
    assert (str(rc.bounded_below), str(rc.bounded_above)) == ("PD", "ND")
    assert rc.finite_piece is None


def test_complex_j_unclassified():
    rc = classify_representation(weight_data(0.2j, 0))
    assert rc.bounded_below.kind is RepKind.BOUNDED_UNCLASSIFIED


def test_rep_class_validation():
    with pytest.raises(ValueError):
        RepClass(RepKind.FINITE_DIMENSIONAL)
    with pytest.raises(ValueError):
        RepClass(RepKind.POSITIVE_DISCRETE, 2)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(0, 20))
def test_finite_dimension_matches_casimir(n):
    j = n / 2
    w = weight_data(j, 0)
    d = classify_representation(w).finite_piece.dim
    assert d == n + 1
    assert w.casimir == pytest.approx((1 - d * d) / 4)


def test_boundary_weights():
    assert boundary_weights(0.3) == []
    assert boundary_weights(0.25) == [-0.5]
    assert boundary_weights(-2) == [-2.0, 1.0]


def test_taxonomy_rows():
    rows = {r.cls: r for r in taxonomy_table([-2.0])}
    assert rows["FD(3)"].h_bound_low == -1 and rows["FD(3)"].h_bound_high == 1
    assert rows["PD"].h_bound_low == 2 and rows["PD"].h_bound_high == math.inf
    assert "PS" not in rows and "CS" not in rows
    classes = [r.cls for r in taxonomy_table([0.1])]
    assert "PS" not in classes and classes.count("CS") == 2
    assert [r.cls for r in taxonomy_table([1.0])] == ["PS"]
