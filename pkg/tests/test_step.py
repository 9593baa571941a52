"""Step-function arithmetic: canonical form, piecewise algebra, JSON round trip."""

import math

import pytest
from hypothesis import given, strategies as st

from rifs import SchemaError, StepFunction, absolute, add, combine, indicator, maximum, minimum, scale


def test_canonical_sorts_merges_and_drops_zeros():
    x = StepFunction.make([(2, 3, 1.0), (0, 1, 1.0), (1, 2, 1.0), (5, 6, 0.0)])
    assert x.pieces == ((0.0, 3.0, 1.0),)


def test_overlapping_pieces_rejected():
    with pytest.raises(SchemaError):
        StepFunction.make([(0, 2, 1.0), (1, 3, 2.0)])


def test_alpha_one_bounds_support():
    x = StepFunction.make([(0, 1, 2.0)], alpha=1.0)
    assert x.support_end == 1.0
    with pytest.raises(SchemaError):
        StepFunction.make([(0, 2, 1.0)], alpha=1.0)


def test_add_indicator_doubles():
    x = indicator(0, 1)
    assert add(x, x).pieces == ((0.0, 1.0, 2.0),)


def test_scale_by_zero_gives_zero_function():
    x = StepFunction.make([(0, 1, 3.0), (2, 4, -1.0)])
    assert scale(x, 0.0).is_zero


def test_scale_rejects_non_finite_factor():
    with pytest.raises(SchemaError):
        scale(indicator(0, 1), math.inf)


def test_absolute_example():
    x = StepFunction.make([(0, 1, -2.0), (1, 2, 1.0)])
    assert absolute(x).pieces == ((0.0, 1.0, 2.0), (1.0, 2.0, 1.0))


def test_max_min_against_implicit_zero():
    x = StepFunction.make([(0, 1, -2.0)])
    y = StepFunction.make([(0.5, 1.5, 1.0)])
    assert maximum(x, y).pieces == ((0.5, 1.5, 1.0),)
    assert minimum(x, y).pieces == ((0.0, 1.0, -2.0),)


def test_combine_dispatch_and_unknown_op():
    assert combine("add", indicator(0, 1), indicator(0, 1)).pieces == ((0.0, 1.0, 2.0),)
    with pytest.raises(SchemaError):
        combine("convolve", indicator(0, 1), indicator(0, 1))


def test_mixed_domains_rejected():
    with pytest.raises(SchemaError):
        add(indicator(0, 1), indicator(0, 1, alpha=1.0))


def test_json_round_trip_is_identity_on_canonical_form():
    x = StepFunction.make([(0, 1, 1.5), (2.5, 3.25, -0.5)])
    again = StepFunction.from_json(x.to_json())
    assert again == x
    assert StepFunction.from_json(again.to_json()) == again


def test_json_alpha_encoding():
    assert indicator(0, 1).to_json()["alpha"] == "inf"
    assert indicator(0, 1, alpha=1.0).to_json()["alpha"] == "1"


piece_lists = st.lists(
    st.tuples(
        st.floats(min_value=0.0, max_value=50.0),
        st.floats(min_value=0.01, max_value=5.0),
        st.floats(min_value=-10.0, max_value=10.0, allow_nan=False),
    ),
    min_size=0,
    max_size=6,
)


def _disjointify(raw):
    pieces = []
    cursor = 0.0
    for gap, length, v in raw:
        cursor += gap
        pieces.append((cursor, cursor + length, v))
        cursor += length
    return pieces


@given(piece_lists)
def test_canonical_invariants(raw):
    x = StepFunction.make(_disjointify(raw))
    for (a0, a1, av), (b0, b1, _) in zip(x.pieces, x.pieces[1:]):
        assert a1 <= b0 + 1e-12 * max(1.0, abs(a1))
        assert a0 < a1
        assert av != 0.0


@given(piece_lists, piece_lists)
def test_add_commutes(raw_x, raw_y):
    x = StepFunction.make(_disjointify(raw_x))
    y = StepFunction.make(_disjointify(raw_y))
    assert add(x, y).approx_equal(add(y, x), tol=1e-9)


@given(piece_lists)
def test_abs_idempotent_and_nonnegative(raw):
    x = StepFunction.make(_disjointify(raw))
    ax = absolute(x)
    assert all(v >= 0 for _, _, v in ax.pieces)
    assert absolute(ax) == ax
