from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from burnside.eigenbasis import g_vector
from burnside.tableaux import Tableau, column_reading
from burnside.tensor import (
    DimensionError,
    Subset,
    TensorVector,
    Transposition,
    act_murphy,
    act_simple,
    act_tau_word,
    act_transposition,
    all_ones,
    inner_product,
    mask_to_string,
    masks_of_size,
    states_in_display_order,
    string_to_mask,
)


@st.composite
def vectors(draw, n=None, max_n=5):
    n = n if n is not None else draw(st.integers(1, max_n))
    keys = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=8))
    vals = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=len(keys), max_size=len(keys)))
    return TensorVector(n, dict(zip(keys, vals)))


def test_string_encoding_puts_coordinate_one_first():
    assert string_to_mask("011") == 0b110
    assert mask_to_string(0b110, 3) == "011"
    assert Subset.from_string("011").coords == (2, 3)


def test_display_order_reads_coordinate_one_as_most_significant():
    assert [mask_to_string(s, 3) for s in states_in_display_order(3)] == ["000", "001", "010", "011", "100", "101", "110", "111"]


@given(st.integers(1, 10), st.data())
def test_masks_of_size_lists_each_subset_once(n, data):
    k = data.draw(st.integers(0, n))
    masks = list(masks_of_size(n, k))
    assert masks == sorted(m for m in range(1 << n) if m.bit_count() == k)


def test_bad_inputs_rejected():
    with pytest.raises(ValueError):
        string_to_mask("012")
    with pytest.raises(ValueError):
        Transposition(2, 2)
    with pytest.raises(DimensionError):
        TensorVector(2, {4: 1})
    with pytest.raises(DimensionError):
        inner_product(all_ones(2), all_ones(3))


@given(vectors())
def test_json_round_trip(v):
    assert TensorVector.from_json(v.to_json()) == v


def test_json_uses_bit_strings_and_fraction_strings():
    v = TensorVector.from_strings({"011": Fraction(1, 2)})
    assert v.to_json_obj() == {"n": 3, "coeffs": {"011": "1/2"}}


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(vectors(n=n), vectors(n=n), vectors(n=n))))
def test_inner_product_is_symmetric_bilinear(uvw):
    u, v, w = uvw
    assert inner_product(u, v) == inner_product(v, u)
    assert inner_product(u + w, v) == inner_product(u, v) + inner_product(w, v)
    assert inner_product(u * 3, v) == 3 * inner_product(u, v)
    assert inner_product(u, u) >= 0


def test_all_ones_has_unit_norm():
    for n in range(1, 8):
        assert inner_product(all_ones(n), all_ones(n)) == 1


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(vectors(n=n), st.integers(1, n), st.integers(1, n))))
def test_transpositions_preserve_inner_product(args):
    v, i, j = args
    if i == j:
        return
    t = Transposition(i, j)
    w = act_transposition(t, v)
    assert inner_product(w, w) == inner_product(v, v)
    assert act_transposition(t, w) == v


def test_swap_example():
    v = TensorVector.from_strings({"100": 1})
    assert act_simple(1, v) == TensorVector.from_strings({"010": 1})


@pytest.mark.parametrize("n", range(2, 8))
def test_murphy_elements_act_by_contents(n):
    from burnside.tableaux import content, enumerate_tableaux

    for m in range(n // 2 + 1):
        for q in enumerate_tableaux(n, m):
            for i in range(n - 2 * m + 1):
                g = g_vector(m, i, q)
                for r in range(2, n + 1):
                    assert act_murphy(r, g) == g * content(q, r)


def test_murphy_on_the_two_three_tableaux():
    g_col = g_vector(1, 0, column_reading(3, 1))
    g_other = g_vector(1, 0, Tableau(3, (3,)))
    assert act_murphy(3, g_col) == g_col
    assert act_murphy(3, g_other) == -g_other


def test_shifted_transposition_moves_between_tableaux():
    g_t = g_vector(1, 0, column_reading(3, 1))
    moved = act_tau_word([(2, Fraction(-1, 2))], g_t)
    assert moved == TensorVector.from_strings({"001": 1, "010": Fraction(-1, 2), "100": Fraction(-1, 2)})
    assert moved == g_vector(1, 0, Tableau(3, (3,)))


def test_moving_back_scales_by_three_quarters():
    g_t = g_vector(1, 0, column_reading(3, 1))
    there_and_back = act_tau_word([(2, Fraction(1, 2)), (2, Fraction(-1, 2))], g_t)
    assert there_and_back == g_t * Fraction(3, 4)


def test_tau_word_order_is_right_to_left():
    v = TensorVector.from_strings({"001": 1})
    # (s_1 + 0)(s_2 + 0) applied to v_001: s_2 first gives v_010, then s_1 gives v_100
    assert act_tau_word([(1, 0), (2, 0)], v) == TensorVector.from_strings({"100": 1})
