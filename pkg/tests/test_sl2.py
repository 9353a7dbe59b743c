from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from burnside.chain import k_entry
from burnside.eigenbasis import beta, f_vector, g_vector
from burnside.sl2 import (
    E,
    H,
    P_MINUS,
    P_PLUS,
    P_PLUS_H,
    act_sl2,
    conjecture_coefficient,
    conjecture_terms,
    render_expansion,
    symmetrized_sum,
    verify_sl2_conjecture,
)
from burnside.tableaux import enumerate_tableaux
from burnside.tensor import TensorVector, Transposition, act_transposition, inner_product

F = Fraction


def vectors(n):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(st.integers(0, (1 << n) - 1), coeff, max_size=6).map(lambda d: TensorVector(n, d))


def test_matrices():
    assert (P_PLUS.a, P_PLUS.b, P_PLUS.c, P_PLUS.d) == (F(1, 2),) * 4
    assert (P_MINUS.a, P_MINUS.b) == (F(1, 2), F(-1, 2))
    assert (P_PLUS_H.a, P_PLUS_H.b, P_PLUS_H.c, P_PLUS_H.d) == (F(1, 2), F(-1, 2), F(1, 2), F(-1, 2))
    assert P_PLUS @ P_PLUS == P_PLUS and P_PLUS @ P_MINUS == P_MINUS @ P_PLUS == P_PLUS - P_PLUS
    assert H @ E - E @ H == E.scale(2)


def test_h_and_e_on_small_vectors():
    v = TensorVector.from_strings({"011": 1})
    assert act_sl2("h", v) == v * -1
    assert act_sl2("e", TensorVector.from_strings({"10": 1})) == TensorVector.from_strings({"00": 1})
    assert act_sl2("f", TensorVector.basis(2, 0)) == TensorVector.from_strings({"01": 1, "10": 1})
    with pytest.raises(ValueError):
        act_sl2(P_PLUS, v)


@given(st.integers(1, 5).flatmap(vectors))
def test_commutation_relations(v):
    e, f, h = (lambda w, g=g: act_sl2(g, w) for g in "efh")
    assert h(e(v)) - e(h(v)) == e(v) * 2
    assert h(f(v)) - f(h(v)) == f(v) * -2
    assert e(f(v)) - f(e(v)) == h(v)


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(vectors(n), st.integers(1, n), st.integers(1, n))), st.sampled_from("efh"))
def test_commutes_with_coordinate_swaps(args, g):
    v, i, j = args
    if i == j:
        return
    t = Transposition(i, j)
    assert act_sl2(g, act_transposition(t, v)) == act_transposition(t, act_sl2(g, v))


def brute_symmetrized(x, y, z):
    """Sum of Kronecker products over distinct orderings; coordinate 1 is the lowest bit."""
    from itertools import permutations

    import numpy as np

    mats = {"x": P_PLUS, "y": P_MINUS, "z": P_PLUS_H}
    total = 0
    for word in set(permutations("x" * x + "y" * y + "z" * z)):
        acc = np.array([[F(1)]], dtype=object)
        for letter in word:
            g = mats[letter]
            acc = np.kron(np.array([[g.a, g.b], [g.c, g.d]], dtype=object), acc)
        total = total + acc
    return total


@pytest.mark.parametrize("counts", [(3, 0, 0), (1, 1, 0), (1, 1, 1), (0, 2, 1), (2, 0, 2)])
def test_symmetrized_sum_matches_kronecker_oracle(counts):
    s = symmetrized_sum(*counts)
    oracle = brute_symmetrized(*counts)
    assert s.dense() == [[F(v) for v in row] for row in oracle.tolist()]


def test_symmetrized_sum_arguments():
    with pytest.raises(ValueError):
        symmetrized_sum(1, 1, 0, n=3)
    with pytest.raises(ValueError):
        symmetrized_sum(-1, 1, 0)


def test_symmetrized_sum_apply_matches_entries():
    s = symmetrized_sum(1, 1, 1)
    v = TensorVector.from_strings({"011": 2, "100": -1})
    out = s.apply(v)
    for r in range(8):
        assert out[r] == 2 * s.entry(r, 0b110) - s.entry(r, 0b001)


def test_coefficients():
    assert conjecture_coefficient(0, 0) == 1
    assert conjecture_coefficient(1, 1) == 0
    assert conjecture_coefficient(2, 2) == F(1, 64)
    for k in range(1, 6):
        assert conjecture_coefficient(2 * k, 0) == conjecture_coefficient(0, 2 * k) == beta(k)
    assert any(conjecture_coefficient(k, k) != beta(k) for k in range(1, 6))


def test_expansion_text():
    assert render_expansion(2) == "K_2 = f(2,0,0) + 1/4 (f(0,2,0) + f(0,0,2))"
    assert sum(len(t.counts) for t in conjecture_terms(4)) == 6


@pytest.mark.parametrize("n", range(1, 9))
def test_expansion_reproduces_kernel(n):
    r = verify_sl2_conjecture(n)
    assert r.holds and r.checked == 4**n
    assert r.pure_matches_beta


@pytest.mark.slow
@pytest.mark.parametrize("n", [9, 10])
def test_expansion_reproduces_kernel_large(n):
    assert verify_sl2_conjecture(n).holds


def test_kernel_entry_from_expansion_directly():
    n = 3
    for x in range(8):
        for y in range(8):
            total = sum(
                (conjecture_coefficient(b, c) * symmetrized_sum(n - b - c, b, c).entry(x, y)
                 for b in range(n + 1) for c in range(n + 1 - b)),
                F(0),
            )
            assert total == k_entry(x, y, n)


@pytest.mark.parametrize("n", range(2, 7))
def test_g_vectors_form_sl2_strings(n):
    for m in range(n // 2 + 1):
        top = n - 2 * m
        for q in enumerate_tableaux(n, m):
            gs = [g_vector(m, i, q) for i in range(top + 1)]
            assert act_sl2("e", gs[0]) == TensorVector.zero(n)
            assert act_sl2("f", gs[top]) == TensorVector.zero(n)
            for i in range(1, top + 1):
                image = act_sl2("e", gs[i])
                ratio = inner_product(image, gs[i - 1]) / inner_product(gs[i - 1], gs[i - 1])
                assert ratio != 0 and image == gs[i - 1] * ratio
            for i in range(top + 1):
                assert act_sl2("h", gs[i]) == gs[i] * (n - 2 * (m + i))


def _in_span(v, basis):
    # the f's of one tableau are mutually orthogonal
    rest = v
    for b in basis:
        rest = rest - b * (inner_product(v, b) / inner_product(b, b))
    return rest == TensorVector.zero(v.n)


@pytest.mark.parametrize("n", range(2, 7))
def test_f_span_of_a_tableau_is_sl2_invariant(n):
    for m in range(n // 2 + 1):
        for q in enumerate_tableaux(n, m):
            fs = [f_vector(m, ell, q) for ell in range(n - 2 * m + 1)]
            for v in fs:
                for g in "efh":
                    assert _in_span(act_sl2(g, v), fs)


def test_raising_does_not_kill_lowest_f():
    # f^{m,0} is not a highest weight vector, unlike g^{m,0}
    from burnside.tableaux import column_reading

    assert act_sl2("e", f_vector(0, 0, column_reading(3, 0))) != TensorVector.zero(3)
