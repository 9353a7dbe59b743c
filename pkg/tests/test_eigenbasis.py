import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from burnside.eigenbasis import (
    beta,
    f_lifted,
    f_value,
    f_vector,
    figure_order,
    full_basis,
    g_sq_norm,
    g_vector,
    phi_map,
    sq_norm_closed,
    sq_norm_sum,
    t_scalar,
    t_scalar_subset_sum,
)
from burnside.orthopoly import hahn
from burnside.tableaux import Tableau, column_reading, enumerate_tableaux
from burnside.tensor import (
    Transposition,
    TensorVector,
    act_transposition,
    all_ones,
    inner_product,
    swap_mask,
)

F = Fraction


def dense(v):
    return [v[s] for s in ["000", "001", "010", "011", "100", "101", "110", "111"]]


def test_beta_values():
    assert [beta(k) for k in range(4)] == [1, F(1, 4), F(9, 64), F(25, 256)]


def test_t_scalar_examples():
    assert [t_scalar(0, 3, 1, i) for i in range(4)] == [3, 1, -1, -3]
    assert t_scalar(1, 3, 0, 0) == -2
    assert all(t_scalar(0, n, 0, i) == 1 for n in range(1, 8) for i in range(n + 1))


@pytest.mark.parametrize("n", range(1, 9))
def test_single_sum_equals_subset_sum(n):
    for m in range(n // 2 + 1):
        for ell in range(n - 2 * m + 1):
            for i in range(n - 2 * m + 1):
                assert t_scalar(m, n, ell, i) == t_scalar_subset_sum(m, n, ell, i)


@pytest.mark.parametrize("n", range(1, 11))
def test_scalars_are_scaled_hahn_values(n):
    for m in range(n // 2 + 1):
        N = n - 2 * m
        for ell in range(N + 1):
            scale = F((-1) ** m, comb(N, ell) * comb(2 * m + ell, m))
            for i in range(N + 1):
                assert hahn(N, m, m, ell, i) == scale * t_scalar(m, n, ell, i)


def test_index_errors():
    with pytest.raises(ValueError):
        t_scalar(2, 3, 0, 0)
    with pytest.raises(ValueError):
        g_vector(1, 0, column_reading(3, 0))
    with pytest.raises(ValueError):
        f_vector(0, 4, column_reading(3, 0))


def test_g_examples():
    assert g_vector(1, 0, column_reading(2, 1)) == TensorVector.from_strings({"01": 1, "10": -1})
    assert g_vector(0, 1, column_reading(3, 0)) == TensorVector.from_strings({"001": 1, "010": 1, "100": 1})
    assert dense(g_vector(1, 0, Tableau(3, (3,)))) == [0, 1, F(-1, 2), 0, F(-1, 2), 0, 0, 0]
    assert dense(g_vector(1, 0, column_reading(3, 1))) == [0, 0, 1, 0, -1, 0, 0, 0]


def test_f_examples():
    assert dense(f_vector(0, 1, column_reading(3, 0))) == [3, 1, 1, -1, 1, -1, -1, -3]
    assert dense(f_vector(1, 1, column_reading(3, 1))) == [0, 0, -3, 3, 3, -3, 0, 0]
    assert dense(f_vector(1, 1, Tableau(3, (3,)))) == [0, -3, F(3, 2), F(3, 2), F(3, 2), F(3, 2), -3, 0]
    assert f_vector(0, 0, column_reading(3, 0)) == all_ones(3)


@pytest.mark.parametrize("n", range(1, 9))
def test_g_lives_on_one_level_and_has_the_stated_norm(n):
    for m in range(n // 2 + 1):
        for i in range(n - 2 * m + 1):
            g = g_vector(m, i, column_reading(n, m))
            assert g.levels() == {m + i}
            assert inner_product(g, g) == g_sq_norm(n, m, i)
            for q in enumerate_tableaux(n, m):
                assert g_vector(m, i, q).levels() == {m + i}


@pytest.mark.parametrize("n", range(1, 7))
def test_g_basis_is_orthogonal(n):
    gs = [g_vector(m, i, q) for m in range(n // 2 + 1) for q in enumerate_tableaux(n, m) for i in range(n - 2 * m + 1)]
    assert len(gs) == 2**n
    for a in range(len(gs)):
        for b in range(a):
            assert inner_product(gs[a], gs[b]) == 0


def test_f_lifted_examples():
    assert f_lifted(3, 0) == all_ones(3)
    assert [f_lifted(2, 0b11)[s] for s in ["00", "01", "10", "11"]] == [1, -2, -2, 1]


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1), st.integers(1, n), st.integers(1, n))))
def test_f_lifted_is_equivariant(args):
    n, s, i, j = args
    if i == j:
        return
    assert f_lifted(n, swap_mask(s, i, j)) == act_transposition(Transposition(i, j), f_lifted(n, s))


@pytest.mark.parametrize("n", range(1, 7))
def test_phi_sends_g_to_f(n):
    assert phi_map(TensorVector.basis(n, 0)) == all_ones(n)
    for m in range(n // 2 + 1):
        qs = enumerate_tableaux(n, m) if n <= 6 else [column_reading(n, m)]
        for q in qs:
            for ell in range(n - 2 * m + 1):
                assert phi_map(g_vector(m, ell, q)) == f_vector(m, ell, q)


def test_phi_on_column_reading_up_to_eight():
    for n in (7, 8):
        for m in range(n // 2 + 1):
            for ell in range(n - 2 * m + 1):
                q = column_reading(n, m)
                assert phi_map(g_vector(m, ell, q)) == f_vector(m, ell, q)


def test_norm_examples():
    assert sq_norm_closed(0, 1, column_reading(3, 0)) == 5
    assert sq_norm_closed(1, 0, column_reading(3, 1)) == F(4, 3)
    assert sq_norm_closed(1, 0, Tableau(3, (3,))) == 1
    assert sq_norm_closed(0, 2, column_reading(3, 0)) == 9
    assert sq_norm_closed(1, 1, column_reading(3, 1)) == 3
    assert sq_norm_closed(1, 1, Tableau(3, (3,))) == F(9, 4)


@pytest.mark.parametrize("n", range(1, 9))
def test_norms_agree_three_ways(n):
    for e in full_basis(n):
        assert e.sq_norm > 0
        assert e.sq_norm == sq_norm_sum(e.m, e.ell, e.Q) == inner_product(e.vector, e.vector)


@pytest.mark.parametrize("n", [9, 10])
def test_norms_on_random_entries(n):
    rng = random.Random(n)
    entries = full_basis(n)
    for e in rng.sample(entries, 60):
        assert inner_product(e.vector, e.vector) == e.sq_norm


@pytest.mark.parametrize("n", range(1, 8))
def test_full_basis_is_orthogonal(n):
    vs = [e.vector for e in full_basis(n)]
    for a in range(len(vs)):
        for b in range(a):
            assert inner_product(vs[a], vs[b]) == 0


def test_random_pairs_at_ten_are_orthogonal():
    rng = random.Random(10)
    entries = full_basis(10)
    for _ in range(2000):
        a, b = rng.sample(entries, 2)
        assert inner_product(a.vector, b.vector) == 0


@pytest.mark.parametrize("n", range(1, 11))
def test_basis_counts(n):
    entries = full_basis(n)
    assert len(entries) == 2**n
    assert sum(1 for e in entries if (e.m + e.ell) % 2) == 2 ** (n - 1)
    for k in range(1, n // 2 + 1):
        assert sum(1 for e in entries if (e.m + e.ell) % 2 == 0 and (e.m + e.ell) // 2 == k) == comb(n, 2 * k)


def test_four_has_expected_eigenvalues():
    evs = [e.eigenvalue for e in full_basis(4)]
    assert evs.count(F(1, 4)) == 6 and evs.count(F(9, 64)) == 1 and evs.count(0) == 8


def test_figure_order_for_three():
    rows = [(e.m, e.ell, e.Q.second_row) for e in figure_order(full_basis(3))]
    assert rows == [(0, 0, ()), (0, 1, ()), (1, 0, (3,)), (1, 0, (2,)), (0, 2, ()), (1, 1, (3,)), (1, 1, (2,)), (0, 3, ())]


@pytest.mark.parametrize("n", range(1, 8))
def test_pointwise_values_match_vectors(n):
    for e in full_basis(n):
        v = e.vector
        assert all(f_value(e.m, e.ell, e.Q, s) == v[s] for s in range(1 << n))


def test_cap():
    with pytest.raises(ValueError):
        full_basis(11)
