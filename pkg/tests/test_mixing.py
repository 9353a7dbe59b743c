from fractions import Fraction
from math import comb

import pytest

from burnside.eigenbasis import f_value
from burnside.mixing import (
    MixingReport,
    chi_square,
    chi_square_direct,
    chi_square_one_ones,
    evaluate_f_at_one_ones,
    isotypic_multiplicities,
    isotypic_table,
    leading_coefficient,
    one_ones_state,
    tv_squared_upper_bound,
)
from burnside.tableaux import Tableau, column_reading, enumerate_tableaux

F = Fraction


def test_three_bit_one_ones_value():
    for s in range(1, 6):
        assert chi_square("001", s).chi_square == 5 * F(1, 4) ** (2 * s)
        assert chi_square_one_ones(3, s).chi_square == 5 * F(1, 4) ** (2 * s)


def test_breakdown_for_three_bits():
    report = chi_square("001", 1)
    assert report.breakdown == {F(1, 4): F(5, 16)}


@pytest.mark.parametrize("n", range(1, 6))
def test_matches_matrix_powers(n):
    for x in range(1 << n):
        for s in range(1, 4):
            assert chi_square(x, s, n).chi_square == chi_square_direct(x, s, n)


def test_decreases_to_zero():
    values = [chi_square("01101", s).chi_square for s in range(1, 12)]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] < F(1, 10**6)


def test_stationary_start_is_not_special():
    assert chi_square("000", 2).chi_square > 0


@pytest.mark.parametrize("n", range(3, 11))
def test_one_ones_formula_matches_general_path(n):
    for s in (1, 2, 5):
        assert chi_square_one_ones(n, s).chi_square == chi_square(one_ones_state(n), s, n).chi_square


@pytest.mark.parametrize("n", range(2, 7))
def test_all_one_ones_states_agree(n):
    values = {chi_square(one_ones_state(n, j), 3, n).chi_square for j in range(1, n + 1)}
    assert len(values) == 1


def test_closed_form_values_at_one_ones():
    for n in range(3, 12):
        assert evaluate_f_at_one_ones(0, 2, column_reading(n, 0)) == F((n - 1) * (n - 6), 2)
        assert evaluate_f_at_one_ones(1, 1, Tableau(n, (n,))) == -3 * (n - 2)
        if n >= 4:
            for q in enumerate_tableaux(n, 2):
                assert evaluate_f_at_one_ones(2, 0, q) == 0


@pytest.mark.parametrize("n", range(3, 10))
def test_closed_form_values_match_vectors(n):
    e = one_ones_state(n)
    for m in range(n // 2 + 1):
        for q in enumerate_tableaux(n, m):
            for ell in range(n - 2 * m + 1):
                assert evaluate_f_at_one_ones(m, ell, q) == f_value(m, ell, q, e)


def test_bounds_on_a_coarse_grid():
    for n in list(range(3, 40)) + [75, 150, 200]:
        for s in (3, 6, 10):
            assert chi_square_one_ones(n, s).within_bounds()


def test_leading_coefficient_approaches_35():
    assert leading_coefficient(3) == 5
    assert abs(float(leading_coefficient(500)) - 35) / 35 < 0.05
    assert leading_coefficient(100) < leading_coefficient(500) < 35


def test_preconditions():
    with pytest.raises(ValueError):
        chi_square_one_ones(2, 3)
    with pytest.raises(ValueError):
        chi_square("001", 0)
    with pytest.raises(ValueError):
        chi_square(0, 1, 13)


def test_tv_bound():
    r = chi_square_one_ones(3, 2)
    assert tv_squared_upper_bound(r) == r.chi_square / 4
    zero = MixingReport(3, 1, "000", F(0), {})
    assert tv_squared_upper_bound(zero) == 0


def test_report_rejects_inconsistent_breakdown():
    with pytest.raises(ValueError):
        MixingReport(3, 1, "001", F(1), {F(1, 4): F(1, 2)})


@pytest.mark.parametrize("n", range(1, 13))
def test_isotypic_multiplicities(n):
    counts = isotypic_multiplicities(n)
    assert counts[F(0)] == 2 ** (n - 1)
    for k in range(n // 2 + 1):
        from burnside.eigenbasis import beta

        assert counts[beta(k)] == comb(n, 2 * k)
    for shape in isotypic_table(n):
        assert len(shape.cells) == n - 2 * shape.m + 1


def test_isotypic_shape_rule():
    from burnside.eigenbasis import beta

    for n in range(1, 13):
        for shape in isotypic_table(n):
            for k in range(n // 2 + 1):
                present = beta(k) in shape.cells.values()
                assert present == (shape.m <= min(2 * k, n - 2 * k))


def test_isotypic_four():
    table = {s.m: s for s in isotypic_table(4)}
    assert table[2].cells == {2: F(1, 4)}
    assert table[1].cells == {1: 0, 2: F(1, 4), 3: 0}
    assert table[0].cells == {0: 1, 1: 0, 2: F(1, 4), 3: 0, 4: F(9, 64)}
    assert [len(table[m].tableaux) for m in (2, 1, 0)] == [2, 3, 1]
