"""Orthogonal eigenbasis {f_Q^{m,l}} of the binary Burnside operator.

Vectors are built from the column reading tableau T and transported to other
tableaux with shifted-transposition words.  Because each word preserves the
level |S|, the level-i piece g_Q^{m,i} is computed once per (m, i, Q) and
shared between all f_Q^{m,l}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, factorial
from typing import Iterator

from .tableaux import Tableau, column_reading, enumerate_tableaux, gamma, tau_word_factor
from .tensor import MAX_N, TensorVector, act_tau_word, check_n, masks_of_size

FULL_BASIS_CAP = 10


def beta(k: int) -> Fraction:
    """Nonzero eigenvalue beta_k = C(2k, k)^2 / 16^k."""
    return Fraction(comb(2 * k, k) ** 2, 16**k)


def eigenvalue(m: int, ell: int) -> Fraction:
    return beta((m + ell) // 2) if (m + ell) % 2 == 0 else Fraction(0)


def _check_indices(n: int, m: int, *levels: int) -> None:
    if m < 0 or 2 * m > n:
        raise ValueError(f"m={m} invalid for n={n}")
    for x in levels:
        if not 0 <= x <= n - 2 * m:
            raise ValueError(f"index {x} outside 0..{n - 2 * m}")


def t_scalar(m: int, n: int, ell: int, i: int) -> int:
    """T^{(ell)}_{m,n}(i) = sum_j (-1)^{m+j} C(2m+ell, m+j) C(i, j) C(n-2m-i, ell-j)."""
    _check_indices(n, m, ell, i)
    rest = n - 2 * m - i
    total = 0
    for j in range(min(i, ell) + 1):
        if ell - j > rest:
            continue
        sign = -1 if (m + j) % 2 else 1
        total += sign * comb(2 * m + ell, m + j) * comb(i, j) * comb(rest, ell - j)
    return total


def t_scalar_subset_sum(m: int, n: int, ell: int, i: int) -> int:
    """The same scalar as a sum over ell-subsets S of {1..n-2m}, weighting by |S & {1..i}|."""
    _check_indices(n, m, ell, i)
    prefix = (1 << i) - 1
    total = 0
    for s in masks_of_size(n - 2 * m, ell):
        j = (s & prefix).bit_count()
        total += (-1 if (m + j) % 2 else 1) * comb(2 * m + ell, m + j)
    return total


def _check_tableau(q: Tableau, m: int) -> None:
    if q.m != m:
        raise ValueError(f"tableau has second-row length {q.m}, expected m={m}")


@lru_cache(maxsize=None)
def _g_column_reading(n: int, m: int, i: int) -> TensorVector:
    # (v_01 - v_10)^{(x)m} on coordinates 1..2m, tensored with the level-i sum on the tail
    pairs = {0: 1}
    for p in range(m):
        lo, hi = 1 << (2 * p), 1 << (2 * p + 1)
        pairs = {mask | bit: c * s for mask, c in pairs.items() for bit, s in ((hi, 1), (lo, -1))}
    tail = n - 2 * m
    out = {}
    for t in masks_of_size(tail, i):
        shifted = t << (2 * m)
        for mask, c in pairs.items():
            out[mask | shifted] = Fraction(c)
    return TensorVector(n, out)


@lru_cache(maxsize=4096)
def _g_transported(n: int, m: int, i: int, suffix: tuple[int, ...]) -> TensorVector:
    """Apply tau^(r) ... tau^(m) to g_T^{m,i}, where suffix = (a_r, ..., a_m)."""
    if not suffix:
        return _g_column_reading(n, m, i)
    r = m - len(suffix) + 1
    inner = _g_transported(n, m, i, suffix[1:])
    return act_tau_word(tau_word_factor(suffix[0], r), inner)


def g_vector(m: int, i: int, q: Tableau) -> TensorVector:
    """g_Q^{m,i} = tau_Q g_T^{m,i}; supported on level m + i."""
    _check_tableau(q, m)
    _check_indices(q.n, m, i)
    return _g_transported(q.n, m, i, q.second_row)


def f_vector(m: int, ell: int, q: Tableau) -> TensorVector:
    """f_Q^{m,l} = sum_i T^{(l)}_{m,n}(i) g_Q^{m,i}."""
    _check_tableau(q, m)
    n = q.n
    _check_indices(n, m, ell)
    out: dict[int, Fraction] = {}
    for i in range(n - 2 * m + 1):
        t = t_scalar(m, n, ell, i)
        if t:
            for k, c in g_vector(m, i, q).items():
                out[k] = t * c
    return TensorVector(n, out)


def f_value(m: int, ell: int, q: Tableau, state: int) -> Fraction:
    """f_Q^{m,l} evaluated at one state, using only the level of that state."""
    _check_tableau(q, m)
    i = state.bit_count() - m
    if not 0 <= i <= q.n - 2 * m:
        return Fraction(0)
    return t_scalar(m, q.n, ell, i) * g_vector(m, i, q)[state]


def f_lifted(n: int, s: int) -> TensorVector:
    """f_S = sum_T (-1)^{|S & T|} C(|S|, |S & T|) v_T."""
    size = s.bit_count()
    return TensorVector(
        n,
        {t: (-1 if (s & t).bit_count() % 2 else 1) * comb(size, (s & t).bit_count()) for t in range(1 << n)},
    )


def phi_map(v: TensorVector) -> TensorVector:
    """Linear extension of v_S -> f_S."""
    n = v.n
    out = dict.fromkeys(range(1 << n), Fraction(0))
    for s, c in v.items():
        size = s.bit_count()
        binoms = [comb(size, k) for k in range(size + 1)]
        for t in range(1 << n):
            k = (s & t).bit_count()
            if k % 2:
                out[t] -= c * binoms[k]
            else:
                out[t] += c * binoms[k]
    return TensorVector(n, out)


def g_sq_norm(n: int, m: int, i: int) -> Fraction:
    """<g_T^{m,i}, g_T^{m,i}> = 2^m C(n-2m, i) / ((n+1) C(n, m+i))."""
    return Fraction(2**m * comb(n - 2 * m, i), (n + 1) * comb(n, m + i))


def sq_norm_sum(m: int, ell: int, q: Tableau) -> Fraction:
    """Squared norm as gamma_Q times the level sum over T-scalars."""
    n = q.n
    total = sum((t_scalar(m, n, ell, i) ** 2 * Fraction(comb(n - 2 * m, i), comb(n, m + i)) for i in range(n - 2 * m + 1)), Fraction(0))
    return gamma(q) * Fraction(2**m, n + 1) * total


def sq_norm_closed(m: int, ell: int, q: Tableau) -> Fraction:
    """Closed-form squared norm of f_Q^{m,l} in l^2(pi)."""
    _check_tableau(q, m)
    n = q.n
    _check_indices(n, m, ell)
    return (
        gamma(q)
        * Fraction(2**m, n + 1)
        * Fraction(factorial(2 * m + ell), (2 * m + 2 * ell + 1) * factorial(m + ell) ** 2 * factorial(ell))
        * Fraction(factorial(n - 2 * m), factorial(n))
        * Fraction(factorial(n + ell + 1), factorial(n - 2 * m - ell))
    )


@dataclass(frozen=True)
class SpectrumEntry:
    m: int
    ell: int
    Q: Tableau

    @property
    def n(self) -> int:
        return self.Q.n

    @property
    def eigenvalue(self) -> Fraction:
        return eigenvalue(self.m, self.ell)

    @cached_property
    def sq_norm(self) -> Fraction:
        return sq_norm_closed(self.m, self.ell, self.Q)

    @cached_property
    def vector(self) -> TensorVector:
        return f_vector(self.m, self.ell, self.Q)

    @cached_property
    def g(self) -> TensorVector:
        """The level vector g_Q^{m,i} with i = ell (the row of the g-table)."""
        return g_vector(self.m, self.ell, self.Q)

    def value_at(self, state: int) -> Fraction:
        return f_value(self.m, self.ell, self.Q, state)

    def to_json_obj(self, with_vector: bool = False) -> dict:
        obj = {
            "m": self.m,
            "ell": self.ell,
            "Q": self.Q.to_json_obj(),
            "eigenvalue": str(self.eigenvalue),
            "sq_norm": str(self.sq_norm),
        }
        if with_vector:
            obj["vector"] = self.vector.to_json_obj()
        return obj


def iter_basis(n: int, *, allow_large: bool = False) -> Iterator[SpectrumEntry]:
    check_n(n, allow_large=allow_large)
    if n > FULL_BASIS_CAP and not allow_large:
        raise ValueError(f"full basis capped at n={FULL_BASIS_CAP}; pass allow_large=True")
    for m in range(n // 2 + 1):
        for ell in range(n - 2 * m + 1):
            for q in enumerate_tableaux(n, m):
                yield SpectrumEntry(m, ell, q)


def full_basis(n: int, *, allow_large: bool = False) -> list[SpectrumEntry]:
    """All 2^n entries ordered by m, then ell, then tableau."""
    return list(iter_basis(n, allow_large=allow_large))


def figure_order(entries: list[SpectrumEntry]) -> list[SpectrumEntry]:
    """Rows grouped by level m + ell, then m, then tableau (the layout of the n = 3 tables)."""
    return sorted(entries, key=lambda e: (e.m + e.ell, e.m, e.Q.sort_key()))


def column_reading_entry(n: int, m: int, ell: int) -> SpectrumEntry:
    return SpectrumEntry(m, ell, column_reading(n, m))


__all__ = [
    "FULL_BASIS_CAP",
    "MAX_N",
    "SpectrumEntry",
    "beta",
    "column_reading_entry",
    "eigenvalue",
    "f_lifted",
    "f_value",
    "f_vector",
    "figure_order",
    "full_basis",
    "g_sq_norm",
    "g_vector",
    "iter_basis",
    "phi_map",
    "sq_norm_closed",
    "sq_norm_sum",
    "t_scalar",
    "t_scalar_subset_sum",
]
