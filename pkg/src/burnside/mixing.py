"""Exact chi-square distance to stationarity and the isotypic eigenvalue tables.

For s >= 1 the chi-square distance from x is the sum over nonzero eigenvalues
of f(x)^2 / ||f||^2 * beta^(2s); zero-eigenvalue vectors drop out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, perm
from typing import Iterator

from .chain import ChainState, _dense_kernel, stationary_weight
from .eigenbasis import beta, eigenvalue, f_value, sq_norm_closed
from .tableaux import Tableau, enumerate_tableaux
from .tensor import check_n, mask_to_string

GENERAL_CAP = 12
ONE_ONES_CAP = 100_000
LOWER_CONSTANT = 5
UPPER_CONSTANT = 270
ASYMPTOTIC_CONSTANT = 35


@dataclass(frozen=True)
class MixingReport:
    n: int
    s: int
    start: str
    chi_square: Fraction
    breakdown: dict[Fraction, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if sum(self.breakdown.values(), Fraction(0)) != self.chi_square:
            raise ValueError("breakdown does not sum to chi_square")
        if any(c < 0 for c in self.breakdown.values()):
            raise ValueError("negative contribution")

    @property
    def reference(self) -> Fraction:
        """(1/4)^(2s), the scale of the two-sided bound."""
        return Fraction(1, 16**self.s)

    def within_bounds(self) -> bool:
        return LOWER_CONSTANT * self.reference <= self.chi_square <= UPPER_CONSTANT * self.reference

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "start": self.start,
            "chi_square": str(self.chi_square),
            "chi_square_float": float(self.chi_square),
            "breakdown": [
                {"eigenvalue": str(ev), "contribution": str(c)}
                for ev, c in sorted(self.breakdown.items(), reverse=True)
            ],
        }


def _check_steps(s: int) -> None:
    if s < 1:
        raise ValueError("s must be at least 1; zero-eigenvalue terms matter at s = 0")


def _start(x: "ChainState | str | int", n: int | None) -> tuple[int, int]:
    if isinstance(x, ChainState):
        if x.k != 2:
            raise ValueError("chi-square is exact only for k = 2")
        return x.mask, x.n
    if isinstance(x, str):
        return ChainState.binary(x).mask, len(x)
    if n is None:
        raise ValueError("n is required for integer states")
    return x, n


def nonzero_terms(n: int) -> Iterator[tuple[int, int, Tableau]]:
    """(m, l, Q) with m + l even and (m, l) != (0, 0)."""
    for m in range(n // 2 + 1):
        qs = enumerate_tableaux(n, m)
        for ell in range(m % 2, n - 2 * m + 1, 2):
            if m == ell == 0:
                continue
            for q in qs:
                yield m, ell, q


def chi_square(x: "ChainState | str | int", s: int, n: int | None = None, *, allow_large: bool = False) -> MixingReport:
    """Chi-square distance after s steps from x, via the orthogonal eigenbasis."""
    _check_steps(s)
    mask, n = _start(x, n)
    check_n(n)
    if n > GENERAL_CAP and not allow_large:
        raise ValueError(f"general-start chi-square capped at n={GENERAL_CAP}")
    breakdown: dict[Fraction, Fraction] = {}
    for m, ell, q in nonzero_terms(n):
        value = f_value(m, ell, q, mask)
        if value:
            ev = eigenvalue(m, ell)
            breakdown[ev] = breakdown.get(ev, Fraction(0)) + value**2 / sq_norm_closed(m, ell, q) * ev ** (2 * s)
    return MixingReport(n, s, mask_to_string(mask, n), sum(breakdown.values(), Fraction(0)), breakdown)


def distribution_after(x: int, n: int, s: int) -> list[Fraction]:
    """Exact K^s(x, .) by repeated row-vector products."""
    K = _dense_kernel(n, False)
    size = 1 << n
    row = [Fraction(0)] * size
    row[x] = Fraction(1)
    for _ in range(s):
        row = [sum((row[z] * K[z][y] for z in range(size) if row[z]), Fraction(0)) for y in range(size)]
    return row


def chi_square_direct(x: "ChainState | str | int", s: int, n: int | None = None) -> Fraction:
    """sum_y (K^s(x,y) - pi(y))^2 / pi(y) from dense matrix powers."""
    mask, n = _start(x, n)
    row = distribution_after(mask, n, s)
    total = Fraction(0)
    for y, p in enumerate(row):
        pi = stationary_weight(n, y)
        total += (p - pi) ** 2 / pi
    return total


def one_ones_state(n: int, j: int | None = None) -> int:
    """Mask of e_j (default e_n): a single one at coordinate j."""
    j = n if j is None else j
    if not 1 <= j <= n:
        raise ValueError(f"coordinate {j} outside 1..{n}")
    return 1 << (j - 1)


def numerator_m0(n: int, ell: int) -> int:
    return comb(n - 1, ell) - ell * comb(n - 1, ell - 1) if ell else 1


def numerator_m1(n: int, ell: int) -> int:
    return -(2 + ell) * comb(n - 2, ell)


def evaluate_f_at_one_ones(m: int, ell: int, q: Tableau, n: int | None = None) -> int:
    """f_Q^{m,l}(e_n) in closed form, without building any vector."""
    n = q.n if n is None else n
    if q.n != n or q.m != m:
        raise ValueError("tableau does not match (n, m)")
    if not 0 <= ell <= n - 2 * m:
        raise ValueError(f"ell={ell} outside 0..{n - 2 * m}")
    if m == 0:
        return numerator_m0(n, ell)
    if m == 1:
        return numerator_m1(n, ell) if q.second_row == (n,) else 0
    return 0


def _norm_m0(n: int, ell: int) -> Fraction:
    # closed-form norm at m = 0, with the factorials cancelled
    return Fraction(perm(n + ell + 1, 2 * ell + 1), (n + 1) * (2 * ell + 1) * factorial(ell) ** 2)


def _norm_m1_last(n: int, ell: int) -> Fraction:
    # closed-form norm at m = 1 for the tableau with a_1 = n
    gamma_q = Fraction(n, 2 * (n - 1))
    return (
        gamma_q
        * Fraction(2, n + 1)
        * Fraction(ell + 2, (2 * ell + 3) * factorial(ell + 1) * factorial(ell) * n * (n - 1))
        * perm(n + ell + 1, 2 * ell + 3)
    )


@lru_cache(maxsize=256)
def one_ones_weights(n: int) -> tuple[tuple[Fraction, Fraction], ...]:
    """(eigenvalue, sum of f(e_n)^2 / ||f||^2) for each nonzero eigenvalue below 1."""
    weights: dict[Fraction, Fraction] = {}
    for ell in range(2, n + 1, 2):
        ev = beta(ell // 2)
        weights[ev] = weights.get(ev, Fraction(0)) + Fraction(numerator_m0(n, ell) ** 2) / _norm_m0(n, ell)
    for ell in range(1, n - 1, 2):
        ev = beta((ell + 1) // 2)
        weights[ev] = weights.get(ev, Fraction(0)) + Fraction(numerator_m1(n, ell) ** 2) / _norm_m1_last(n, ell)
    return tuple((ev, w) for ev, w in weights.items() if w)


def chi_square_one_ones(n: int, s: int, *, allow_large: bool = False) -> MixingReport:
    """Chi-square distance from e_n using only the m = 0 and m = 1 (a_1 = n) terms."""
    if n < 3:
        raise ValueError("the one-ones formula needs n >= 3")
    if n > ONE_ONES_CAP and not allow_large:
        raise ValueError(f"one-ones chi-square capped at n={ONE_ONES_CAP}")
    _check_steps(s)
    breakdown = {ev: w * ev ** (2 * s) for ev, w in one_ones_weights(n)}
    start = mask_to_string(one_ones_state(n), n)
    return MixingReport(n, s, start, sum(breakdown.values(), Fraction(0)), breakdown)


def leading_coefficient(n: int) -> Fraction:
    """Coefficient of beta_1^(2s) = (1/4)^(2s) in the chi-square distance from e_n."""
    if n < 3:
        raise ValueError("needs n >= 3")
    return dict(one_ones_weights(n)).get(beta(1), Fraction(0))


def tv_squared_upper_bound(report: MixingReport) -> Fraction:
    """chi^2 / 4, an upper bound on the squared total variation distance."""
    return report.chi_square / 4


@dataclass(frozen=True)
class IsotypicShape:
    m: int
    tableaux: tuple[Tableau, ...]
    cells: dict[int, Fraction]

    def levels(self) -> range:
        return range(self.m, self.cells and max(self.cells) + 1 or self.m)


def isotypic_table(n: int) -> list[IsotypicShape]:
    """For each shape (n-m, m), largest m first, the eigenvalue on each level m + l."""
    check_n(n)
    if n > GENERAL_CAP:
        raise ValueError(f"isotypic table capped at n={GENERAL_CAP}")
    out = []
    for m in range(n // 2, -1, -1):
        cells = {m + ell: eigenvalue(m, ell) for ell in range(n - 2 * m + 1)}
        out.append(IsotypicShape(m, tuple(enumerate_tableaux(n, m)), cells))
    return out


def isotypic_multiplicities(n: int) -> dict[Fraction, int]:
    """Total multiplicity of each eigenvalue summed over shapes and tableaux."""
    counts: dict[Fraction, int] = {}
    for shape in isotypic_table(n):
        for ev in shape.cells.values():
            counts[ev] = counts.get(ev, 0) + len(shape.tableaux)
    return counts


def render_isotypic_table(n: int) -> str:
    shapes = isotypic_table(n)
    header = ["m+l"]
    for shape in shapes:
        header += [t.inline() for t in shape.tableaux] + ["|"]
    rows = [header[:-1]]
    for level in range(n + 1):
        row = [str(level)]
        for shape in shapes:
            cell = shape.cells.get(level)
            row += ["" if cell is None else str(cell)] * len(shape.tableaux) + ["|"]
        rows.append(row[:-1])
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join("  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip() for r in rows)
