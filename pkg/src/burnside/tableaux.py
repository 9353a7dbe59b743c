"""Two-row standard Young tableaux of shape (n - m, m).

A tableau is determined by its second row a_1 < ... < a_m; standardness is
exactly a_r >= 2r.  The first row is the increasing complement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator

from .tensor import TauWord


@dataclass(frozen=True)
class Tableau:
    n: int
    second_row: tuple[int, ...]

    def __post_init__(self):
        row = tuple(self.second_row)
        object.__setattr__(self, "second_row", row)
        if 2 * len(row) > self.n:
            raise ValueError(f"second row {row} too long for n={self.n}")
        if any(b <= a for a, b in zip(row, row[1:])):
            raise ValueError(f"second row {row} is not strictly increasing")
        for r, a in enumerate(row, start=1):
            if a < 2 * r or a > self.n:
                raise ValueError(f"second row {row} is not standard for n={self.n}")

    @property
    def m(self) -> int:
        return len(self.second_row)

    @property
    def first_row(self) -> tuple[int, ...]:
        second = set(self.second_row)
        return tuple(k for k in range(1, self.n + 1) if k not in second)

    @property
    def is_column_reading(self) -> bool:
        return all(a == 2 * r for r, a in enumerate(self.second_row, start=1))

    def position(self, r: int) -> tuple[int, int]:
        """(row, column) of box r, both 1-based."""
        if not 1 <= r <= self.n:
            raise IndexError(f"box {r} outside 1..{self.n}")
        if r in self.second_row:
            return 2, self.second_row.index(r) + 1
        return 1, self.first_row.index(r) + 1

    def rows(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.first_row, self.second_row

    # ordering is reverse-lexicographic on the second row, matching the table layout
    def sort_key(self) -> tuple[int, ...]:
        return tuple(-a for a in self.second_row)

    def to_json_obj(self) -> dict:
        return {"n": self.n, "m": self.m, "second_row": list(self.second_row)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "Tableau":
        t = cls(int(obj["n"]), tuple(obj["second_row"]))
        if "m" in obj and int(obj["m"]) != t.m:
            raise ValueError("m does not match the second row length")
        return t

    def pretty(self) -> str:
        """ASCII box diagram, e.g. ``[1][3]`` over ``[2]``."""
        width = len(str(self.n))
        lines = []
        for row in self.rows():
            if row:
                lines.append("".join(f"[{k:>{width}}]" for k in row))
        return "\n".join(lines)

    def inline(self) -> str:
        first, second = self.rows()
        text = " ".join(map(str, first))
        return text + (" / " + " ".join(map(str, second)) if second else "")

    def __str__(self) -> str:
        return self.inline()


def _check_shape(n: int, m: int) -> None:
    if n < 1 or m < 0 or 2 * m > n:
        raise ValueError(f"no two-row shape ({n - m}, {m}) with n={n}")


def iter_tableaux(n: int, m: int) -> Iterator[Tableau]:
    _check_shape(n, m)
    rows = [
        row for row in combinations(range(1, n + 1), m)
        if all(a >= 2 * r for r, a in enumerate(row, start=1))
    ]
    rows.sort(reverse=True)
    for row in rows:
        yield Tableau(n, row)


def enumerate_tableaux(n: int, m: int) -> list[Tableau]:
    """All standard tableaux of shape (n - m, m), second rows in decreasing lex order."""
    return list(iter_tableaux(n, m))


def column_reading(n: int, m: int) -> Tableau:
    _check_shape(n, m)
    return Tableau(n, tuple(range(2, 2 * m + 1, 2)))


def content(q: Tableau, r: int) -> int:
    """Column minus row of the box holding r; box 1 has content 0."""
    row, col = q.position(r)
    return col - row


def contents(q: Tableau) -> tuple[int, ...]:
    return tuple(content(q, r) for r in range(1, q.n + 1))


def tau_word_factor(a: int, r: int) -> list[tuple[int, Fraction]]:
    """Word for moving box 2r to position a, written as a product (leftmost acts last).

    (s_{a-1} - 1/(a-2r+1)) ... (s_{2r+1} - 1/3) (s_{2r} - 1/2)
    """
    return [(j, Fraction(-1, j - 2 * r + 2)) for j in range(a - 1, 2 * r - 1, -1)]


def tau_word(q: Tableau) -> list[tuple[int, Fraction]]:
    """The full shifted-transposition word tau_Q = tau^(1) ... tau^(m).

    Written as a product: the last entry is applied first.  Empty exactly for
    the column reading tableau.
    """
    word: list[tuple[int, Fraction]] = []
    for r, a in enumerate(q.second_row, start=1):
        word.extend(tau_word_factor(a, r))
    return word


def tau_word_to_json(word: TauWord) -> dict:
    return {
        "order": "product; rightmost factor acts first",
        "factors": [{"s": j, "shift": str(Fraction(c))} for j, c in word],
    }


def gamma(q: Tableau) -> Fraction:
    """Norm-transfer constant: prod over r of prod_{d=2}^{a_r-2r+1} (d^2 - 1)/d^2."""
    out = Fraction(1)
    for r, a in enumerate(q.second_row, start=1):
        for d in range(2, a - 2 * r + 2):
            out *= Fraction(d * d - 1, d * d)
    return out


def shape_dimension(n: int, m: int) -> int:
    """Number of standard tableaux of shape (n - m, m)."""
    return comb(n, m) - (comb(n, m - 1) if m else 0)
