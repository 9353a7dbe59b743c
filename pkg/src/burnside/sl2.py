"""sl_2 action on V^{(x)n} and the p^+/p^-/p^+h expansion of the Burnside kernel.

Each 2x2 matrix below has entries +-1/2, and the entry of a tensor product at
(X, Y) depends only on which pair (X_i, Y_i) each factor sees.  The symmetrized
sum f(x, y, z) at (X, Y) is therefore a coefficient of a product of four
linear forms raised to the pair counts, computed by polynomial convolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .chain import DENSE_CAP, PairStats, entry_from_stats
from .eigenbasis import beta
from .tensor import TensorVector, check_n, mask_to_string

SL2_CAP = 10


@dataclass(frozen=True)
class TwoByTwo:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        row, col = idx
        return ((self.a, self.b), (self.c, self.d))[row][col]

    def __matmul__(self, other: "TwoByTwo") -> "TwoByTwo":
        return TwoByTwo(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __add__(self, other: "TwoByTwo") -> "TwoByTwo":
        return TwoByTwo(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "TwoByTwo") -> "TwoByTwo":
        return TwoByTwo(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def scale(self, q) -> "TwoByTwo":
        q = Fraction(q)
        return TwoByTwo(q * self.a, q * self.b, q * self.c, q * self.d)


IDENTITY = TwoByTwo(1, 0, 0, 1)
E = TwoByTwo(0, 1, 0, 0)
F = TwoByTwo(0, 0, 1, 0)
H = TwoByTwo(1, 0, 0, -1)
P_PLUS = (IDENTITY + E + F).scale(Fraction(1, 2))
P_MINUS = (IDENTITY - E - F).scale(Fraction(1, 2))
P_PLUS_H = P_PLUS @ H
GENERATORS = {"e": E, "f": F, "h": H}


def act_sl2(g: "TwoByTwo | str", v: TensorVector) -> TensorVector:
    """Derivation action sum_i 1 (x) ... (x) g (x) ... (x) 1 for g in {e, f, h}."""
    g = GENERATORS[g] if isinstance(g, str) else g
    if g not in (E, F, H):
        raise ValueError("act_sl2 takes one of e, f, h")
    n = v.n
    out: dict[int, Fraction] = {}
    for s, c in v.items():
        if g == H:
            out[s] = out.get(s, Fraction(0)) + (n - 2 * s.bit_count()) * c
            continue
        for i in range(n):
            bit = 1 << i
            # e sends v_1 to v_0 at one coordinate; f sends v_0 to v_1
            if (g == E) == bool(s & bit):
                t = s ^ bit
                out[t] = out.get(t, Fraction(0)) + c
    return TensorVector(n, out)


# Per pair type (X_i, Y_i), the entries of (p^+, p^-, p^+h) times 2.
_PAIR_SIGNS = {
    (0, 0): (P_PLUS[0, 0], P_MINUS[0, 0], P_PLUS_H[0, 0]),
    (0, 1): (P_PLUS[0, 1], P_MINUS[0, 1], P_PLUS_H[0, 1]),
    (1, 0): (P_PLUS[1, 0], P_MINUS[1, 0], P_PLUS_H[1, 0]),
    (1, 1): (P_PLUS[1, 1], P_MINUS[1, 1], P_PLUS_H[1, 1]),
}

Poly = dict[tuple[int, int], Fraction]  # (y, z) -> coefficient; x = degree - y - z


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (y1, z1), c1 in p.items():
        for (y2, z2), c2 in q.items():
            key = (y1 + y2, z1 + z2)
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return out


def _linear_form(pair: tuple[int, int]) -> Poly:
    a, b, c = _PAIR_SIGNS[pair]
    return {(0, 0): a, (1, 0): b, (0, 1): c}


@lru_cache(maxsize=None)
def _poly_power(pair: tuple[int, int], k: int) -> Poly:
    if k == 0:
        return {(0, 0): Fraction(1)}
    return _poly_mul(_poly_power(pair, k - 1), _linear_form(pair))


@lru_cache(maxsize=None)
def symmetrized_polynomial(stats: PairStats) -> Poly:
    """All f(x, y, z) entries at once for a pair with these statistics."""
    poly: Poly = {(0, 0): Fraction(1)}
    for pair, k in (((0, 0), stats.n00), ((0, 1), stats.n01), ((1, 0), stats.n10), ((1, 1), stats.n11)):
        poly = _poly_mul(poly, _poly_power(pair, k))
    return {key: c for key, c in poly.items() if c}


@dataclass(frozen=True)
class SymmetrizedSum:
    """f(x, y, z): sum over all orderings of x p^+, y p^- and z p^+h tensor factors."""

    x: int
    y: int
    z: int

    def __post_init__(self):
        if min(self.x, self.y, self.z) < 0:
            raise ValueError("counts must be nonnegative")

    @property
    def n(self) -> int:
        return self.x + self.y + self.z

    def entry(self, row: int, col: int) -> Fraction:
        return symmetrized_polynomial(PairStats.of(row, col, self.n)).get((self.y, self.z), Fraction(0))

    def row(self, r: int) -> list[Fraction]:
        return [self.entry(r, c) for c in range(1 << self.n)]

    def dense(self, *, allow_large: bool = False) -> list[list[Fraction]]:
        if self.n > DENSE_CAP and not allow_large:
            raise ValueError(f"dense operators capped at n={DENSE_CAP}")
        return [self.row(r) for r in range(1 << self.n)]

    def apply(self, v: TensorVector) -> TensorVector:
        if v.n != self.n:
            raise ValueError("dimension mismatch")
        support = list(v.items())
        return TensorVector(self.n, {r: sum((self.entry(r, c) * a for c, a in support), Fraction(0)) for r in range(1 << self.n)})


def symmetrized_sum(x: int, y: int, z: int, n: int | None = None) -> SymmetrizedSum:
    if n is not None and x + y + z != n:
        raise ValueError(f"counts {x}+{y}+{z} do not sum to n={n}")
    return SymmetrizedSum(x, y, z)


def conjecture_coefficient(y: int, z: int) -> Fraction:
    """c_{y,z}; zero unless y and z are both even and nonnegative."""
    if y < 0 or z < 0 or y % 2 or z % 2:
        return Fraction(0)
    root = Fraction(
        factorial(y) * factorial(z),
        factorial(y // 2) * factorial(z // 2) * factorial((y + z) // 2) * 2 ** (y + z),
    )
    return root * root


@dataclass(frozen=True)
class ConjectureTerm:
    coefficient: Fraction
    counts: tuple[tuple[int, int, int], ...]

    def render(self) -> str:
        fs = " + ".join(f"f({x},{y},{z})" for x, y, z in self.counts)
        if self.coefficient == 1:
            return fs
        return f"{self.coefficient} ({fs})" if len(self.counts) > 1 else f"{self.coefficient} {fs}"


def conjecture_terms(n: int) -> list[ConjectureTerm]:
    """Nonzero terms of the expansion, grouped by coefficient within each x."""
    groups: dict[tuple[int, Fraction], list[tuple[int, int, int]]] = {}
    for x in range(n, -1, -1):
        for y in range(n - x, -1, -1):
            z = n - x - y
            c = conjecture_coefficient(y, z)
            if c:
                groups.setdefault((x, c), []).append((x, y, z))
    ordered = sorted(groups.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))
    return [ConjectureTerm(c, tuple(counts)) for (_, c), counts in ordered]


def render_expansion(n: int) -> str:
    return f"K_{n} = " + " + ".join(t.render() for t in conjecture_terms(n))


@lru_cache(maxsize=None)
def conjecture_entry(stats: PairStats) -> Fraction:
    """Right side of the expansion at any (X, Y) with these statistics."""
    n = stats.n
    poly = symmetrized_polynomial(stats)
    return sum((conjecture_coefficient(y, z) * c for (y, z), c in poly.items() if y + z <= n), Fraction(0))


@dataclass(frozen=True)
class Sl2Report:
    n: int
    holds: bool
    checked: int
    first_violation: tuple[str, str, Fraction, Fraction] | None
    terms: tuple[ConjectureTerm, ...]
    diagonal_matches_beta: bool
    pure_matches_beta: bool

    def to_json_obj(self) -> dict:
        v = self.first_violation
        return {
            "n": self.n,
            "holds": self.holds,
            "checked": self.checked,
            "first_violation": None if v is None else {"x": v[0], "y": v[1], "kernel": str(v[2]), "expansion": str(v[3])},
            "expansion": render_expansion(self.n),
            "c_kk_equals_beta_k": self.diagonal_matches_beta,
            "c_2k0_equals_beta_k": self.pure_matches_beta,
        }


def verify_sl2_conjecture(n: int, *, allow_large: bool = False) -> Sl2Report:
    """Compare the expansion with the exact kernel row by row."""
    check_n(n)
    if n > SL2_CAP and not allow_large:
        raise ValueError(f"conjecture check capped at n={SL2_CAP}")
    violation = None
    checked = 0
    for r in range(1 << n):
        for c in range(1 << n):
            stats = PairStats.of(r, c, n)
            lhs, rhs = entry_from_stats(stats), conjecture_entry(stats)
            checked += 1
            if lhs != rhs:
                violation = (mask_to_string(r, n), mask_to_string(c, n), lhs, rhs)
                break
        if violation:
            break
    ks = range(1, n // 2 + 1)
    return Sl2Report(
        n,
        violation is None,
        checked,
        violation,
        tuple(conjecture_terms(n)),
        all(conjecture_coefficient(k, k) == beta(k) for k in ks),
        all(conjecture_coefficient(2 * k, 0) == beta(k) for k in ks),
    )
