"""Exact vectors in the tensor space V^{(x)n} indexed by subsets of {1..n}.

A basis tensor v_S is identified with the bitmask of S: bit ``i - 1`` is set
exactly when coordinate ``i`` belongs to S.  Strings render coordinate 1 on the
left, so ``"011"`` is the subset {2, 3}.

All scalars are :class:`fractions.Fraction`.  Vectors are immutable; every
operation returns a new vector with zero coefficients pruned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, lcm
from typing import Iterable, Iterator, Mapping, Sequence

MAX_N = 24

Rational = Fraction


class DimensionError(ValueError):
    """Raised when vectors or operators of different ambient size meet."""


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_fraction(q: Fraction) -> str:
    return str(q)


def check_n(n: int, *, allow_large: bool = False) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > MAX_N and not allow_large:
        raise ValueError(f"n={n} exceeds the cap of {MAX_N}; pass allow_large=True to override")


def mask_to_string(mask: int, n: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def string_to_mask(bits: str) -> int:
    if not bits or any(c not in "01" for c in bits):
        raise ValueError(f"not a 0/1 string: {bits!r}")
    return sum(1 << i for i, c in enumerate(bits) if c == "1")


def coords_to_mask(coords: Iterable[int], n: int) -> int:
    mask = 0
    for c in coords:
        if not 1 <= c <= n:
            raise ValueError(f"coordinate {c} outside 1..{n}")
        mask |= 1 << (c - 1)
    return mask


def mask_to_coords(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def states_in_display_order(n: int) -> list[int]:
    """Masks ordered as the strings 00..0, 00..1, ..., 11..1 (coordinate 1 most significant)."""
    return [string_to_mask(format(k, f"0{n}b")) for k in range(1 << n)]


def masks_of_size(n: int, k: int) -> Iterator[int]:
    """All k-subsets of {1..n} as masks, in increasing numeric order (Gosper's hack)."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple


@dataclass(frozen=True, order=True)
class Subset:
    n: int
    members: int

    def __post_init__(self):
        if self.members < 0 or self.members >> self.n:
            raise ValueError(f"mask {self.members} does not fit in n={self.n} coordinates")

    @classmethod
    def from_string(cls, bits: str) -> "Subset":
        return cls(len(bits), string_to_mask(bits))

    @classmethod
    def from_coords(cls, n: int, coords: Iterable[int]) -> "Subset":
        return cls(n, coords_to_mask(coords, n))

    @property
    def size(self) -> int:
        return self.members.bit_count()

    @property
    def coords(self) -> tuple[int, ...]:
        return mask_to_coords(self.members)

    def __str__(self) -> str:
        return mask_to_string(self.members, self.n)


@dataclass(frozen=True)
class Transposition:
    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("a transposition needs two distinct coordinates")
        if min(self.i, self.j) < 1:
            raise ValueError("coordinates are 1-based")


@dataclass(frozen=True, eq=False)
class TensorVector:
    """Sparse element of V^{(x)n}: a map from subset masks to nonzero rationals."""

    n: int
    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        limit = 1 << self.n
        clean = {}
        for key, value in self.coeffs.items():
            if not 0 <= key < limit:
                raise DimensionError(f"basis index {key} outside n={self.n}")
            q = as_fraction(value)
            if q:
                clean[key] = q
        object.__setattr__(self, "coeffs", clean)

    # construction -----------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "TensorVector":
        return cls(n, {})

    @classmethod
    def basis(cls, n: int, subset: "int | str | Subset") -> "TensorVector":
        if isinstance(subset, Subset):
            if subset.n != n:
                raise DimensionError("subset size mismatch")
            mask = subset.members
        elif isinstance(subset, str):
            if len(subset) != n:
                raise DimensionError("subset string length mismatch")
            mask = string_to_mask(subset)
        else:
            mask = subset
        return cls(n, {mask: Fraction(1)})

    @classmethod
    def from_strings(cls, coeffs: Mapping[str, object]) -> "TensorVector":
        lengths = {len(k) for k in coeffs}
        if len(lengths) != 1:
            raise DimensionError("keys must all have the same length")
        (n,) = lengths
        return cls(n, {string_to_mask(k): as_fraction(v) for k, v in coeffs.items()})

    @classmethod
    def from_dense(cls, n: int, values: Sequence, order: Sequence[int] | None = None) -> "TensorVector":
        order = states_in_display_order(n) if order is None else order
        if len(values) != len(order):
            raise DimensionError("dense vector has the wrong length")
        return cls(n, dict(zip(order, map(as_fraction, values))))

    # access -----------------------------------------------------------------

    def __getitem__(self, subset: "int | str | Subset") -> Fraction:
        if isinstance(subset, Subset):
            subset = subset.members
        elif isinstance(subset, str):
            subset = string_to_mask(subset)
        return self.coeffs.get(subset, Fraction(0))

    def items(self):
        return self.coeffs.items()

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def levels(self) -> set[int]:
        return {mask.bit_count() for mask in self.coeffs}

    def dense(self, order: Sequence[int] | None = None) -> list[Fraction]:
        order = states_in_display_order(self.n) if order is None else order
        return [self[s] for s in order]

    @cached_property
    def scaled(self) -> tuple[dict[int, int], int]:
        """Integer coefficients and a common denominator d with v = ints / d."""
        d = lcm(*(q.denominator for q in self.coeffs.values())) if self.coeffs else 1
        return {k: q.numerator * (d // q.denominator) for k, q in self.coeffs.items()}, d

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "TensorVector") -> None:
        if self.n != other.n:
            raise DimensionError(f"n mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "TensorVector") -> "TensorVector":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return TensorVector(self.n, out)

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + (-other)

    def __neg__(self) -> "TensorVector":
        return TensorVector(self.n, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, scalar) -> "TensorVector":
        c = as_fraction(scalar)
        if not c:
            return TensorVector.zero(self.n)
        return TensorVector(self.n, {k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{mask_to_string(k, self.n)}: {v}" for k, v in sorted(self.coeffs.items(), key=lambda kv: mask_to_string(kv[0], self.n))
        )
        return f"TensorVector(n={self.n}, {{{inner}}})"

    # serialization ----------------------------------------------------------

    def to_json_obj(self) -> dict:
        keys = sorted(self.coeffs, key=lambda k: mask_to_string(k, self.n))
        return {"n": self.n, "coeffs": {mask_to_string(k, self.n): format_fraction(self.coeffs[k]) for k in keys}}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "TensorVector":
        n = int(obj["n"])
        coeffs = {}
        for key, value in obj["coeffs"].items():
            if len(key) != n:
                raise DimensionError(f"key {key!r} does not have length {n}")
            coeffs[string_to_mask(key)] = as_fraction(value)
        return cls(n, coeffs)

    @classmethod
    def from_json(cls, text: str) -> "TensorVector":
        return cls.from_json_obj(json.loads(text))


def level_weight(n: int, k: int) -> Fraction:
    """Stationary mass of a single state with k ones: 1 / ((n+1) C(n,k))."""
    return Fraction(1, (n + 1) * comb(n, k))


def inner_product(u: TensorVector, v: TensorVector) -> Fraction:
    """<u, v> = sum_S u_S v_S / ((n+1) C(n,|S|))."""
    if u.n != v.n:
        raise DimensionError(f"n mismatch: {u.n} vs {v.n}")
    n = u.n
    (ui, ud), (vi, vd) = u.scaled, v.scaled
    if len(ui) > len(vi):
        ui, vi = vi, ui
    per_level = [0] * (n + 1)
    for k, a in ui.items():
        b = vi.get(k)
        if b is not None:
            per_level[k.bit_count()] += a * b
    total = Fraction(0)
    for k, s in enumerate(per_level):
        if s:
            total += Fraction(s, comb(n, k))
    return total / ((n + 1) * ud * vd)


def swap_mask(mask: int, i: int, j: int) -> int:
    """Image of the subset ``mask`` under the transposition of coordinates i and j."""
    a, b = i - 1, j - 1
    if (mask >> a ^ mask >> b) & 1:
        return mask ^ (1 << a | 1 << b)
    return mask


def _check_coord(c: int, n: int) -> None:
    if not 1 <= c <= n:
        raise IndexError(f"coordinate {c} outside 1..{n}")


def act_transposition(t: Transposition, v: TensorVector) -> TensorVector:
    _check_coord(t.i, v.n)
    _check_coord(t.j, v.n)
    return TensorVector(v.n, {swap_mask(k, t.i, t.j): c for k, c in v.coeffs.items()})


def act_simple(j: int, v: TensorVector) -> TensorVector:
    """Apply the adjacent transposition s_j = (j, j+1)."""
    return act_transposition(Transposition(j, j + 1), v)


def act_murphy(r: int, v: TensorVector) -> TensorVector:
    """Apply the Jucys-Murphy element M_r = sum_{i<r} s_{ir}."""
    if not 2 <= r <= v.n:
        raise IndexError(f"Murphy index {r} outside 2..{v.n}")
    out: dict[int, Fraction] = {}
    for i in range(1, r):
        for k, c in v.coeffs.items():
            key = swap_mask(k, i, r)
            out[key] = out.get(key, 0) + c
    return TensorVector(v.n, out)


TauWord = Sequence[tuple[int, Fraction]]


def act_tau_word(word: TauWord, v: TensorVector) -> TensorVector:
    """Apply a product of factors (s_j + c).

    The word is written as a product, left to right, so the rightmost factor
    acts first.
    """
    for j, c in reversed(list(word)):
        if not 1 <= j < v.n:
            raise IndexError(f"simple reflection s_{j} outside 1..{v.n - 1}")
        c = as_fraction(c)
        out = {}
        for k, x in v.coeffs.items():
            key = swap_mask(k, j, j + 1)
            out[key] = out.get(key, 0) + x
            if c:
                out[k] = out.get(k, 0) + c * x
        v = TensorVector(v.n, out)
    return v


def all_ones(n: int) -> TensorVector:
    return TensorVector(n, {k: Fraction(1) for k in range(1 << n)})
