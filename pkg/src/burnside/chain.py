"""The Burnside transition operator on C_2^n and Monte-Carlo samplers.

Exact entries come from the pair statistics of (x, y).  Samplers work for any
alphabet size k and are vectorized over a batch of chains with numpy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Callable, Iterator, Sequence

import numpy as np

from .eigenbasis import beta
from .tensor import TensorVector, check_n, mask_to_string, states_in_display_order, string_to_mask

DENSE_CAP = 8
NUMERIC_CAP = 10


@dataclass(frozen=True)
class PairStats:
    n00: int
    n01: int
    n10: int
    n11: int

    def __post_init__(self):
        if min(self.n00, self.n01, self.n10, self.n11) < 0:
            raise ValueError("pair counts must be nonnegative")

    @property
    def n(self) -> int:
        return self.n00 + self.n01 + self.n10 + self.n11

    @classmethod
    def of(cls, x: int, y: int, n: int) -> "PairStats":
        full = (1 << n) - 1
        n11 = (x & y).bit_count()
        n10 = (x & ~y & full).bit_count()
        n01 = (~x & y & full).bit_count()
        return cls(n - n11 - n10 - n01, n01, n10, n11)


@dataclass(frozen=True)
class ChainState:
    n: int
    k: int
    letters: tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(c) for c in self.letters)
        object.__setattr__(self, "letters", letters)
        if len(letters) != self.n:
            raise ValueError(f"expected {self.n} letters, got {len(letters)}")
        if self.k < 1 or any(not 0 <= c < self.k for c in letters):
            raise ValueError(f"letters must lie in 0..{self.k - 1}")

    @classmethod
    def binary(cls, bits: "str | int", n: int | None = None) -> "ChainState":
        if isinstance(bits, str):
            return cls(len(bits), 2, tuple(int(c) for c in bits))
        if n is None:
            raise ValueError("n is required for a mask")
        return cls(n, 2, tuple(bits >> i & 1 for i in range(n)))

    @property
    def mask(self) -> int:
        if self.k != 2:
            raise ValueError("mask is only defined for k = 2")
        return sum(1 << i for i, c in enumerate(self.letters) if c)

    def __str__(self) -> str:
        return "".join(map(str, self.letters)) if self.k <= 10 else ",".join(map(str, self.letters))


def _as_mask(x: "ChainState | int | str", n: int | None) -> tuple[int, int]:
    if isinstance(x, ChainState):
        return x.mask, x.n
    if isinstance(x, str):
        return string_to_mask(x), len(x)
    if n is None:
        raise ValueError("n is required for integer states")
    return x, n


@lru_cache(maxsize=None)
def entry_from_stats(stats: PairStats) -> Fraction:
    """K(x, y) for any pair with these statistics."""
    a, b, c, d = stats.n00, stats.n01, stats.n10, stats.n11
    num = comb(2 * a, a) * comb(2 * b, b) * comb(2 * c, c) * comb(2 * d, d)
    den = 4**stats.n * comb(a + b, a) * comb(c + d, c)
    return Fraction(num, den)


def k_entry(x: "ChainState | int | str", y: "ChainState | int | str", n: int | None = None) -> Fraction:
    """Exact transition probability K_n(x, y) for the binary chain."""
    for s in (x, y):
        if isinstance(s, ChainState) and s.k != 2:
            raise ValueError("exact entries are only available for k = 2")
    xm, nx = _as_mask(x, n)
    ym, ny = _as_mask(y, n)
    if nx != ny:
        raise ValueError("states have different lengths")
    return entry_from_stats(PairStats.of(xm, ym, nx))


def k_row(x: int, n: int) -> list[Fraction]:
    """Row K(x, .) indexed by mask; generated on demand."""
    check_n(n)
    return [entry_from_stats(PairStats.of(x, y, n)) for y in range(1 << n)]


@lru_cache(maxsize=None)
def kernel_matrix(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Dense exact kernel, indexed by mask; capped at DENSE_CAP unless called directly."""
    return tuple(tuple(k_row(x, n)) for x in range(1 << n))


def _dense_kernel(n: int, allow_large: bool) -> Sequence[Sequence[Fraction]]:
    if n > DENSE_CAP and not allow_large:
        raise ValueError(f"dense kernel capped at n={DENSE_CAP}; pass allow_large=True")
    return kernel_matrix(n)


@lru_cache(maxsize=None)
def integer_kernel(n: int) -> tuple[np.ndarray, int]:
    """(A, D) with K = A / D entrywise; A is an object array of Python ints."""
    K = kernel_matrix(n)
    D = lcm(*(q.denominator for row in K for q in row))
    A = np.array([[q.numerator * (D // q.denominator) for q in row] for row in K], dtype=object)
    return A, D


def apply_K(v: TensorVector, *, allow_large: bool = False) -> TensorVector:
    """(Kv)(x) = sum_y K(x, y) v(y), in exact integer arithmetic."""
    n = v.n
    if n > DENSE_CAP and not allow_large:
        raise ValueError(f"dense kernel capped at n={DENSE_CAP}; pass allow_large=True")
    A, D = integer_kernel(n)
    ints, d = v.scaled
    vec = np.zeros(1 << n, dtype=object)
    for k, c in ints.items():
        vec[k] = c
    out = A.dot(vec)
    return TensorVector(n, {x: Fraction(int(c), D * d) for x, c in enumerate(out) if c})


def stationary_weight(n: int, x: int) -> Fraction:
    return Fraction(1, (n + 1) * comb(n, x.bit_count()))


def stationary(n: int) -> TensorVector:
    """pi(x) = 1 / ((n+1) C(n, |x|)), as a vector over states."""
    check_n(n)
    return TensorVector(n, {x: stationary_weight(n, x) for x in range(1 << n)})


# ---------------------------------------------------------------------------
# lumping identity K_n (I^{(n-1)} (x) K_1) = K_{n-1} (x) K_1


@dataclass(frozen=True)
class LumpingReport:
    n: int
    holds: bool
    checked: int
    violations: tuple[tuple[str, str, Fraction, Fraction], ...]

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "holds": self.holds,
            "checked": self.checked,
            "violations": [
                {"x": x, "y": y, "lhs": str(lhs), "rhs": str(rhs)} for x, y, lhs, rhs in self.violations
            ],
        }


KernelFn = Callable[[int, int], Fraction]


def check_lumping(n: int, kernel: KernelFn | None = None, *, max_report: int = 10) -> LumpingReport:
    """Check the lumping identity entrywise, K_1 acting on the last coordinate.

    ``kernel(x, y)`` overrides K_n (for negative controls); K_{n-1} always
    uses the exact entries.
    """
    if not 2 <= n <= DENSE_CAP:
        raise ValueError(f"lumping check needs 2 <= n <= {DENSE_CAP}")
    kn = kernel or (lambda x, y: k_entry(x, y, n))
    top = 1 << (n - 1)
    half = Fraction(1, 2)
    violations = []
    checked = 0
    for x in range(1 << n):
        xp = x & (top - 1)
        for y in range(1 << n):
            yp = y & (top - 1)
            # (I (x) K_1)(z, y) = 1/2 when z agrees with y off the last coordinate
            lhs = half * (kn(x, yp) + kn(x, yp | top))
            rhs = k_entry(xp, yp, n - 1) * half
            checked += 1
            if lhs != rhs and len(violations) < max_report:
                violations.append((mask_to_string(x, n), mask_to_string(y, n), lhs, rhs))
    return LumpingReport(n, not violations, checked, tuple(violations))


def perturbed_kernel(n: int, x: int, y: int, delta: Fraction = Fraction(1, 1024)) -> KernelFn:
    """Exact kernel with the single entry (x, y) shifted by delta."""

    def kernel(a: int, b: int) -> Fraction:
        value = k_entry(a, b, n)
        return value + delta if (a, b) == (x, y) else value

    return kernel


# ---------------------------------------------------------------------------
# samplers


def sample_stabilizer(states: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Uniform element of G_x for each row: an independent shuffle inside each letter class.

    Returns perm with perm[b, i] = s(i).
    """
    states = np.asarray(states)
    batch, n = states.shape
    natural = np.argsort(states, axis=1, kind="stable")
    shuffled = np.argsort(states + 0.5 * rng.random((batch, n)), axis=1)
    perm = np.empty_like(natural)
    np.put_along_axis(perm, natural, shuffled, axis=1)
    return perm


def cycle_labels(perm: np.ndarray) -> np.ndarray:
    """Smallest element of the cycle through each position."""
    labels = np.broadcast_to(np.arange(perm.shape[1]), perm.shape).copy()
    cur = perm.copy()
    for _ in range(perm.shape[1]):
        np.minimum(labels, cur, out=labels)
        cur = np.take_along_axis(perm, cur, axis=1)
    return labels


def burnside_step(states: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """One step for a batch of chains (rows are states with letters in 0..k-1)."""
    states = np.asarray(states)
    perm = sample_stabilizer(states, rng)
    labels = cycle_labels(perm)
    colors = rng.integers(0, k, size=states.shape, dtype=states.dtype)
    return np.take_along_axis(colors, labels, axis=1)


def sample_step(x: ChainState, rng: np.random.Generator) -> ChainState:
    out = burnside_step(np.array([x.letters], dtype=np.int64), x.k, rng)[0]
    return ChainState(x.n, x.k, tuple(int(c) for c in out))


def run_chain(x0: ChainState, steps: int, rng: np.random.Generator) -> Iterator[ChainState]:
    """Yield x_1, ..., x_steps of a single trajectory."""
    cur = np.array([x0.letters], dtype=np.int64)
    for _ in range(steps):
        cur = burnside_step(cur, x0.k, rng)
        yield ChainState(x0.n, x0.k, tuple(int(c) for c in cur[0]))


def pack_masks(states: np.ndarray) -> np.ndarray:
    """Binary rows to masks, coordinate i in bit i - 1."""
    weights = 1 << np.arange(states.shape[1], dtype=np.int64)
    return states.astype(np.int64) @ weights


def unpack_masks(masks: np.ndarray, n: int) -> np.ndarray:
    return (np.asarray(masks, dtype=np.int64)[:, None] >> np.arange(n)) & 1


def empirical_row(x: int, n: int, draws: int, rng: np.random.Generator, batch: int = 200_000) -> np.ndarray:
    """Frequencies of the one-step successor of x, indexed by mask."""
    counts = np.zeros(1 << n, dtype=np.int64)
    start = unpack_masks(np.array([x]), n)
    left = draws
    while left:
        b = min(batch, left)
        nxt = burnside_step(np.repeat(start, b, axis=0), 2, rng)
        counts += np.bincount(pack_masks(nxt), minlength=1 << n)
        left -= b
    return counts / draws


def orbit_occupancy(n: int, steps: int, rng: np.random.Generator, *, chains: int = 1000, burn_in: int = 50) -> np.ndarray:
    """Long-run frequency of each orbit (number of ones) over parallel binary chains.

    ``steps`` counts recorded states in total across all chains.
    """
    per_chain = -(-steps // chains)
    states = np.zeros((chains, n), dtype=np.int64)
    for _ in range(burn_in):
        states = burnside_step(states, 2, rng)
    counts = np.zeros(n + 1, dtype=np.int64)
    for _ in range(per_chain):
        states = burnside_step(states, 2, rng)
        counts += np.bincount(states.sum(axis=1), minlength=n + 1)
    return counts / counts.sum()


def total_variation(p: Sequence[float], q: Sequence[float]) -> float:
    return 0.5 * float(np.abs(np.asarray(p, dtype=float) - np.asarray(q, dtype=float)).sum())


# ---------------------------------------------------------------------------
# floating-point spectrum


def float_kernel(n: int) -> np.ndarray:
    """Dense float kernel built from pair-statistic lookup tables."""
    check_n(n)
    size = 1 << n
    pc = np.array([b.bit_count() for b in range(size)], dtype=np.int64)
    x = np.arange(size)[:, None]
    y = np.arange(size)[None, :]
    full = size - 1
    n11 = pc[x & y]
    n10 = pc[x & ~y & full]
    n01 = pc[~x & y & full]
    n00 = n - n11 - n10 - n01
    central = np.array([comb(2 * a, a) / 4**a for a in range(n + 1)])
    binom = np.array([[comb(a + b, a) if a + b <= n else 0 for b in range(n + 1)] for a in range(n + 1)], dtype=float)
    return central[n00] * central[n01] * central[n10] * central[n11] / (binom[n00, n01] * binom[n10, n11])


@dataclass(frozen=True)
class SpectrumCluster:
    approx: float
    multiplicity: int
    exact: Fraction | None

    def to_json_obj(self) -> dict:
        return {
            "eigenvalue": None if self.exact is None else str(self.exact),
            "approx": self.approx,
            "multiplicity": self.multiplicity,
        }


def numeric_spectrum(n: int, *, tol: float = 1e-9) -> list[SpectrumCluster]:
    """Eigenvalues of the symmetrized dense kernel, clustered and sorted descending."""
    if n > NUMERIC_CAP:
        raise ValueError(f"numeric spectrum capped at n={NUMERIC_CAP}")
    K = float_kernel(n)
    pi = np.array([float(stationary_weight(n, s)) for s in range(1 << n)])
    root = np.sqrt(pi)
    sym = root[:, None] * K / root[None, :]
    values = np.sort(np.linalg.eigvalsh((sym + sym.T) / 2))[::-1]
    candidates = [Fraction(0)] + [beta(k) for k in range(n // 2 + 1)]
    clusters: list[list[float]] = []
    for v in values:
        if clusters and abs(clusters[-1][-1] - v) <= tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    out = []
    for group in clusters:
        mean = float(np.mean(group))
        exact = next((c for c in candidates if abs(float(c) - mean) <= tol), None)
        out.append(SpectrumCluster(mean, len(group), exact))
    return out


def display_states(n: int) -> list[str]:
    return [mask_to_string(s, n) for s in states_in_display_order(n)]
