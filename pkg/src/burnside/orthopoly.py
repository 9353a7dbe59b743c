"""Exact (alpha, beta)-Hahn polynomials on {0, ..., N}.

Normalized so that Q(0) = 1; the (0, 0) family is the discrete Chebyshev
family.  Parameters are nonnegative integers so every value is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial


def rising_factorial(a, j: int) -> Fraction:
    """(a)_j = a (a+1) ... (a+j-1), with (a)_0 = 1."""
    if j < 0:
        raise ValueError("rising factorial needs j >= 0")
    a = Fraction(a)
    out = Fraction(1)
    for t in range(j):
        out *= a + t
    return out


@dataclass(frozen=True)
class HahnSpec:
    N: int
    alpha: int
    beta: int
    ell: int

    def __post_init__(self):
        if self.N < 0 or self.alpha < 0 or self.beta < 0:
            raise ValueError("N, alpha and beta must be nonnegative")
        if not 0 <= self.ell <= self.N:
            raise ValueError(f"degree {self.ell} outside 0..{self.N}")


def hahn_eval(spec: HahnSpec, x: int) -> Fraction:
    """Q^ell_{N; alpha, beta}(x) as a terminating 3F2 sum."""
    N, a, b, ell = spec.N, spec.alpha, spec.beta, spec.ell
    if not 0 <= x <= N:
        raise ValueError(f"x={x} outside 0..{N}")
    total = Fraction(0)
    # (-ell)_k vanishes for k > ell, so (-N)_k in the denominator is never 0 below
    for k in range(ell + 1):
        den = rising_factorial(a + 1, k) * rising_factorial(-N, k) * factorial(k)
        assert den != 0, "(-N)_k vanished inside the truncated range"
        total += rising_factorial(-ell, k) * rising_factorial(ell + a + b + 1, k) * rising_factorial(-x, k) / den
    return total


def hahn(N: int, alpha: int, beta: int, ell: int, x: int) -> Fraction:
    return hahn_eval(HahnSpec(N, alpha, beta, ell), x)


def chebyshev(N: int, ell: int, x: int) -> Fraction:
    """Discrete Chebyshev polynomial: the (0, 0)-Hahn case."""
    return hahn(N, 0, 0, ell, x)


def beta_binomial_weight(N: int, alpha: int, beta: int, i: int) -> Fraction:
    """C(N, i) (alpha+1)_i (beta+1)_{N-i} / (alpha+beta+2)_N."""
    if not 0 <= i <= N:
        raise ValueError(f"i={i} outside 0..{N}")
    return comb(N, i) * rising_factorial(alpha + 1, i) * rising_factorial(beta + 1, N - i) / rising_factorial(alpha + beta + 2, N)


def orthogonality_weight(N: int, alpha: int, beta: int, i: int) -> int:
    """Unnormalized weight C(alpha+i, i) C(N+beta-i, N-i) used in the orthogonality sum."""
    return comb(alpha + i, i) * comb(N + beta - i, N - i)


def hahn_weighted_sum(N: int, alpha: int, beta: int, ell: int, ell2: int) -> Fraction:
    """Brute-force sum_i w(i) Q^ell(i) Q^ell2(i)."""
    p, q = HahnSpec(N, alpha, beta, ell), HahnSpec(N, alpha, beta, ell2)
    return sum(
        (orthogonality_weight(N, alpha, beta, i) * hahn_eval(p, i) * hahn_eval(q, i) for i in range(N + 1)),
        Fraction(0),
    )


def hahn_norm_rhs(N: int, alpha: int, beta: int, ell: int) -> Fraction:
    """Closed form of the diagonal orthogonality sum."""
    HahnSpec(N, alpha, beta, ell)
    num = (-1) ** ell * factorial(ell) * rising_factorial(beta + 1, ell) * rising_factorial(ell + alpha + beta + 1, N + 1)
    den = factorial(N) * (2 * ell + alpha + beta + 1) * rising_factorial(-N, ell) * rising_factorial(alpha + 1, ell)
    return num / den
