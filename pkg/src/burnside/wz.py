"""Integer-point verification of the telescoping proof of f_T orthogonality.

The quantity of interest is the triple sum over (i, j1, j2) of P, where P is
the summand below.  Certificates Q_I, Q_J1, Q_J2 are given as rational
multiples of P.  Their denominators vanish at some lattice points, always
where P does too; there the value is the removable limit, taken from a
pole-free closed form that agrees with multiplier * P everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .eigenbasis import column_reading_entry


@lru_cache(maxsize=None)
def binom(a: int, b: int) -> int:
    """C(a, b), zero whenever a < 0, b < 0 or b > a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class WZPoint:
    n: int
    m: int
    l1: int
    l2: int
    i: int
    j1: int
    j2: int

    @property
    def is_valid(self) -> bool:
        top = self.n - 2 * self.m
        return (
            self.m >= 0
            and top >= 0
            and 0 <= self.l1 <= top
            and 0 <= self.l2 <= top
            and 0 <= self.j1 <= self.i <= top
            and 0 <= self.j2 <= self.i
        )

    def shift(self, **delta: int) -> "WZPoint":
        fields = {k: getattr(self, k) + delta.get(k, 0) for k in ("n", "m", "l1", "l2", "i", "j1", "j2")}
        return WZPoint(**fields)


def summand_core(p: WZPoint) -> int:
    """P without the (l1 - l2) factor."""
    n, m, l1, l2, i, j1, j2 = p.n, p.m, p.l1, p.l2, p.i, p.j1, p.j2
    rest = n - 2 * m - i
    return (
        _sign(j1 + j2)
        * binom(2 * m + l1, m + j1)
        * binom(2 * m + l2, m + j2)
        * binom(i, j1)
        * binom(i, j2)
        * binom(rest, l1 - j1)
        * binom(rest, l2 - j2)
        * binom(m + i, i)
        * binom(n - m - i, m)
    )


def summand_P(p: WZPoint) -> int:
    return summand_core(p) * (p.l1 - p.l2)


def brute_force_identity(n: int, m: int, l1: int, l2: int) -> int:
    """Triple sum over 0 <= j1, j2 <= i <= n - 2m of P / (l1 - l2).

    The (l1 - l2) factor is dropped so the same sum serves l1 = l2 as well.
    """
    if m < 0 or 2 * m > n:
        raise ValueError(f"m={m} invalid for n={n}")
    total = 0
    for i in range(n - 2 * m + 1):
        for j1 in range(i + 1):
            for j2 in range(i + 1):
                total += summand_core(WZPoint(n, m, l1, l2, i, j1, j2))
    return total


def inner_product_scale(n: int, m: int) -> Fraction:
    """<f_T^{m,l1}, f_T^{m,l2}> equals this constant times brute_force_identity."""
    return Fraction(2**m * factorial(n - 2 * m) * factorial(m) ** 2, (n + 1) * factorial(n))


def norm_from_identity(n: int, m: int, ell: int) -> Fraction:
    return inner_product_scale(n, m) * brute_force_identity(n, m, ell, ell)


def closed_norm(n: int, m: int, ell: int) -> Fraction:
    return column_reading_entry(n, m, ell).sq_norm


# ---------------------------------------------------------------------------
# certificates


def multiplier_I(p: WZPoint) -> tuple[int, int]:
    """(numerator, denominator) of Q_I / P."""
    n, m, i, j1, j2 = p.n, p.m, p.i, p.j1, p.j2
    num = (
        -j1 + 2 * i * j1 - i**2 * j1 + j2 - 2 * i * j2 + i**2 * j2
        + 3 * j1 * m - 3 * i * j1 * m - 3 * j2 * m + 3 * i * j2 * m
        - 2 * j1 * m**2 + 2 * j2 * m**2 - 2 * j1 * n + 2 * i * j1 * n + 2 * j2 * n - 2 * i * j2 * n
        + 3 * j1 * m * n - 3 * j2 * m * n - j1 * n**2 + j2 * n**2
    )
    den = (p.l1 - p.l2) * (-1 + i - j1 + p.l1 + 2 * m - n) * (-1 + i - j2 + p.l2 + 2 * m - n)
    return num, den


def multiplier_J1(p: WZPoint) -> tuple[int, int]:
    return -p.j1 * p.j1 - p.j1 * p.m, (1 + p.i - p.j1) * (p.l1 - p.l2)


def multiplier_J2(p: WZPoint) -> tuple[int, int]:
    return p.j2 * p.j2 + p.j2 * p.m, (1 + p.i - p.j2) * (p.l1 - p.l2)


def _closed_I(p: WZPoint) -> Fraction:
    # the factor (n-i+1-m)(n-i+1-2m) of the numerator cancels into the shifted binomials
    n, m, l1, l2, i, j1, j2 = p.n, p.m, p.l1, p.l2, p.i, p.j1, p.j2
    rest = n - 2 * m - i
    return Fraction(
        -(j1 - j2)
        * _sign(j1 + j2)
        * binom(2 * m + l1, m + j1)
        * binom(2 * m + l2, m + j2)
        * binom(i, j1)
        * binom(i, j2)
        * binom(rest + 1, l1 - j1)
        * binom(rest + 1, l2 - j2)
        * binom(m + i, i)
        * binom(n - m - i + 1, m)
    )


def _closed_J(p: WZPoint, which: int) -> Fraction:
    n, m, l1, l2, i, j1, j2 = p.n, p.m, p.l1, p.l2, p.i, p.j1, p.j2
    if i + 1 == 0:
        return Fraction(0)
    rest = n - 2 * m - i
    j = j1 if which == 1 else j2
    b1 = binom(i + 1, j1) if which == 1 else binom(i, j1) * (i + 1)
    b2 = binom(i + 1, j2) if which == 2 else binom(i, j2) * (i + 1)
    value = (
        _sign(j1 + j2)
        * binom(2 * m + l1, m + j1)
        * binom(2 * m + l2, m + j2)
        * b1
        * b2
        * binom(rest, l1 - j1)
        * binom(rest, l2 - j2)
        * binom(m + i, i)
        * binom(n - m - i, m)
    )
    sign = -1 if which == 1 else 1
    return Fraction(sign * j * (j + m) * value, (i + 1) ** 2)


class CertificateError(ArithmeticError):
    """A multiplier denominator vanished where P does not."""


@dataclass
class CertificateStats:
    via_multiplier: int = 0
    removable: int = 0
    mismatches: int = 0


@lru_cache(maxsize=1 << 18)
def _certificate_value(p: WZPoint, which: str) -> tuple[Fraction, bool, bool]:
    """(value, came from the multiplier, agrees with the closed form)."""
    mult = {"I": multiplier_I, "J1": multiplier_J1, "J2": multiplier_J2}[which]
    closed = _closed_I(p) if which == "I" else _closed_J(p, 1 if which == "J1" else 2)
    num, den = mult(p)
    P = summand_P(p)
    if den:
        value = Fraction(num * P, den)
        return value, True, value == closed
    if P:
        raise CertificateError(f"Q_{which} denominator vanishes at {p} where P = {P}")
    return closed, False, True


def certificate(p: WZPoint, which: str, stats: CertificateStats | None = None) -> Fraction:
    """Q_I, Q_J1 or Q_J2 at p, as multiplier * P with removable points filled in."""
    value, direct, agrees = _certificate_value(p, which)
    if stats is not None:
        if direct:
            stats.via_multiplier += 1
            stats.mismatches += not agrees
        else:
            stats.removable += 1
    return value


def telescoping_sides(p: WZPoint, stats: CertificateStats | None = None) -> tuple[Fraction, Fraction]:
    """(P(n+1) - P(n), sum of the three certificate differences) at p."""
    lhs = Fraction(summand_P(p.shift(n=1)) - summand_P(p))
    rhs = (
        certificate(p.shift(i=1), "I", stats) - certificate(p, "I", stats)
        + certificate(p.shift(j1=1), "J1", stats) - certificate(p, "J1", stats)
        + certificate(p.shift(j2=1), "J2", stats) - certificate(p, "J2", stats)
    )
    return lhs, rhs


@dataclass(frozen=True)
class CertificateReport:
    max_n: int
    points: int
    holds: bool
    first_failure: dict | None
    via_multiplier: int
    removable: int
    multiplier_mismatches: int
    boundary_sum_zero: bool
    pairing_holds: bool

    @property
    def ok(self) -> bool:
        return self.holds and self.multiplier_mismatches == 0 and self.boundary_sum_zero and self.pairing_holds

    def to_json_obj(self) -> dict:
        return {
            "max_n": self.max_n,
            "points": self.points,
            "holds": self.holds,
            "first_failure": self.first_failure,
            "via_multiplier": self.via_multiplier,
            "removable": self.removable,
            "multiplier_mismatches": self.multiplier_mismatches,
            "boundary_sum_zero": self.boundary_sum_zero,
            "pairing_holds": self.pairing_holds,
            "ok": self.ok,
        }


def _box(n: int, m: int, pad: int = 2):
    """(i, j1, j2) over a box that strictly contains the support of P at n and n + 1."""
    for i in range(-pad, n - 2 * m + pad + 1):
        for j1 in range(-pad, i + pad + 1):
            for j2 in range(-pad, i + pad + 1):
                yield i, j1, j2


def check_certificates(max_n: int) -> CertificateReport:
    """Telescoping relation at every point of a padded box, for 2m <= n < max_n.

    l1 and l2 range over 0..max_n - 2m at every n, so the chain of n-steps
    from the base case n = 2m up to max_n is covered.
    """
    stats = CertificateStats()
    failure = None
    points = 0
    boundary_ok = True
    pairing_ok = True
    for m in range(max_n // 2 + 1):
        top = max_n - 2 * m
        for l1 in range(top + 1):
            for l2 in range(top + 1):
                for n in range(2 * m, max_n):
                    boundary = Fraction(0)
                    for i, j1, j2 in _box(n, m):
                        p = WZPoint(n, m, l1, l2, i, j1, j2)
                        try:
                            lhs, rhs = telescoping_sides(p, stats)
                        except CertificateError as exc:
                            return CertificateReport(max_n, points, False, {"point": p.__dict__, "error": str(exc)},
                                                     stats.via_multiplier, stats.removable, stats.mismatches, False, False)
                        points += 1
                        if lhs != rhs and failure is None:
                            failure = {"point": p.__dict__, "lhs": str(lhs), "rhs": str(rhs)}
                        if i == 0:
                            boundary += certificate(p, "I")
                        if l1 != l2 and multiplier_J1(p)[1]:
                            a = Fraction(*multiplier_J1(p))
                            b = Fraction(*multiplier_J2(WZPoint(n, m, l1, l2, i, j2, j1)))
                            pairing_ok &= a == -b
                    boundary_ok &= boundary == 0
    return CertificateReport(
        max_n, points, failure is None, failure, stats.via_multiplier, stats.removable, stats.mismatches, boundary_ok, pairing_ok
    )


def q_i_antisymmetric_at_zero(n: int, m: int, l1: int, l2: int, span: int = 3) -> bool:
    """Q_I at i = 0 changes sign when j1 and j2 are swapped."""
    for j1 in range(-span, span + 1):
        for j2 in range(-span, span + 1):
            a = certificate(WZPoint(n, m, l1, l2, 0, j1, j2), "I")
            b = certificate(WZPoint(n, m, l1, l2, 0, j2, j1), "I")
            if a != -b:
                return False
    return True


def base_case(m: int, max_ell: int) -> bool:
    """At n = 2m the summed core vanishes for every l1 != l2 up to max_ell."""
    n = 2 * m
    for l1 in range(max_ell + 1):
        for l2 in range(max_ell + 1):
            if l1 == l2:
                continue
            total = 0
            for i, j1, j2 in _box(n, m):
                total += summand_core(WZPoint(n, m, l1, l2, i, j1, j2))
            if total:
                return False
    return True
