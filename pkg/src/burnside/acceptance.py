"""The eleven acceptance checks, shared by the CLI and the test suite.

Each check returns a CriterionResult; nothing here raises on a failed check.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

import numpy as np

from . import chain, mixing, orthopoly, sl2, wz
from .eigenbasis import beta, figure_order, full_basis, iter_basis, t_scalar
from .tensor import inner_product, states_in_display_order

F = Fraction

# n = 3 reference tables, rows in table order; each row is (m, l, second row, values 000..111[, norm]).
FIGURE_G = [
    (0, 0, (), (1, 0, 0, 0, 0, 0, 0, 0)),
    (0, 1, (), (0, 1, 1, 0, 1, 0, 0, 0)),
    (1, 0, (3,), (0, 1, F(-1, 2), 0, F(-1, 2), 0, 0, 0)),
    (1, 0, (2,), (0, 0, 1, 0, -1, 0, 0, 0)),
    (0, 2, (), (0, 0, 0, 1, 0, 1, 1, 0)),
    (1, 1, (3,), (0, 0, 0, F(1, 2), 0, F(1, 2), -1, 0)),
    (1, 1, (2,), (0, 0, 0, 1, 0, -1, 0, 0)),
    (0, 3, (), (0, 0, 0, 0, 0, 0, 0, 1)),
]

FIGURE_F = [
    (0, 0, (), (1, 1, 1, 1, 1, 1, 1, 1), F(1)),
    (0, 1, (), (3, 1, 1, -1, 1, -1, -1, -3), F(5)),
    (1, 0, (3,), (0, -2, 1, -1, 1, -1, 2, 0), F(1)),
    (1, 0, (2,), (0, 0, -2, -2, 2, 2, 0, 0), F(4, 3)),
    (0, 2, (), (3, -3, -3, -3, -3, -3, -3, 3), F(9)),
    (1, 1, (3,), (0, -3, F(3, 2), F(3, 2), F(3, 2), F(3, 2), -3, 0), F(9, 4)),
    (1, 1, (2,), (0, 0, -3, 3, 3, -3, 0, 0), F(3)),
    (0, 3, (), (1, -3, -3, 3, -3, 3, 3, -1), F(5)),
]

# Expansions of K_4 and K_6 as coefficient -> set of (x, y, z).
EXPANSION_4 = {
    F(1): {(4, 0, 0)},
    F(1, 4): {(2, 2, 0), (2, 0, 2)},
    F(9, 64): {(0, 4, 0), (0, 0, 4)},
    F(1, 64): {(0, 2, 2)},
}
EXPANSION_6 = {
    F(1): {(6, 0, 0)},
    F(1, 4): {(4, 2, 0), (4, 0, 2)},
    F(9, 64): {(2, 4, 0), (2, 0, 4)},
    F(1, 64): {(2, 2, 2)},
    F(25, 256): {(0, 6, 0), (0, 0, 6)},
    F(1, 256): {(0, 2, 4), (0, 4, 2)},
}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}"

    def to_json_obj(self, with_time: bool = False) -> dict:
        obj = {"criterion": self.number, "name": self.name, "passed": self.passed, "detail": self.detail}
        if with_time:
            obj["seconds"] = round(self.seconds, 3)
        return obj


@dataclass(frozen=True)
class AcceptanceConfig:
    max_n: int = 12
    slow: bool = False
    seed: int = 20240601
    draws: int = 1_000_000


def _timed(number: int, name: str, body: Callable[[], tuple[bool, dict]]) -> CriterionResult:
    start = time.perf_counter()
    passed, detail = body()
    return CriterionResult(number, name, bool(passed), detail, time.perf_counter() - start)


def _table_rows(n: int) -> list:
    return figure_order(full_basis(n))


def figure_mismatches() -> list[str]:
    order = states_in_display_order(3)
    rows = _table_rows(3)
    bad = []
    for entry, (m, ell, row, g_vals) in zip(rows, FIGURE_G):
        if (entry.m, entry.ell, entry.Q.second_row) != (m, ell, row):
            bad.append(f"g row order at {(m, ell, row)}")
        elif [entry.g[s] for s in order] != [F(v) for v in g_vals]:
            bad.append(f"g values at {(m, ell, row)}")
    for entry, (m, ell, row, f_vals, norm) in zip(rows, FIGURE_F):
        if (entry.m, entry.ell, entry.Q.second_row) != (m, ell, row):
            bad.append(f"f row order at {(m, ell, row)}")
            continue
        if [entry.vector[s] for s in order] != [F(v) for v in f_vals]:
            bad.append(f"f values at {(m, ell, row)}")
        if entry.sq_norm != norm or inner_product(entry.vector, entry.vector) != norm:
            bad.append(f"norm at {(m, ell, row)}")
    if len(rows) != 8:
        bad.append(f"{len(rows)} rows")
    return bad


def criterion_1(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        bad = figure_mismatches()
        return not bad, {"mismatches": bad}

    return _timed(1, "n=3 g and f tables and squared norms match the reference values", body)


def criterion_2(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        detail = {}
        ok = True
        for n in range(1, min(cfg.max_n, chain.DENSE_CAP) + 1):
            entries = full_basis(n)
            vecs = [e.vector for e in entries]
            nonzero_pairs = sum(
                1 for a in range(len(vecs)) for b in range(a) if inner_product(vecs[a], vecs[b]) != 0
            )
            wrong_eigen = sum(1 for e, v in zip(entries, vecs) if chain.apply_K(v) != v * e.eigenvalue)
            detail[n] = {"pairs": len(vecs) * (len(vecs) - 1) // 2, "nonzero_pairs": nonzero_pairs, "wrong_eigen": wrong_eigen}
            ok &= nonzero_pairs == 0 and wrong_eigen == 0 and len(vecs) == 2**n
        return ok, detail

    return _timed(2, "eigenbasis is orthogonal and K acts by the stated eigenvalues", body)


def criterion_3(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        rng = random.Random(cfg.seed)
        detail = {}
        ok = True
        for n in range(1, min(cfg.max_n, 10) + 1):
            entries = list(iter_basis(n))
            if n > 8:
                entries = [rng.choice(entries) for _ in range(1000)]
            bad = sum(1 for e in entries if inner_product(e.vector, e.vector) != e.sq_norm)
            detail[n] = {"checked": len(entries), "mismatches": bad}
            ok &= bad == 0
        return ok, detail

    return _timed(3, "closed-form squared norms equal direct inner products", body)


def expected_multiplicities(n: int) -> dict[Fraction, int]:
    out = {F(0): 2 ** (n - 1)}
    for k in range(n // 2 + 1):
        out[beta(k)] = comb(n, 2 * k)
    return out


def criterion_4(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        detail = {}
        ok = True
        for n in range(1, min(cfg.max_n, chain.NUMERIC_CAP) + 1):
            clusters = chain.numeric_spectrum(n)
            got = {c.exact: c.multiplicity for c in clusters}
            want = expected_multiplicities(n)
            good = None not in got and got == want
            detail[n] = {str(k): v for k, v in got.items()}
            ok &= good
        return ok, detail

    return _timed(4, "numeric eigenvalue multiplicities match C(n, 2k) and 2^(n-1)", body)


def criterion_5(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        outside = [
            (n, s) for n in range(3, 201) for s in range(3, 11) if not mixing.chi_square_one_ones(n, s).within_bounds()
        ]
        coeff = mixing.leading_coefficient(500)
        rel = abs(float(coeff) - mixing.ASYMPTOTIC_CONSTANT) / mixing.ASYMPTOTIC_CONSTANT
        detail = {"outside_bounds": outside[:10], "leading_coefficient_500": float(coeff), "relative_error": rel}
        return not outside and rel <= 0.05, detail

    return _timed(5, "one-ones chi-square lies between 5 and 270 times (1/4)^(2s)", body)


def criterion_6(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        bad = []
        for n in range(1, min(cfg.max_n, 6) + 1):
            for x in range(1 << n):
                for s in range(1, 5):
                    if mixing.chi_square(x, s, n).chi_square != mixing.chi_square_direct(x, s, n):
                        bad.append((n, x, s))
        return not bad, {"mismatches": bad[:10]}

    return _timed(6, "eigenbasis chi-square equals the matrix-power definition", body)


def criterion_7(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        ortho_bad = []
        for N in range(0, 13):
            for a in range(4):
                for l1 in range(N + 1):
                    for l2 in range(l1, N + 1):
                        got = orthopoly.hahn_weighted_sum(N, a, a, l1, l2)
                        want = orthopoly.hahn_norm_rhs(N, a, a, l1) if l1 == l2 else 0
                        if got != want:
                            ortho_bad.append((N, a, l1, l2))
        hahn_bad = []
        for n in range(1, min(cfg.max_n, 10) + 1):
            for m in range(n // 2 + 1):
                N = n - 2 * m
                for ell in range(N + 1):
                    scale = F((-1) ** m, comb(N, ell) * comb(2 * m + ell, m))
                    for i in range(N + 1):
                        if orthopoly.hahn(N, m, m, ell, i) != scale * t_scalar(m, n, ell, i):
                            hahn_bad.append((n, m, ell, i))
        return not ortho_bad and not hahn_bad, {"orthogonality": ortho_bad[:10], "scalar_identity": hahn_bad[:10]}

    return _timed(7, "Hahn orthogonality, norms and the scalar identity", body)


def criterion_8(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        holds = {n: chain.check_lumping(n).holds for n in range(2, min(cfg.max_n, chain.DENSE_CAP) + 1)}
        control = chain.check_lumping(3, chain.perturbed_kernel(3, 0b101, 0b011))
        return all(holds.values()) and not control.holds, {"holds": holds, "perturbation_detected": not control.holds}

    return _timed(8, "lumping identity holds and a perturbed entry is caught", body)


def criterion_9(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        top = 10 if cfg.slow else min(cfg.max_n, 8)
        reports = {n: sl2.verify_sl2_conjecture(n) for n in range(1, top + 1)}
        terms_ok = True
        for n, want in ((4, EXPANSION_4), (6, EXPANSION_6)):
            got = {t.coefficient: set(t.counts) for t in sl2.conjecture_terms(n)}
            terms_ok &= got == want
        r = reports[max(reports)]
        detail = {
            "holds": {n: rep.holds for n, rep in reports.items()},
            "term_lists_match": terms_ok,
            "c_2k0_equals_beta_k": r.pure_matches_beta,
            "c_kk_equals_beta_k": r.diagonal_matches_beta,
        }
        return all(rep.holds for rep in reports.values()) and terms_ok, detail

    return _timed(9, "p+/p-/p+h expansion reproduces K_n exactly", body)


def criterion_10(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        brute_bad = [
            (n, m, a, b)
            for n in range(0, 13)
            for m in range(n // 2 + 1)
            for a in range(n - 2 * m + 1)
            for b in range(a + 1, n - 2 * m + 1)
            if wz.brute_force_identity(n, m, a, b) != 0
        ]
        report = wz.check_certificates(min(cfg.max_n, 8))
        base = all(wz.base_case(m, 8) for m in range(0, 5))
        detail = {"brute_force_failures": brute_bad[:10], "certificates": report.to_json_obj(), "base_case": base}
        return not brute_bad and report.ok and base, detail

    return _timed(10, "triple-sum identity and telescoping certificates", body)


def criterion_11(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        n = 6
        rng = np.random.default_rng(cfg.seed)
        worst = 0.0
        for x in range(1 << n):
            freq = chain.empirical_row(x, n, cfg.draws, rng)
            exact = [float(q) for q in chain.k_row(x, n)]
            worst = max(worst, chain.total_variation(freq, exact))
        occupancy = chain.orbit_occupancy(n, cfg.draws, rng)
        orbit_tv = chain.total_variation(occupancy, [1 / (n + 1)] * (n + 1))
        detail = {"worst_row_tv": round(worst, 6), "orbit_tv": round(orbit_tv, 6), "draws": cfg.draws}
        return worst <= 0.005 and orbit_tv <= 0.01, detail

    return _timed(11, "sampler rows and orbit occupancy match the exact chain", body)


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
}


def run_all(cfg: AcceptanceConfig | None = None, only: list[int] | None = None) -> list[CriterionResult]:
    cfg = cfg or AcceptanceConfig()
    return [CRITERIA[k](cfg) for k in sorted(only or CRITERIA)]
