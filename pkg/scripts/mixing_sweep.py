"""Ratio of the one-ones chi-square distance to (1/4)^(2s) across n and s.

Writes CSV to stdout: n, s, chi-square as a float, ratio, and whether the
ratio lies in [5, 270]. A final comment line reports the leading
coefficient at the largest n, which tends to 35.
"""

import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

from burnside.mixing import chi_square_one_ones, leading_coefficient


@dataclass(frozen=True)
class SweepConfig:
    ns: tuple[int, ...] = (3, 4, 5, 6, 8, 10, 16, 32, 64, 128, 256, 500)
    steps: tuple[int, ...] = (3, 4, 6, 10)


def main(cfg: SweepConfig) -> None:
    out = csv.writer(sys.stdout)
    out.writerow(["n", "s", "chi_square", "ratio", "within_bounds"])
    for n in cfg.ns:
        for s in cfg.steps:
            r = chi_square_one_ones(n, s)
            ratio = r.chi_square / Fraction(1, 16**s)
            out.writerow([n, s, f"{float(r.chi_square):.6e}", f"{float(ratio):.4f}", r.within_bounds()])
    top = max(cfg.ns)
    print(f"# leading coefficient at n={top}: {float(leading_coefficient(top)):.4f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ns", type=int, nargs="+", default=SweepConfig.ns)
    p.add_argument("--steps", type=int, nargs="+", default=SweepConfig.steps)
    a = p.parse_args()
    main(SweepConfig(tuple(a.ns), tuple(a.steps)))
