"""Monte Carlo check of the sampler against the exact kernel.

For each start state at the given n, draws one step many times and reports
the total-variation distance from the exact row, then the orbit occupancy
of a long run against the uniform law on levels.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from burnside.chain import empirical_row, k_row, orbit_occupancy, total_variation
from burnside.tensor import mask_to_string


@dataclass(frozen=True)
class SamplerConfig:
    n: int = 5
    draws: int = 200_000
    seed: int = 20240601


def main(cfg: SamplerConfig) -> None:
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for x in range(1 << cfg.n):
        tv = total_variation(empirical_row(x, cfg.n, cfg.draws, rng), [float(q) for q in k_row(x, cfg.n)])
        worst = max(worst, tv)
        print(f"{mask_to_string(x, cfg.n)}  tv={tv:.5f}")
    occ = orbit_occupancy(cfg.n, cfg.draws, rng)
    print(f"worst row tv: {worst:.5f}")
    print(f"orbit occupancy tv: {total_variation(occ, [1 / (cfg.n + 1)] * (cfg.n + 1)):.5f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=SamplerConfig.n)
    p.add_argument("--draws", type=int, default=SamplerConfig.draws)
    p.add_argument("--seed", type=int, default=SamplerConfig.seed)
    a = p.parse_args()
    main(SamplerConfig(a.n, a.draws, a.seed))
