"""Enumerate additive Jordan n-derivations on M2(Z3) at full scale (81^4 generator assignments).

Prints the counters and checks that every survivor satisfies the Leibniz rule.
"""

import argparse
import json
from dataclasses import asdict, dataclass

from jordanlab.enumeration import DEEP_BUDGET, MapClass, default_workers, enumerate_additive_maps
from jordanlab.maps import is_derivation
from jordanlab.rings import build_matrix_ring, build_zmod


@dataclass
class DeepConfig:
    modulus: int = 3
    size: int = 2
    n: int = 2
    workers: int = 1
    budget: int = DEEP_BUDGET


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--modulus", type=int, default=DeepConfig.modulus)
    parser.add_argument("--n", type=int, default=DeepConfig.n)
    parser.add_argument("--workers", type=int, default=default_workers())
    parser.add_argument("--budget", type=int, default=DeepConfig.budget)
    args = parser.parse_args()
    cfg = DeepConfig(args.modulus, 2, args.n, args.workers, args.budget)

    ring = build_matrix_ring(build_zmod(cfg.modulus), cfg.size)
    res = enumerate_additive_maps(ring, MapClass("jordan_n_derivation", cfg.n), cfg.budget, cfg.workers)
    non_derivations = [f.key() for f in res.maps if not is_derivation(f)]
    summary = res.to_json(include_maps=False)
    summary["config"] = asdict(cfg)
    summary["all_derivations"] = not non_derivations
    print(json.dumps(summary, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
