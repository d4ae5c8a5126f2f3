"""Run the structure-theorem pipeline over a panel of small rings and print a table."""

import argparse
import time
from dataclasses import dataclass, field

from jordanlab.pipeline import verify_theorem_pipeline
from jordanlab.rings import (
    build_block_triangular_ring,
    build_matrix_ring,
    build_product_ring,
    build_triangular_ring,
    build_zmod,
)


@dataclass
class PanelConfig:
    arities: list[int] = field(default_factory=lambda: [2, 3])
    trials: int = 20
    seed: int = 0


def panel():
    z2, z3, z5 = build_zmod(2), build_zmod(3), build_zmod(5)
    return [
        build_matrix_ring(z3, 2),
        build_triangular_ring(z3, 2),
        build_triangular_ring(z5, 2),
        build_matrix_ring(z2, 2),
        build_product_ring(z3, z3),
        build_block_triangular_ring(z2, 3, [1, 2]),
        build_zmod(9),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=PanelConfig.trials)
    parser.add_argument("--seed", type=int, default=PanelConfig.seed)
    parser.add_argument("--n", type=int, nargs="+", default=None)
    args = parser.parse_args()
    cfg = PanelConfig(args.n or [2, 3], args.trials, args.seed)

    print(f"{'ring':<16}{'n':>3}  {'hypotheses':<11}{'conclusions':<12}{'failed stages':<30}{'sec':>7}")
    for ring in panel():
        for n in cfg.arities:
            t0 = time.perf_counter()
            rep = verify_theorem_pipeline(ring, n=n, trials=cfg.trials, seed=cfg.seed)
            dt = time.perf_counter() - t0
            print(
                f"{ring.name:<16}{n:>3}  {str(rep.hypotheses_met):<11}{str(rep.conclusions_hold):<12}"
                f"{','.join(rep.failed) or '-':<30}{dt:7.2f}"
            )


if __name__ == "__main__":
    main()
