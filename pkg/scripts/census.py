"""Count additive maps per class on small rings with a nontrivial idempotent."""

import argparse

from jordanlab.enumeration import CLASS_NAMES, MapClass, enumerate_additive_maps
from jordanlab.errors import BudgetExceeded
from jordanlab.pipeline import default_idempotent
from jordanlab.rings import build_matrix_ring, build_product_ring, build_triangular_ring, build_zmod


def rings():
    z2, z3, z5 = build_zmod(2), build_zmod(3), build_zmod(5)
    return [
        build_triangular_ring(z2, 2),
        build_triangular_ring(z3, 2),
        build_triangular_ring(z5, 2),
        build_product_ring(z3, z3),
        build_matrix_ring(z2, 2),
        build_matrix_ring(z3, 2),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--budget", type=int, default=10**8)
    args = parser.parse_args()
    names = [c if c != "jordan_n_derivation" else "jordan_2" for c in CLASS_NAMES]
    print(f"{'ring':<12}" + "".join(f"{c[:14]:>16}" for c in names))
    for ring in rings():
        e1 = default_idempotent(ring)
        row = []
        for name in CLASS_NAMES:
            try:
                res = enumerate_additive_maps(ring, MapClass(name, 2, e1), args.budget)
                row.append(str(res.count))
            except (BudgetExceeded, ValueError) as exc:
                row.append("budget" if isinstance(exc, BudgetExceeded) else "n/a")
        print(f"{ring.name:<12}" + "".join(f"{c:>16}" for c in row))


if __name__ == "__main__":
    main()
