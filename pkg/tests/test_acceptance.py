"""Acceptance criteria, each timed against its runtime limit.

Every test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from jordanlab.decompose import decompose_generalized
from jordanlab.dsl import builtin_identity, eval_identity
from jordanlab.enumeration import (
    DEEP_BUDGET,
    MapClass,
    enumerate_additive_maps,
    enumerate_jordan_n_centralizers,
    fuzz_predicate,
    random_additive_map,
)
from jordanlab.maps import (
    inner_derivation,
    is_derivation,
    is_generalized_jordan_n_derivation,
    is_jordan_n_centralizer,
    is_jordan_n_derivation,
    jordan_n_identity,
    scalar_map,
    zero_map,
)
from jordanlab.peirce import center_commutant, center_peirce, check_condition_2_1, check_spade, is_prime, make_peirce_context
from jordanlab.rings import build_matrix_ring, build_product_ring, build_triangular_ring, build_zmod, nontrivial_idempotents
from jordanlab.rng import SplitMix64

Z3 = build_zmod(3)
M2 = build_matrix_ring(Z3, 2)
T2 = build_triangular_ring(Z3, 2)
Z3Z3 = build_product_ring(Z3, Z3)


def record(number, title, ok, elapsed, limit, detail=""):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    bound = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"[{status}] criterion {number}: {title}: {elapsed:.3f}s{bound}"
    if detail:
        line += f" - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert within, line


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


@pytest.mark.parametrize("ring", [M2, T2], ids=["M2", "T2"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_c1_centralizer_counts(ring, n):
    res, dt = timed(lambda: enumerate_jordan_n_centralizers(ring, n))
    expected = sorted(scalar_map(ring, z).key() for z in center_commutant(ring).elements)
    ok = res.keys() == expected and res.count == 3
    record(1, f"Jordan {n}-centralizers on {ring.name}", ok, dt, 5, f"count {res.count}")


def test_c2_generalized_roundtrip():
    def run():
        bad = []
        for ring in (M2, T2):
            central = sorted(center_commutant(ring).elements)
            for n in (2, 3):
                rng = SplitMix64(2024 + n)
                deltas = [inner_derivation(ring, rng.below(ring.order)) for _ in range(20)]
                for mu in central:
                    for delta in deltas:
                        F = scalar_map(ring, mu) + delta
                        passes = is_generalized_jordan_n_derivation(F, delta, n)
                        rep = decompose_generalized(F, delta, n)
                        if not (passes and rep.mu == mu and rep.all_verified):
                            bad.append((ring.name, n, mu, delta.name))
        return bad

    bad, dt = timed(run)
    record(2, "scalar + inner derivation roundtrips (2 rings x n=2,3 x 3 mu x 20)", not bad, dt, 60, f"{len(bad)} failures")


def test_c3_hypotheses():
    def run():
        pos = all(check_spade(make_peirce_context(r, r.element("E11"))) for r in (M2, T2))
        neg = check_spade(make_peirce_context(Z3Z3, Z3Z3.element("(1,0)")))
        cond = all(check_condition_2_1(r) for r in (M2, T2))
        return pos and not neg.ok and neg.witness == Z3Z3.element("(1,0)") and cond

    ok, dt = timed(run)
    record(3, "spade and condition (2.1) on M2, T2, Z3xZ3", ok, dt, 5)


def test_c4_center_agreement():
    def run():
        for ring in (M2, T2, Z3Z3):
            z = center_commutant(ring).elements
            for e in nontrivial_idempotents(ring):
                if center_peirce(make_peirce_context(ring, e)).elements != z:
                    return False
        return True

    ok, dt = timed(run)
    record(4, "commutant and Peirce centers agree for every nontrivial idempotent", ok, dt, 5)


def _c5_run(workers=1):
    jd = enumerate_additive_maps(T2, MapClass("jordan_n_derivation", 2), workers=workers)
    sing = enumerate_additive_maps(T2, MapClass("singular_jordan_derivation", 2, T2.element("E11")), workers=workers)
    return jd, sing


def test_c5_t2_jordan_derivations():
    (jd, sing), dt = timed(_c5_run)
    ok = jd.count > 0 and all(is_derivation(f) for f in jd.maps) and sing.maps == [zero_map(T2)]
    ok = ok and jd.scanned == 27**3
    record(5, "additive Jordan 2-derivations on T2 are derivations, singular class is {0}", ok, dt, 10,
           f"{jd.count} maps, {jd.scanned} assignments")


def test_c6_primeness():
    def run():
        neg = is_prime(Z3Z3)
        return bool(is_prime(M2)) and not neg.ok and neg.witness == (Z3Z3.element("(1,0)"), Z3Z3.element("(0,1)"))

    ok, dt = timed(run)
    record(6, "M2 prime, Z3xZ3 not prime with witness ((1,0),(0,1))", ok, dt, 30)


def _agree(ring, ast, bindings, native):
    res = eval_identity(ring, ast, bindings)
    if res.ok != native.ok:
        return False
    return res.ok or tuple(res.counterexample.values()) == native.witness


def test_c7_dsl_native_equivalence():
    def run():
        jd_maps = _c5_run()[0].maps
        checked = mismatches = 0
        for ring in (T2, M2):
            rng = SplitMix64(7)
            randoms = [random_additive_map(ring, rng) for _ in range(50)]
            extra = jd_maps if ring is T2 else [inner_derivation(ring, ring.element("E12"))]
            for n in (2, 3):
                jdn = builtin_identity("jordan_n_derivation", n)
                cen = builtin_identity("jordan_n_centralizer", n)
                gen = builtin_identity("generalized_jordan_n_derivation", n)
                for i, f in enumerate(randoms + extra):
                    d = extra[i % len(extra)]
                    pairs = [
                        (jdn, {"D": f}, is_jordan_n_derivation(f, n)),
                        (cen, {"F": f}, is_jordan_n_centralizer(f, n)),
                        (gen, {"F": f, "D": d}, jordan_n_identity(f, d, n)),
                    ]
                    for ast, bindings, native in pairs:
                        checked += 1
                        mismatches += not _agree(ring, ast, bindings, native)
        return checked, mismatches

    (checked, mismatches), dt = timed(run)
    record(7, "builtin identities agree with native predicates", mismatches == 0, dt, 60,
           f"{checked} comparisons, {mismatches} mismatches")


def test_c8_determinism():
    def run():
        for ring in (M2, T2):
            for n in (2, 3, 4):
                a = enumerate_jordan_n_centralizers(ring, n, workers=1)
                b = enumerate_jordan_n_centralizers(ring, n, workers=8)
                if a.to_json()["maps"] != b.to_json()["maps"] or a.count != b.count:
                    return False
        one, eight = _c5_run(1), _c5_run(8)
        for x, y in zip(one, eight):
            if x.to_json()["maps"] != y.to_json()["maps"] or (x.count, x.pruned) != (y.count, y.pruned):
                return False
        base = one[0].maps[-1]
        pred = lambda f: is_jordan_n_derivation(f, 2).ok
        return fuzz_predicate(T2, base, pred, 25, 3).to_json() == fuzz_predicate(T2, base, pred, 25, 3).to_json()

    ok, dt = timed(run)
    record(8, "results identical for 1 and 8 workers, fuzz reports reproducible", ok, dt, None)


def test_c9_deep_m2_jordan_derivations():
    res, dt = timed(lambda: enumerate_additive_maps(M2, MapClass("jordan_n_derivation", 2), budget=DEEP_BUDGET))
    ok = res.count > 0 and all(is_derivation(f) for f in res.maps) and res.scanned == 81**4
    record(9, "deep: additive Jordan 2-derivations on M2 are derivations", ok, dt, 600,
           f"{res.count} maps, {res.scanned} assignments, {res.pruned} pruned")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
