"""Exhaustive searches over map classes.

Two strategies:

* Jordan n-centralizers are pinned down by their value at 1 through the half
  law 2F(t) = F(1) o t, so scanning ``|A|`` candidates covers every map, not
  only additive ones.
* Additive maps in a class are found by backtracking over generator images.
  Each class law is multi-additive in its arguments, so for an additive map it
  suffices to test it on generator tuples; a tuple is tested as soon as every
  generator image it touches is assigned.  Survivors are re-checked with the
  full predicate.
"""

from __future__ import annotations

import itertools
import multiprocessing
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import maps
from .errors import BudgetExceeded, Check, UnsupportedOperation
from .maps import RingMap
from .peirce import PeirceContext, make_peirce_context
from .rings import FiniteRing, is_two_torsion_free, subgroup_generators
from .rng import SplitMix64

DEFAULT_BUDGET = 10**6
DEEP_BUDGET = 10**8

CLASS_NAMES = ("derivation", "jordan_n_derivation", "centralizer", "antiderivation", "singular_jordan_derivation")


@dataclass(frozen=True)
class MapClass:
    """A class of additive maps: name, arity for Jordan classes, idempotent for singular ones."""

    name: str
    n: int = 2
    e1: int | None = None

    def __post_init__(self):
        if self.name not in CLASS_NAMES:
            raise ValueError(f"unknown map class {self.name!r}; expected one of {CLASS_NAMES}")
        if self.name == "singular_jordan_derivation" and self.e1 is None:
            raise ValueError("singular_jordan_derivation needs an idempotent e1")

    @property
    def label(self) -> str:
        if self.name == "jordan_n_derivation":
            return f"jordan_{self.n}_derivation_additive"
        return f"{self.name}_additive"

    def context(self, ring: FiniteRing) -> PeirceContext | None:
        return make_peirce_context(ring, self.e1) if self.e1 is not None else None

    def predicate(self, f: RingMap, ctx: PeirceContext | None = None) -> Check:
        if self.name == "derivation":
            return maps.is_derivation(f)
        if self.name == "centralizer":
            return maps.is_centralizer(f)
        if self.name == "antiderivation":
            return maps.is_antiderivation(f)
        if self.name == "singular_jordan_derivation":
            return maps.is_singular_jordan_derivation(f, ctx or self.context(f.ring))
        add = maps.is_additive(f)
        if not add:
            return add
        return maps.jordan_n_identity(f, f, self.n)


@dataclass
class EnumerationResult:
    class_name: str
    ring: str
    count: int
    maps: list[RingMap]
    scanned: int
    pruned: int
    rejected: int
    elapsed: float = 0.0
    truncated: bool = False

    def keys(self) -> list[tuple[int, ...]]:
        return [f.key() for f in self.maps]

    def to_json(self, include_maps: bool = True) -> dict:
        out = {
            "class": self.class_name,
            "ring": self.ring,
            "count": self.count,
            "scanned": self.scanned,
            "pruned": self.pruned,
            "rejected": self.rejected,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }
        if include_maps:
            out["maps"] = [list(k) for k in self.keys()]
        return out


@dataclass
class FuzzReport:
    trials: int
    seed: int
    failures: int
    siblings: list[tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "failures": self.failures,
            "siblings": [list(s) for s in self.siblings],
        }


# -- worker plumbing -------------------------------------------------------


def _partitions(candidates, workers):
    return [candidates[k::workers] for k in range(workers)]


def _run_parallel(fn, jobs, workers):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*job) for job in jobs]
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        ctx = None
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        futures = [pool.submit(fn, *job) for job in jobs]
        return [fut.result() for fut in futures]


def default_workers() -> int:
    return os.cpu_count() or 1


# -- Jordan n-centralizers -------------------------------------------------


def _centralizer_partition(ring, n, candidates):
    J, half, dbl = ring.jordan_table, ring.half_table, ring.double_table
    keep, pruned = [], 0
    for mu in candidates:
        img = half[J[mu]]
        # the law restricted to tuples (t1, t2, 1, ..., 1) is a necessary condition
        lhs, rhs = J, J[img]
        for _ in range(n - 2):
            lhs, rhs = dbl[lhs], dbl[rhs]
        if not (img[lhs] == rhs).all():
            pruned += 1
            continue
        phi = RingMap(ring, img)
        if maps.is_jordan_n_centralizer(phi, n):
            keep.append(phi.key())
    return keep, pruned


def enumerate_jordan_n_centralizers(ring: FiniteRing, n: int, workers: int = 1) -> EnumerationResult:
    """All maps (additive or not) satisfying the Jordan n-centralizer law."""
    start = time.perf_counter()
    torsion = is_two_torsion_free(ring)
    if not torsion:
        raise UnsupportedOperation(
            f"{ring.name} has 2-torsion (witness {torsion.witness}); the half law does not determine the map"
        )
    if n < 2:
        raise ValueError("arity must be at least 2")
    ring.half_table  # build once before forking
    jobs = [(ring, n, part) for part in _partitions(list(range(ring.order)), max(1, workers)) if part]
    results = _run_parallel(_centralizer_partition, jobs, workers)
    keys = sorted(k for part, _ in results for k in part)
    pruned = sum(p for _, p in results)
    found = [RingMap(ring, k, f"centralizer[{ring.label(int(k[ring.one]))}]") for k in keys]
    return EnumerationResult(
        class_name=f"jordan_{n}_centralizer",
        ring=ring.name,
        count=len(found),
        maps=found,
        scanned=ring.order,
        pruned=pruned,
        rejected=ring.order - len(found) - pruned,
        elapsed=time.perf_counter() - start,
    )


# -- additive maps ---------------------------------------------------------


class _Search:
    """Backtracking state shared by one partition of the search."""

    def __init__(self, ring: FiniteRing, map_class: MapClass):
        self.ring = ring
        self.cls = map_class
        self.ctx = map_class.context(ring)
        self.gens = ring.additive_generators
        g = len(self.gens)
        N = ring.order
        self.add = ring.add_table.tolist()
        self.mul = ring.mul_table.tolist()
        self.jordan = ring.jordan_table.tolist()
        max_ord = max(o for _, o in self.gens)
        mt = np.zeros((max_ord + 1, N), dtype=np.int64)
        for c in range(1, max_ord + 1):
            mt[c] = ring.add_table[mt[c - 1], np.arange(N)]
        self.multiples = mt.T.tolist()  # multiples[y][c] = c*y
        self.order_ok = [[mt[o, y] == 0 for y in range(N)] for _, o in self.gens]
        coords = ring.coordinates
        self.support = [[(k, int(c)) for k, c in enumerate(row) if c] for row in coords]
        self.imgs = [0] * g
        self.constraints = [[] for _ in range(g)]
        self._build_constraints()

    # evaluation of the partial additive extension
    def ext(self, x: int) -> int:
        acc = 0
        add, mult, imgs = self.add, self.multiples, self.imgs
        for k, c in self.support[x]:
            acc = add[acc][mult[imgs[k]][c]]
        return acc

    def _needs(self, elements, slots) -> int:
        ks = set(slots)
        for x in elements:
            ks.update(k for k, _ in self.support[x])
        return max(ks) if ks else 0

    def _add_constraint(self, elements, slots, fn):
        self.constraints[self._needs(elements, slots)].append(fn)

    def _q(self, args):
        acc = args[0]
        for t in args[1:]:
            acc = self.jordan[acc][t]
        return acc

    def _build_constraints(self):
        gens = [g for g, _ in self.gens]
        idx = range(len(gens))
        add, mul, ext, imgs = self.add, self.mul, self.ext, self.imgs
        name = self.cls.name

        if name in ("derivation", "centralizer", "antiderivation"):
            for i, j in itertools.product(idx, repeat=2):
                x, y = gens[i], gens[j]
                p = mul[x][y]
                if name == "derivation":
                    fn = lambda i=i, j=j, x=x, y=y, p=p: ext(p) == add[mul[imgs[i]][y]][mul[x][imgs[j]]]
                elif name == "antiderivation":
                    fn = lambda i=i, j=j, x=x, y=y, p=p: ext(p) == add[mul[imgs[j]][x]][mul[y][imgs[i]]]
                else:
                    fn = lambda i=i, j=j, x=x, y=y, p=p: ext(p) == mul[imgs[i]][y] == mul[x][imgs[j]]
                self._add_constraint([p], [i, j], fn)
            return

        n = 2 if name == "singular_jordan_derivation" else self.cls.n
        for tup in itertools.product(idx, repeat=n):
            args = [gens[i] for i in tup]
            p = self._q(args)

            def fn(tup=tup, args=args, p=p):
                total = 0
                for pos, i in enumerate(tup):
                    slot = list(args)
                    slot[pos] = imgs[i]
                    total = add[total][self._q(slot)]
                return ext(p) == total

            self._add_constraint([p], tup, fn)

        if name == "singular_jordan_derivation":
            ctx = self.ctx
            for comp in (ctx.a11, ctx.a22):
                for x, _ in subgroup_generators(self.ring, comp):
                    self._add_constraint([x], [], lambda x=x: ext(x) == 0)
            for src, dst in ((ctx.a12, ctx.a21), (ctx.a21, ctx.a12)):
                target = frozenset(dst)
                for x, _ in subgroup_generators(self.ring, src):
                    self._add_constraint([x], [], lambda x=x, target=target: ext(x) in target)

    def run(self, first_candidates) -> tuple[list, int, int]:
        N = self.ring.order
        g = len(self.gens)
        below = [N ** (g - k - 1) for k in range(g)]
        emitted, counters = [], [0, 0]  # pruned, rejected
        imgs = self.imgs

        def rec(k, cands):
            checks = self.constraints[k]
            ok_order = self.order_ok[k]
            for y in cands:
                if not ok_order[y]:
                    counters[0] += below[k]
                    continue
                imgs[k] = y
                if not all(fn() for fn in checks):
                    counters[0] += below[k]
                    continue
                if k + 1 < g:
                    rec(k + 1, range(N))
                    continue
                f = maps.additive_extension(self.ring, imgs)
                if f is None or not self.cls.predicate(f, self.ctx):
                    counters[1] += 1
                else:
                    emitted.append(f.key())

        rec(0, first_candidates)
        return emitted, counters[0], counters[1]


def _additive_partition(ring, map_class, candidates):
    return _Search(ring, map_class).run(candidates)


def enumerate_additive_maps(
    ring: FiniteRing,
    map_class: MapClass,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    max_maps: int | None = None,
) -> EnumerationResult:
    """Every additive map in ``map_class``, in lexicographic order of image tables.

    The search space is partitioned by the image of the first generator;
    counts never depend on ``workers``.
    """
    start = time.perf_counter()
    g = len(ring.additive_generators)
    required = ring.order**g
    if required > budget:
        raise BudgetExceeded(required, budget)
    ring.coordinates, ring.jordan_table  # build once before forking
    jobs = [(ring, map_class, part) for part in _partitions(list(range(ring.order)), max(1, workers)) if part]
    results = _run_parallel(_additive_partition, jobs, workers)
    keys = sorted(k for emitted, _, _ in results for k in emitted)
    pruned = sum(r[1] for r in results)
    rejected = sum(r[2] for r in results)
    truncated = max_maps is not None and len(keys) > max_maps
    kept = keys[:max_maps] if truncated else keys
    return EnumerationResult(
        class_name=map_class.label,
        ring=ring.name,
        count=len(keys),
        maps=[RingMap(ring, k, map_class.name) for k in kept],
        scanned=required,
        pruned=pruned,
        rejected=rejected,
        elapsed=time.perf_counter() - start,
        truncated=truncated,
    )


# -- fuzzing ---------------------------------------------------------------


def fuzz_predicate(ring: FiniteRing, base: RingMap, predicate, trials: int, seed: int) -> FuzzReport:
    """Perturb ``base`` at one random point per trial and re-run ``predicate``.

    A perturbed map that still passes is recorded as a sibling ``(point, image)``.
    """
    if not predicate(base):
        raise ValueError("base map does not satisfy the predicate")
    if ring.order < 2:
        raise ValueError("ring too small to perturb")
    rng = SplitMix64(seed)
    failures = 0
    siblings = []
    for _ in range(trials):
        point = rng.below(ring.order)
        r = rng.below(ring.order - 1)
        image = r if r < base(point) else r + 1
        if predicate(base.perturbed(point, image)):
            siblings.append((point, image))
        else:
            failures += 1
    return FuzzReport(trials, seed, failures, siblings)


def random_additive_map(ring: FiniteRing, rng: SplitMix64) -> RingMap:
    """Uniform generator images subject to the order constraint, extended additively."""
    orders = ring.additive_orders
    while True:
        images = []
        for _, o in ring.additive_generators:
            allowed = np.flatnonzero(o % orders == 0)
            images.append(int(allowed[rng.below(allowed.size)]))
        f = maps.additive_extension(ring, images)
        if f is not None:
            return f
