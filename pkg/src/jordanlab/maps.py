"""Self-maps of a finite ring and the predicates classifying them.

The n-ary predicates (Jordan n-derivation, generalized Jordan n-derivation,
Jordan n-centralizer) are decided exactly over all ``|A|**n`` tuples, but not
tuple by tuple.  Every one of them has the shape

    F(q_n(t_1, ..., t_n)) == B_n(t_1, ..., t_n)

where ``q_{k+1} = q_k o t`` and ``B_{k+1} = B_k o t + q_k o h(t)`` for some
map ``h`` (possibly absent).  The pair ``(q_k, B_k)`` is all a prefix
contributes to later levels, so prefixes are collapsed to their distinct
pairs, of which there are at most ``|A|**2``.  For each distinct pair only
the lexicographically first prefix producing it is kept, which makes the
reported witness the smallest failing tuple overall.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, Check, DefinitionError
from .peirce import PeirceContext
from .rings import FiniteRing

DEFAULT_TUPLE_BUDGET = 10**9

_CHUNK = 1 << 21


@dataclass(frozen=True, eq=False)
class RingMap:
    """An arbitrary self-map given by its image table; additivity is not assumed."""

    ring: FiniteRing
    images: np.ndarray
    name: str = ""

    def __post_init__(self):
        img = np.array(self.images, dtype=np.int64)
        if img.shape != (self.ring.order,):
            raise ValueError(f"image table has shape {img.shape}, expected ({self.ring.order},)")
        if img.size and (img.min() < 0 or img.max() >= self.ring.order):
            raise ValueError("image table entries out of range")
        img.setflags(write=False)
        object.__setattr__(self, "images", img)

    def __call__(self, t: int) -> int:
        return int(self.images[t])

    def __add__(self, other: RingMap) -> RingMap:
        return RingMap(self.ring, self.ring.add_table[self.images, other.images], _join(self.name, "+", other.name))

    def __sub__(self, other: RingMap) -> RingMap:
        return RingMap(self.ring, self.ring.sub_table[self.images, other.images], _join(self.name, "-", other.name))

    def __eq__(self, other):
        if not isinstance(other, RingMap):
            return NotImplemented
        return self.ring is other.ring and np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash((id(self.ring), self.images.tobytes()))

    def __repr__(self):
        return f"RingMap({self.name or '?'} on {self.ring.name})"

    def key(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.images)

    def perturbed(self, point: int, image: int) -> RingMap:
        img = self.images.copy()
        img[point] = image
        return RingMap(self.ring, img, f"{self.name}~")


def _join(a, op, b):
    return f"({a}{op}{b})" if a and b else ""


# -- constructors ----------------------------------------------------------


def zero_map(ring: FiniteRing) -> RingMap:
    return RingMap(ring, np.zeros(ring.order, dtype=np.int64), "0")


def identity_map(ring: FiniteRing) -> RingMap:
    return RingMap(ring, np.arange(ring.order), "id")


def constant_map(ring: FiniteRing, c: int) -> RingMap:
    return RingMap(ring, np.full(ring.order, c), f"const[{ring.label(c)}]")


def square_map(ring: FiniteRing) -> RingMap:
    idx = np.arange(ring.order)
    return RingMap(ring, ring.mul_table[idx, idx], "sq")


def scalar_map(ring: FiniteRing, mu: int) -> RingMap:
    """t -> mu t.  Centrality of ``mu`` is the caller's business."""
    return RingMap(ring, ring.mul_table[mu, :], f"{ring.label(mu)}*")


def inner_derivation(ring: FiniteRing, a: int) -> RingMap:
    """t -> a t - t a."""
    return RingMap(ring, ring.sub_table[ring.mul_table[a, :], ring.mul_table[:, a]], f"ad[{ring.label(a)}]")


def additive_extension(ring: FiniteRing, images) -> RingMap | None:
    """Extend generator images additively, or None when no additive map fits."""
    gens = ring.additive_generators
    images = [int(y) for y in images]
    if len(images) != len(gens):
        raise ValueError(f"need {len(gens)} generator images, got {len(images)}")
    for (_, order), y in zip(gens, images):
        if ring.multiple(order, y) != 0:
            return None
    coords = ring.coordinates
    out = np.zeros(ring.order, dtype=np.int64)
    for k, y in enumerate(images):
        multiples = np.array([ring.multiple(c, y) for c in range(gens[k][1])])
        out = ring.add_table[out, multiples[coords[:, k]]]
    f = RingMap(ring, out, "ext")
    if not ring.generators_independent and not is_additive(f):
        return None
    return f


# -- pairwise predicates ---------------------------------------------------


def _first_pair(mask: np.ndarray):
    flat = np.flatnonzero(mask.ravel())
    if flat.size == 0:
        return None
    i, j = np.unravel_index(flat[0], mask.shape)
    return int(i), int(j)


def is_additive(f: RingMap) -> Check:
    r = f.ring
    img = f.images
    bad = img[r.add_table] != r.add_table[img[:, None], img[None, :]]
    if (w := _first_pair(bad)) is not None:
        return Check(False, w, "additivity")
    return Check(True)


def is_derivation(f: RingMap) -> Check:
    """Additive and f(ab) = f(a) b + a f(b)."""
    add_check = is_additive(f)
    if not add_check:
        return add_check
    r = f.ring
    mul, add, img = r.mul_table, r.add_table, f.images
    rhs = add[mul[img[:, None], np.arange(r.order)[None, :]], mul[:, img]]
    if (w := _first_pair(img[mul] != rhs)) is not None:
        return Check(False, w, "leibniz")
    return Check(True)


def is_antiderivation(f: RingMap) -> Check:
    """Additive and f(ab) = f(b) a + b f(a)."""
    add_check = is_additive(f)
    if not add_check:
        return add_check
    r = f.ring
    mul, add, img = r.mul_table, r.add_table, f.images
    idx = np.arange(r.order)
    # rhs[a, b] = f(b) a + b f(a)
    rhs = add[mul[img[None, :], idx[:, None]], mul[idx[None, :], img[:, None]]]
    if (w := _first_pair(img[mul] != rhs)) is not None:
        return Check(False, w, "reversed_leibniz")
    return Check(True)


def is_centralizer(f: RingMap) -> Check:
    """Additive and f(ab) = f(a) b = a f(b)."""
    add_check = is_additive(f)
    if not add_check:
        return add_check
    r = f.ring
    mul, img = r.mul_table, f.images
    idx = np.arange(r.order)
    left = mul[img[:, None], idx[None, :]]
    if (w := _first_pair(img[mul] != left)) is not None:
        return Check(False, w, "f(ab)=f(a)b")
    if (w := _first_pair(img[mul] != mul[:, img])) is not None:
        return Check(False, w, "f(ab)=af(b)")
    return Check(True)


# -- n-ary predicates ------------------------------------------------------


def q_n(ring: FiniteRing, args):
    """Iterated Jordan product q_1(t) = t, q_k = q_{k-1} o t_k.

    Arguments may be element indices or broadcastable index arrays.
    """
    args = list(args)
    if not args:
        raise ValueError("q_n needs at least one argument")
    J = ring.jordan_table
    acc = args[0]
    for t in args[1:]:
        acc = J[acc, t]
    return int(acc) if np.ndim(acc) == 0 else acc


def jordan_product(ring: FiniteRing, a: int, b: int) -> int:
    return ring.jordan(a, b)


def _check_budget(ring: FiniteRing, n: int, budget: int):
    if n < 2:
        raise ValueError(f"arity must be at least 2, got {n}")
    required = ring.order**n
    if required > budget:
        raise BudgetExceeded(required, budget, "use fuzz_predicate for a sampled check")


def _dedupe_first(codes: np.ndarray) -> np.ndarray:
    """Positions of first occurrences, in original order."""
    _, first = np.unique(codes, return_index=True)
    first.sort()
    return first


def _prefix_scan(ring, n, init_a, init_b, init_width, b_step, final_ok, law) -> Check:
    """Decide ``final_ok`` over all n-tuples by collapsing equal prefix states.

    ``init_a``/``init_b`` hold the states of all ``init_width``-tuples in
    lexicographic order.  Each further level maps a state ``(a, b)`` and a new
    coordinate ``t`` to ``(a o t, b_step(a, b, t))``.
    """
    N = ring.order
    J = ring.jordan_table
    ts = np.arange(N)

    # initial states: decode tuple of flat index lazily via history
    a, b = np.asarray(init_a), np.asarray(init_b)
    width = init_width
    if width == n:
        bad = np.flatnonzero(~final_ok(a, b))
        if bad.size:
            return Check(False, tuple(int(x) for x in np.unravel_index(bad[0], (N,) * n)), law)
        return Check(True)

    keep = _dedupe_first(a * N + b)
    a, b = a[keep], b[keep]
    history = [keep]  # level 0 positions are flat indices of init tuples

    while True:
        width += 1
        last = width == n
        step = max(1, _CHUNK // N)
        new_codes, new_pos = [], []
        for lo in range(0, a.size, step):
            pa = a[lo:lo + step, None]
            pb = b[lo:lo + step, None]
            na = J[pa, ts[None, :]]
            nb = b_step(pa, pb, ts[None, :])
            if last:
                bad = np.flatnonzero(~final_ok(na, nb).ravel())
                if bad.size:
                    pos = lo * N + int(bad[0])
                    return Check(False, _rebuild(history, pos, N, init_width), law)
                continue
            codes = (na * N + nb).ravel()
            first = _dedupe_first(codes)
            new_codes.append(codes[first])
            new_pos.append(first + lo * N)
        if last:
            return Check(True)
        codes = np.concatenate(new_codes)
        pos = np.concatenate(new_pos)
        keep = _dedupe_first(codes)
        codes, pos = codes[keep], pos[keep]
        a, b = codes // N, codes % N
        history.append(pos)


def _rebuild(history, pos, N, init_width):
    tail = []
    for level in range(len(history) - 1, 0, -1):
        parent, t = divmod(pos, N)
        tail.append(t)
        pos = int(history[level][parent])
    parent, t = divmod(pos, N)
    tail.append(t)
    flat = int(history[0][parent])
    head = np.unravel_index(flat, (N,) * init_width)
    return tuple(int(x) for x in head) + tuple(int(x) for x in reversed(tail))


def _with_slot(ring, images):
    J, add = ring.jordan_table, ring.add_table
    if images is None:
        return lambda a, b, t: J[b, t]
    return lambda a, b, t: add[J[b, t], J[a, images[t]]]


def jordan_n_identity(first: RingMap, rest: RingMap | None, n: int, budget: int = DEFAULT_TUPLE_BUDGET) -> Check:
    """first(q_n(t)) == q_n(first(t1), t2, ...) + sum_{i>=2} q_n(..., rest(t_i), ...).

    ``rest=None`` drops the sum (centralizer form); ``rest is first`` is the
    Jordan n-derivation law.
    """
    ring = first.ring
    _check_budget(ring, n, budget)
    img = first.images
    step = _with_slot(ring, None if rest is None else rest.images)
    return _prefix_scan(
        ring, n, np.arange(ring.order), img, 1, step, lambda a, b: img[a] == b, "jordan_n_identity"
    )


def is_jordan_n_derivation(f: RingMap, n: int, budget: int = DEFAULT_TUPLE_BUDGET) -> Check:
    """Multiplicative Jordan n-derivation law; additivity and f(0) go in ``info``."""
    check = jordan_n_identity(f, f, n, budget)
    info = {"additive": bool(is_additive(f)), "zero_image": f(0)}
    return Check(check.ok, check.witness, check.law, info)


def is_jordan_n_centralizer(f: RingMap, n: int, budget: int = DEFAULT_TUPLE_BUDGET) -> Check:
    return jordan_n_identity(f, None, n, budget)


def is_generalized_jordan_n_derivation(
    F: RingMap, delta: RingMap, n: int, budget: int = DEFAULT_TUPLE_BUDGET
) -> Check:
    """Generalized Jordan n-derivation law for ``F`` with associated map ``delta``.

    Raises DefinitionError when ``delta`` is not itself a Jordan n-derivation.
    """
    own = is_jordan_n_derivation(delta, n, budget)
    if not own:
        raise DefinitionError(f"associated map is not a Jordan {n}-derivation", own.witness)
    return jordan_n_identity(F, delta, n, budget)


def check_swap_law(f: RingMap, n: int, budget: int = DEFAULT_TUPLE_BUDGET) -> Check:
    """q_n(f(t1), t2, ...) == q_n(t1, f(t2), ...) for all tuples."""
    ring = f.ring
    _check_budget(ring, n, budget)
    N = ring.order
    J = ring.jordan_table
    img = f.images
    idx = np.arange(N)
    a0 = J[img[:, None], idx[None, :]].ravel()
    b0 = J[idx[:, None], img[None, :]].ravel()
    return _prefix_scan(ring, n, a0, b0, 2, lambda a, b, t: J[b, t], lambda a, b: a == b, "swap")


def is_singular_jordan_derivation(f: RingMap, ctx: PeirceContext) -> Check:
    """Additive Jordan derivation killing A11, A22 and swapping A12, A21."""
    add_check = is_additive(f)
    if not add_check:
        return add_check
    jd = jordan_n_identity(f, f, 2)
    if not jd:
        return jd
    img = f.images
    for comp, law in ((ctx.a11, "kills_A11"), (ctx.a22, "kills_A22")):
        bad = [t for t in comp if img[t] != 0]
        if bad:
            return Check(False, min(bad), law)
    for src, dst, law in ((ctx.a12, ctx.a21, "A12_to_A21"), (ctx.a21, ctx.a12, "A21_to_A12")):
        target = set(dst)
        bad = [t for t in src if int(img[t]) not in target]
        if bad:
            return Check(False, min(bad), law)
    return Check(True)
