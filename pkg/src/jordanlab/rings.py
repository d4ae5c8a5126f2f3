"""Finite unital rings stored as Cayley tables.

Elements are dense indices ``0..order-1`` with the additive identity at 0.
All arithmetic is a table lookup; the tables are numpy arrays so that scans
over pairs and triples can be vectorised.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import Check, SizeCapError, StructuralError, UnsupportedOperation

DEFAULT_ORDER_CAP = 4096

_CHUNK = 1 << 22


@dataclass(frozen=True, eq=False)
class FiniteRing:
    add_table: np.ndarray
    mul_table: np.ndarray
    one: int
    element_labels: tuple[str, ...] | None = None
    generators: tuple[tuple[int, int], ...] | None = None
    name: str = "ring"

    zero = 0

    def __post_init__(self):
        try:
            add = np.array(self.add_table, dtype=np.int64)
            mul = np.array(self.mul_table, dtype=np.int64)
        except (ValueError, TypeError) as exc:
            raise StructuralError(f"tables are not rectangular integer arrays: {exc}") from None
        add.setflags(write=False)
        mul.setflags(write=False)
        object.__setattr__(self, "add_table", add)
        object.__setattr__(self, "mul_table", mul)
        object.__setattr__(self, "one", int(self.one))
        if self.element_labels is not None:
            object.__setattr__(self, "element_labels", tuple(self.element_labels))

    @property
    def order(self) -> int:
        return self.add_table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteRing({self.name!r}, order={self.order})"

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def jordan(self, a: int, b: int) -> int:
        return int(self.jordan_table[a, b])

    def multiple(self, k: int, a: int) -> int:
        """``k * a`` for a non-negative integer ``k`` (repeated addition)."""
        acc = 0
        base = a
        while k:
            if k & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            k >>= 1
        return acc

    def double(self, a: int) -> int:
        return int(self.double_table[a])

    def label(self, a: int) -> str:
        if self.element_labels is None:
            return str(a)
        return self.element_labels[a]

    def element(self, ref: int | str) -> int:
        """Resolve an element given as an index or as a label."""
        if isinstance(ref, (int, np.integer)) and not isinstance(ref, bool):
            if not 0 <= ref < self.order:
                raise ValueError(f"element index {ref} out of range for order {self.order}")
            return int(ref)
        if isinstance(ref, str):
            if self.element_labels is not None and ref in self._label_index:
                return self._label_index[ref]
            if ref.strip().lstrip("-").isdigit():
                return self.element(int(ref))
        raise ValueError(f"unknown element {ref!r}")

    # -- derived tables ----------------------------------------------------

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.element_labels or ())}

    @cached_property
    def neg_table(self) -> np.ndarray:
        hits = self.add_table == 0
        neg = np.where(hits.any(axis=1), hits.argmax(axis=1), -1)
        neg.setflags(write=False)
        return neg

    @cached_property
    def jordan_table(self) -> np.ndarray:
        jt = self.add_table[self.mul_table, self.mul_table.T]
        jt.setflags(write=False)
        return jt

    @cached_property
    def sub_table(self) -> np.ndarray:
        st = self.add_table[:, self.neg_table]
        st.setflags(write=False)
        return st

    @cached_property
    def double_table(self) -> np.ndarray:
        idx = np.arange(self.order)
        dt = self.add_table[idx, idx]
        dt.setflags(write=False)
        return dt

    @cached_property
    def half_table(self) -> np.ndarray:
        check = is_two_torsion_free(self)
        if not check:
            raise UnsupportedOperation(
                f"{self.name} has 2-torsion (witness {self.label(check.witness)}); halving is undefined"
            )
        half = np.empty(self.order, dtype=np.int64)
        half[self.double_table] = np.arange(self.order)
        half.setflags(write=False)
        return half

    @cached_property
    def additive_orders(self) -> np.ndarray:
        """Additive order of every element."""
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        idx = np.arange(n)
        for k in range(1, n + 1):
            done = (cur == 0) & (orders == 0)
            orders[done] = k
            if orders.all():
                break
            cur = self.add_table[cur, idx]
        return orders

    @cached_property
    def additive_generators(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(element, additive order)`` generating the additive group."""
        if self.generators is not None:
            return tuple((int(g), int(o)) for g, o in self.generators)
        return tuple(subgroup_generators(self, range(self.order)))

    @cached_property
    def generators_independent(self) -> bool:
        return math.prod(o for _, o in self.additive_generators) == self.order

    @cached_property
    def coordinates(self) -> np.ndarray:
        """Coefficient vector of every element over ``additive_generators``.

        Row ``x`` holds the lexicographically first vector ``c`` with
        ``sum c_i g_i = x``.
        """
        return span_coordinates(self, self.additive_generators)


class ValidationReport(NamedTuple):
    ok: bool
    axiom: str | None = None
    witness: tuple | None = None


class Idempotent(NamedTuple):
    index: int
    nontrivial: bool


# -- additive subgroups ----------------------------------------------------


def _cyclic(ring: FiniteRing, g: int) -> list[int]:
    out = [0]
    x = g
    while x != 0:
        out.append(x)
        x = ring.add(x, g)
    return out


def subgroup_generators(ring: FiniteRing, elements) -> list[tuple[int, int]]:
    """Greedy generating set of the additive subgroup formed by ``elements``.

    Repeatedly adds the smallest element not yet in the span.
    """
    targets = sorted(set(int(e) for e in elements))
    span = np.zeros(ring.order, dtype=bool)
    span[0] = True
    gens = []
    for x in targets:
        if span[x]:
            continue
        cyc = _cyclic(ring, x)
        gens.append((x, len(cyc)))
        members = np.flatnonzero(span)
        new = ring.add_table[np.ix_(members, cyc)].ravel()
        span[new] = True
    return gens


def span_coordinates(ring: FiniteRing, gens: Sequence[tuple[int, int]]) -> np.ndarray:
    """Map each element of the span of ``gens`` to its first coefficient vector.

    Rows of elements outside the span are filled with -1.
    """
    k = len(gens)
    coords = np.full((ring.order, k), -1, dtype=np.int64)
    total = math.prod(o for _, o in gens)
    if total > 10**7:
        raise SizeCapError(f"coefficient space {total} too large to index")
    seen = np.zeros(ring.order, dtype=bool)
    for vec in itertools.product(*(range(o) for _, o in gens)):
        x = 0
        for c, (g, _) in zip(vec, gens):
            if c:
                x = ring.add(x, ring.multiple(c, g))
        if not seen[x]:
            seen[x] = True
            coords[x] = vec
    return coords


# -- validation ------------------------------------------------------------


def _first(mask: np.ndarray):
    flat = np.flatnonzero(mask.ravel())
    if flat.size == 0:
        return None
    return tuple(int(i) for i in np.unravel_index(flat[0], mask.shape))


def validate_ring(ring: FiniteRing) -> ValidationReport:
    """Check every ring axiom table-wise; report the first violation.

    Raises StructuralError when the tables are not square, disagree in size,
    or contain out-of-range entries.
    """
    add, mul = ring.add_table, ring.mul_table
    if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape[0] == 0:
        raise StructuralError(f"addition table has shape {add.shape}, expected n x n")
    n = add.shape[0]
    if mul.shape != (n, n):
        raise StructuralError(f"multiplication table has shape {mul.shape}, expected {(n, n)}")
    for name, tab in (("addition", add), ("multiplication", mul)):
        if tab.min() < 0 or tab.max() >= n:
            raise StructuralError(f"{name} table has entries outside [0, {n})")
    if not 0 <= ring.one < n:
        raise StructuralError(f"identity index {ring.one} out of range")
    if ring.element_labels is not None and len(ring.element_labels) != n:
        raise StructuralError("label count differs from ring order")

    idx = np.arange(n)
    bad = (add[0] != idx) | (add[:, 0] != idx)
    if (w := _first(bad)) is not None:
        return ValidationReport(False, "additive identity", w)
    if (w := _first(~(add == 0).any(axis=1))) is not None:
        return ValidationReport(False, "additive inverse", w)
    if (w := _first(add != add.T)) is not None:
        return ValidationReport(False, "additive commutativity", w)
    one = ring.one
    bad = (mul[one] != idx) | (mul[:, one] != idx)
    if (w := _first(bad)) is not None:
        return ValidationReport(False, "identity axiom", w)

    step = max(1, _CHUNK // (n * n))
    for lo in range(0, n, step):
        a = idx[lo:lo + step, None, None]
        b = idx[None, :, None]
        c = idx[None, None, :]
        checks = (
            ("additive associativity", add[add[a, b], c] != add[a, add[b, c]]),
            ("multiplicative associativity", mul[mul[a, b], c] != mul[a, mul[b, c]]),
            ("left distributivity", mul[a, add[b, c]] != add[mul[a, b], mul[a, c]]),
            ("right distributivity", mul[add[a, b], c] != add[mul[a, c], mul[b, c]]),
        )
        for axiom, mask in checks:
            if (w := _first(mask)) is not None:
                return ValidationReport(False, axiom, (w[0] + lo, w[1], w[2]))
    return ValidationReport(True)


# -- constructors ----------------------------------------------------------


def _check_cap(order: int, cap: int):
    if order > cap:
        raise SizeCapError(f"ring order {order} exceeds cap {cap}")


def build_zmod(m: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    if m < 2:
        raise ValueError(f"modulus must be at least 2, got {m}")
    _check_cap(m, cap)
    idx = np.arange(m)
    return FiniteRing(
        add_table=(idx[:, None] + idx[None, :]) % m,
        mul_table=(idx[:, None] * idx[None, :]) % m,
        one=1 % m,
        element_labels=tuple(str(i) for i in range(m)),
        generators=((1, m),),
        name=f"Z{m}",
    )


def _coef_label(base: FiniteRing, c: int) -> str:
    if c == base.one:
        return ""
    lab = base.label(c)
    if any(ch in lab for ch in "+-, ") and not (lab.startswith("(") and lab.endswith(")")):
        lab = f"({lab})"
    return lab


def _matrix_family(base: FiniteRing, r: int, positions: list[tuple[int, int]], name: str, cap: int) -> FiniteRing:
    if r < 1:
        raise ValueError("matrix size must be positive")
    b = base.order
    p = len(positions)
    order = b**p
    _check_cap(order, cap)
    pos_index = {ij: k for k, ij in enumerate(positions)}
    weights = b ** np.arange(p, dtype=np.int64)
    idx = np.arange(order, dtype=np.int64)
    entries = (idx[:, None] // weights[None, :]) % b

    add = np.zeros((order, order), dtype=np.int64)
    mul = np.zeros((order, order), dtype=np.int64)
    for k, (i, j) in enumerate(positions):
        s = base.add_table[entries[:, None, k], entries[None, :, k]]
        add += s * weights[k]
        acc = np.zeros((order, order), dtype=np.int64)
        for m in range(r):
            left, right = pos_index.get((i, m)), pos_index.get((m, j))
            if left is None or right is None:
                continue
            prod = base.mul_table[entries[:, None, left], entries[None, :, right]]
            acc = base.add_table[acc, prod]
        mul += acc * weights[k]

    diag = [pos_index[(i, i)] for i in range(r)]
    one = int(sum(base.one * weights[k] for k in diag))

    def unit(i, j):
        return f"E{i + 1}{j + 1}" if r < 10 else f"E{i + 1},{j + 1}"

    labels = []
    for x in range(order):
        e = entries[x]
        nonzero = [k for k in range(p) if e[k]]
        if not nonzero:
            labels.append("0")
            continue
        c = e[diag[0]]
        if c and set(nonzero) == set(diag) and all(e[k] == c for k in diag):
            labels.append(f"{_coef_label(base, int(c))}I")
            continue
        labels.append("+".join(f"{_coef_label(base, int(e[k]))}{unit(*positions[k])}" for k in nonzero))

    gens = tuple(
        (int(g * weights[k]), o) for k in range(p) for g, o in base.additive_generators
    )
    return FiniteRing(add, mul, one, tuple(labels), gens, name)


def build_matrix_ring(base: FiniteRing, r: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    if r < 2:
        raise ValueError("matrix rings need r >= 2")
    positions = [(i, j) for i in range(r) for j in range(r)]
    return _matrix_family(base, r, positions, f"M{r}({base.name})", cap)


def build_triangular_ring(base: FiniteRing, r: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    if r < 2:
        raise ValueError("triangular rings need r >= 2")
    positions = [(i, j) for i in range(r) for j in range(r) if i <= j]
    return _matrix_family(base, r, positions, f"T{r}({base.name})", cap)


def build_block_triangular_ring(
    base: FiniteRing, r: int, partition: Sequence[int], cap: int = DEFAULT_ORDER_CAP
) -> FiniteRing:
    """Block upper triangular matrices; entries on and above the block diagonal."""
    partition = [int(s) for s in partition]
    if any(s < 1 for s in partition) or sum(partition) != r:
        raise ValueError(f"partition {partition} does not sum to {r}")
    block_of = []
    for blk, size in enumerate(partition):
        block_of += [blk] * size
    positions = [(i, j) for i in range(r) for j in range(r) if block_of[i] <= block_of[j]]
    name = f"B{r}[{','.join(map(str, partition))}]({base.name})"
    return _matrix_family(base, r, positions, name, cap)


def build_product_ring(a: FiniteRing, b: FiniteRing, cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Direct product; element ``(x, y)`` has index ``x + |a| * y``."""
    na, nb = a.order, b.order
    order = na * nb
    _check_cap(order, cap)
    idx = np.arange(order)
    xa, xb = idx % na, idx // na
    add = a.add_table[xa[:, None], xa[None, :]] + na * b.add_table[xb[:, None], xb[None, :]]
    mul = a.mul_table[xa[:, None], xa[None, :]] + na * b.mul_table[xb[:, None], xb[None, :]]
    labels = tuple(f"({a.label(int(x))},{b.label(int(y))})" for x, y in zip(xa, xb))
    gens = tuple((g, o) for g, o in a.additive_generators) + tuple(
        (g * na, o) for g, o in b.additive_generators
    )
    return FiniteRing(add, mul, a.one + na * b.one, labels, gens, f"{a.name}x{b.name}")


# -- structural queries ----------------------------------------------------


def find_idempotents(ring: FiniteRing) -> list[Idempotent]:
    idx = np.arange(ring.order)
    hits = np.flatnonzero(ring.mul_table[idx, idx] == idx)
    return [Idempotent(int(e), int(e) not in (0, ring.one)) for e in hits]


def nontrivial_idempotents(ring: FiniteRing) -> list[int]:
    return [e.index for e in find_idempotents(ring) if e.nontrivial]


def is_two_torsion_free(ring: FiniteRing) -> Check:
    hits = np.flatnonzero(ring.double_table == 0)
    hits = hits[hits != 0]
    if hits.size:
        return Check(False, int(hits[0]), "two_torsion")
    return Check(True)


def halve(ring: FiniteRing, t: int) -> int:
    """The unique ``s`` with ``s + s = t``; needs a 2-torsion-free ring."""
    return int(ring.half_table[t])
