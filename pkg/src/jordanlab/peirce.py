"""Peirce decomposition relative to an idempotent and the conditions built on it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import Check
from .rings import FiniteRing


@dataclass(frozen=True, eq=False)
class PeirceContext:
    ring: FiniteRing
    e1: int
    e2: int
    a11: tuple[int, ...]
    a12: tuple[int, ...]
    a21: tuple[int, ...]
    a22: tuple[int, ...]

    def component(self, i: int, j: int) -> tuple[int, ...]:
        return {(1, 1): self.a11, (1, 2): self.a12, (2, 1): self.a21, (2, 2): self.a22}[(i, j)]

    def sizes(self) -> dict[str, int]:
        return {"A11": len(self.a11), "A12": len(self.a12), "A21": len(self.a21), "A22": len(self.a22)}


@dataclass(frozen=True)
class CenterDescription:
    elements: frozenset[int]
    via: str

    def __len__(self):
        return len(self.elements)

    def __contains__(self, t):
        return t in self.elements


class Faithfulness(NamedTuple):
    left_faithful: bool
    right_faithful: bool


@dataclass
class XiResult:
    """Tabulated isomorphism from Z(A)e1 onto Z(A)e2, or why it fails."""

    ok: bool
    mapping: dict[int, int]
    diagnostics: list[str] = field(default_factory=list)
    additive: bool | None = None
    multiplicative: bool | None = None
    bijective: bool | None = None


def make_peirce_context(ring: FiniteRing, e1: int) -> PeirceContext:
    e1 = ring.element(e1)
    if ring.mul(e1, e1) != e1:
        raise ValueError(f"{ring.label(e1)} is not idempotent")
    if e1 in (0, ring.one):
        raise ValueError(f"{ring.label(e1)} is a trivial idempotent")
    e2 = ring.sub(ring.one, e1)
    mul = ring.mul_table

    def comp(a, b):
        return tuple(int(x) for x in np.unique(mul[mul[a, :], b]))

    return PeirceContext(ring, e1, e2, comp(e1, e1), comp(e1, e2), comp(e2, e1), comp(e2, e2))


def peirce_decompose(ctx: PeirceContext, t: int) -> tuple[int, int, int, int]:
    r = ctx.ring

    def part(a, b):
        return r.mul(r.mul(a, t), b)

    return part(ctx.e1, ctx.e1), part(ctx.e1, ctx.e2), part(ctx.e2, ctx.e1), part(ctx.e2, ctx.e2)


def _annihilates(mul, xs, ys, side) -> np.ndarray:
    """For each x in xs, whether x*y == 0 (side 'right') or y*x == 0 for all y in ys."""
    xs = np.asarray(xs)
    ys = np.asarray(ys)
    prods = mul[xs[:, None], ys[None, :]] if side == "right" else mul[ys[None, :], xs[:, None]]
    return (prods == 0).all(axis=1)


def check_spade(ctx: PeirceContext) -> Check:
    """Condition (spade): diagonal components act faithfully on the off-diagonal ones.

    Scans only the diagonal components since the condition depends on t11 and
    t22 alone.  The witness is the smallest violating t11, else the smallest
    violating t22.
    """
    mul = ctx.ring.mul_table
    a11 = np.array(ctx.a11)
    dead = _annihilates(mul, a11, ctx.a12, "right") & _annihilates(mul, a11, ctx.a21, "left")
    bad = a11[dead & (a11 != 0)]
    if bad.size:
        return Check(False, int(bad.min()), "spade_e1")
    a22 = np.array(ctx.a22)
    dead = _annihilates(mul, a22, ctx.a12, "left") & _annihilates(mul, a22, ctx.a21, "right")
    bad = a22[dead & (a22 != 0)]
    if bad.size:
        return Check(False, int(bad.min()), "spade_e2")
    return Check(True)


def _central_mask(ring: FiniteRing) -> np.ndarray:
    mul = ring.mul_table
    return (mul == mul.T).all(axis=1)


def center_commutant(ring: FiniteRing) -> CenterDescription:
    return CenterDescription(frozenset(int(t) for t in np.flatnonzero(_central_mask(ring))), "commutant")


def center_peirce(ctx: PeirceContext) -> CenterDescription:
    r = ctx.ring
    mul = r.mul_table
    a11, a12, a21, a22 = (np.array(c) for c in (ctx.a11, ctx.a12, ctx.a21, ctx.a22))
    # cond[i, j]: a11[i] x12 == x12 a22[j] for every x12, and likewise with x21
    left12 = mul[a11[:, None], a12[None, :]]  # (|A11|, |A12|)
    right12 = mul[a12[None, :], a22[:, None]]  # (|A22|, |A12|)
    ok12 = (left12[:, None, :] == right12[None, :, :]).all(axis=2)
    left21 = mul[a21[None, :], a11[:, None]]  # x21 t11
    right21 = mul[a22[:, None], a21[None, :]]  # t22 x21
    ok21 = (left21[:, None, :] == right21[None, :, :]).all(axis=2)
    i, j = np.nonzero(ok12 & ok21)
    elems = r.add_table[a11[i], a22[j]]
    return CenterDescription(frozenset(int(t) for t in elems), "peirce")


def check_condition_2_1(ring: FiniteRing) -> Check:
    """[t, A] inside the center must force t into the center."""
    central = _central_mask(ring)
    mul = ring.mul_table
    comm = ring.sub_table[mul, mul.T]
    bad = central[comm].all(axis=1) & ~central
    hits = np.flatnonzero(bad)
    if hits.size:
        return Check(False, int(hits[0]), "condition_2_1")
    return Check(True)


def compute_xi(ctx: PeirceContext) -> XiResult:
    r = ctx.ring
    mul = r.mul_table
    center = sorted(center_commutant(r).elements)
    domain = sorted({r.mul(z, ctx.e1) for z in center})
    codomain = sorted({r.mul(z, ctx.e2) for z in center})
    a12, a21 = np.array(ctx.a12), np.array(ctx.a21)

    def solves(z11, ys):
        ys = np.asarray(ys)
        ok = (mul[z11, a12][None, :] == mul[a12[None, :], ys[:, None]]).all(axis=1)
        ok &= (mul[a21, z11][None, :] == mul[ys[:, None], a21[None, :]]).all(axis=1)
        return [int(y) for y in ys[ok]]

    mapping: dict[int, int] = {}
    diagnostics = []
    for z in domain:
        sols = solves(z, codomain)
        outside = sorted(set(solves(z, ctx.a22)) - set(codomain))
        if outside:
            diagnostics.append(
                f"xi({r.label(z)}): solutions outside Z(A)e2 ignored: {[r.label(y) for y in outside]}"
            )
        if len(sols) == 1:
            mapping[z] = sols[0]
        elif not sols:
            diagnostics.append(f"xi({r.label(z)}): no solution in Z(A)e2")
        else:
            diagnostics.append(f"xi({r.label(z)}): {len(sols)} solutions in Z(A)e2, not unique")
    if len(mapping) != len(domain):
        return XiResult(False, mapping, diagnostics)
    additive = all(mapping[r.add(a, b)] == r.add(mapping[a], mapping[b]) for a in domain for b in domain)
    multiplicative = all(mapping[r.mul(a, b)] == r.mul(mapping[a], mapping[b]) for a in domain for b in domain)
    bijective = sorted(mapping.values()) == codomain
    for flag, what in ((additive, "additive"), (multiplicative, "multiplicative"), (bijective, "bijective")):
        if not flag:
            diagnostics.append(f"xi is not {what}")
    return XiResult(additive and multiplicative and bijective, mapping, diagnostics, additive, multiplicative, bijective)


def is_prime(ring: FiniteRing) -> Check:
    """u A v = {0} forces u = 0 or v = 0; witness is the smallest (u, v)."""
    mul = ring.mul_table
    idx = np.arange(ring.order)
    for u in range(1, ring.order):
        uxv = mul[mul[u, :][:, None], idx[None, :]]
        dead = (uxv == 0).all(axis=0)
        dead[0] = False
        if dead.any():
            return Check(False, (u, int(np.argmax(dead))), "prime")
    return Check(True)


def is_faithful_bimodule(ctx: PeirceContext) -> Faithfulness:
    mul = ctx.ring.mul_table
    a11, a22 = np.array(ctx.a11), np.array(ctx.a22)
    left = not (_annihilates(mul, a11, ctx.a12, "right") & (a11 != 0)).any()
    right = not (_annihilates(mul, a22, ctx.a12, "left") & (a22 != 0)).any()
    return Faithfulness(left, right)


def check_orthogonality_hypothesis(ctx: PeirceContext) -> bool:
    mul = ctx.ring.mul_table
    a12, a21 = np.array(ctx.a12), np.array(ctx.a21)
    return bool((mul[a12[:, None], a21[None, :]] == 0).all() and (mul[a21[:, None], a12[None, :]] == 0).all())
