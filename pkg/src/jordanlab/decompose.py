"""Constructive decompositions: centralizer -> mu, generalized -> mu + delta,
Jordan derivation -> derivation + singular part.

None of these assume the structure theorem they exercise; every conclusion
is checked table-wise and recorded as a flag with a witness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import maps
from .errors import BudgetExceeded, PreconditionError, UnsupportedOperation
from .maps import RingMap, scalar_map
from .peirce import PeirceContext, center_commutant, check_spade
from .rings import is_two_torsion_free, nontrivial_idempotents, span_coordinates, subgroup_generators


@dataclass
class DecompositionReport:
    mu: int
    mu_is_central: bool
    residual: RingMap
    identity_verified: bool
    additivity_verified: bool
    half_law_verified: bool
    scalar_form_verified: bool
    witnesses: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def all_verified(self) -> bool:
        return (
            self.mu_is_central
            and self.identity_verified
            and self.additivity_verified
            and self.half_law_verified
            and self.scalar_form_verified
        )

    def flags(self) -> dict[str, bool]:
        return {
            "mu_is_central": self.mu_is_central,
            "identity_verified": self.identity_verified,
            "additivity_verified": self.additivity_verified,
            "half_law_verified": self.half_law_verified,
            "scalar_form_verified": self.scalar_form_verified,
        }


@dataclass
class SingularDecompositionReport:
    found: bool
    d: RingMap | None
    phi: RingMap | None
    unique: bool | None
    candidates: int
    solutions: int


def decompose_centralizer(F: RingMap, n: int, budget: int = maps.DEFAULT_TUPLE_BUDGET) -> DecompositionReport:
    """Extract mu = F(1) and test F(t) = mu t.

    Flags: half law 2F(t) = mu o t, mu central, F equal to the scalar map of
    mu, the centralizer identity itself, and additivity of F.
    """
    ring = F.ring
    torsion = is_two_torsion_free(ring)
    if not torsion:
        raise UnsupportedOperation(f"{ring.name} has 2-torsion (witness {torsion.witness})")
    mu = F(ring.one)
    witnesses = {}

    bad = np.flatnonzero(ring.double_table[F.images] != ring.jordan_table[mu])
    half_law = bad.size == 0
    if not half_law:
        witnesses["half_law"] = int(bad[0])

    central = mu in center_commutant(ring)
    scalar = scalar_map(ring, mu)
    bad = np.flatnonzero(F.images != scalar.images)
    scalar_form = bad.size == 0
    if not scalar_form:
        witnesses["scalar_form"] = int(bad[0])

    ident = maps.is_jordan_n_centralizer(F, n, budget)
    if not ident:
        witnesses["identity"] = ident.witness
    additive = maps.is_additive(F)
    if not additive:
        witnesses["additivity"] = additive.witness
    swap = maps.check_swap_law(F, n, budget)

    return DecompositionReport(
        mu=mu,
        mu_is_central=central,
        residual=F - scalar,
        identity_verified=ident.ok,
        additivity_verified=additive.ok,
        half_law_verified=half_law,
        scalar_form_verified=scalar_form,
        witnesses=witnesses,
        notes={
            "nontrivial_idempotent": bool(nontrivial_idempotents(ring)),
            "swap_law": swap.ok,
        },
    )


def decompose_generalized(
    F: RingMap, delta: RingMap, n: int, budget: int = maps.DEFAULT_TUPLE_BUDGET
) -> DecompositionReport:
    """Split F = mu * id + delta through the centralizer Phi = F - delta.

    Raises DefinitionError if ``delta`` is not a Jordan n-derivation.
    """
    ident = maps.is_generalized_jordan_n_derivation(F, delta, n, budget)
    phi = F - delta
    inner = decompose_centralizer(phi, n, budget)
    witnesses = {k: v for k, v in inner.witnesses.items() if k != "identity"}
    if not ident:
        witnesses["identity"] = ident.witness
    additive = maps.is_additive(F)
    if not additive:
        witnesses["additivity"] = additive.witness
    residual = F - scalar_map(F.ring, inner.mu)
    notes = dict(inner.notes)
    notes["delta_at_zero"] = delta(0)
    notes["centralizer_identity"] = inner.identity_verified
    return DecompositionReport(
        mu=inner.mu,
        mu_is_central=inner.mu_is_central,
        residual=residual,
        identity_verified=ident.ok,
        additivity_verified=additive.ok,
        half_law_verified=inner.half_law_verified,
        scalar_form_verified=inner.scalar_form_verified and residual == delta,
        witnesses=witnesses,
        notes=notes,
    )


def _homomorphisms(ring, domain, codomain):
    """All additive maps domain -> codomain (both additive subgroups), as dicts.

    Yields in lexicographic order of generator images.
    """
    gens = subgroup_generators(ring, domain)
    coords = span_coordinates(ring, gens)
    targets = sorted(codomain)
    choices = [[y for y in targets if ring.multiple(o, y) == 0] for _, o in gens]
    domain = sorted(domain)
    for images in itertools.product(*choices):
        table = {}
        for x in domain:
            y = 0
            for c, img in zip(coords[x], images):
                if c:
                    y = ring.add(y, ring.multiple(int(c), img))
            table[x] = y
        if all(table[ring.add(a, b)] == ring.add(table[a], table[b]) for a in domain for b in domain):
            yield table


def decompose_singular(delta: RingMap, ctx: PeirceContext, budget: int = 10**6) -> SingularDecompositionReport:
    """Write an additive Jordan derivation as derivation + singular Jordan derivation.

    Candidates phi vanish on the diagonal components and are determined by
    homomorphisms A12 -> A21 and A21 -> A12.  Returns the lexicographically
    smallest phi (by image table) for which delta - phi is a derivation.
    """
    ring = delta.ring
    jd = maps.is_jordan_n_derivation(delta, 2)
    if not jd:
        raise PreconditionError("jordan_n_derivation(n=2)", jd.witness)
    add = maps.is_additive(delta)
    if not add:
        raise PreconditionError("additive", add.witness)
    spade = check_spade(ctx)
    if not spade:
        raise PreconditionError("spade", spade.witness)

    def space(dom, cod):
        gens = subgroup_generators(ring, dom)
        return math.prod(sum(1 for y in cod if ring.multiple(o, y) == 0) for _, o in gens)

    required = space(ctx.a12, ctx.a21) * space(ctx.a21, ctx.a12)
    if required > budget:
        raise BudgetExceeded(required, budget)

    mul = ring.mul_table
    parts12 = mul[mul[ctx.e1, :], ctx.e2]
    parts21 = mul[mul[ctx.e2, :], ctx.e1]
    solutions = []
    candidates = 0
    for h12 in _homomorphisms(ring, ctx.a12, ctx.a21):
        for h21 in _homomorphisms(ring, ctx.a21, ctx.a12):
            candidates += 1
            lut12 = np.zeros(ring.order, dtype=np.int64)
            lut21 = np.zeros(ring.order, dtype=np.int64)
            for x, y in h12.items():
                lut12[x] = y
            for x, y in h21.items():
                lut21[x] = y
            phi = RingMap(ring, ring.add_table[lut12[parts12], lut21[parts21]], "phi")
            d = delta - phi
            if maps.is_derivation(d) and maps.jordan_n_identity(phi, phi, 2):
                solutions.append((phi.key(), phi, d))
    if not solutions:
        return SingularDecompositionReport(False, None, None, None, candidates, 0)
    solutions.sort(key=lambda s: s[0])
    _, phi, d = solutions[0]
    return SingularDecompositionReport(True, d, phi, len(solutions) == 1, candidates, len(solutions))
