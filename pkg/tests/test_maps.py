import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jordanlab import maps
from jordanlab.errors import BudgetExceeded, DefinitionError
from jordanlab.maps import (
    RingMap,
    additive_extension,
    check_swap_law,
    identity_map,
    inner_derivation,
    is_additive,
    is_antiderivation,
    is_centralizer,
    is_derivation,
    is_generalized_jordan_n_derivation,
    is_jordan_n_centralizer,
    is_jordan_n_derivation,
    is_singular_jordan_derivation,
    jordan_n_identity,
    q_n,
    scalar_map,
    square_map,
    zero_map,
)
from jordanlab.peirce import make_peirce_context
from jordanlab.rings import build_matrix_ring, build_product_ring, build_triangular_ring, build_zmod
from oracles import naive_identity, naive_swap, q

Z3 = build_zmod(3)
T2 = build_triangular_ring(Z3, 2)
Z3Z3 = build_product_ring(Z3, Z3)
M2 = build_matrix_ring(Z3, 2)


def images_for(ring):
    return st.lists(st.integers(0, ring.order - 1), min_size=ring.order, max_size=ring.order)


def naive_pairs(ring, law):
    for a, b in itertools.product(range(ring.order), repeat=2):
        if not law(a, b):
            return (a, b)
    return None


def test_q_n_matches_oracle():
    for ts in itertools.product(range(9), repeat=3):
        assert q_n(Z3Z3, list(ts)) == q(Z3Z3, ts)
    assert q_n(M2, [5]) == 5
    assert maps.jordan_product(M2, 1, 3) == M2.jordan(1, 3)


def test_constructors(m2):
    e11, e12 = m2.element("E11"), m2.element("E12")
    ad = inner_derivation(m2, e11)
    assert ad(e12) == e12
    assert scalar_map(m2, m2.element("2I"))(e12) == m2.element("2E12")
    assert square_map(m2)(e12) == 0
    assert (identity_map(m2) - identity_map(m2)) == zero_map(m2)
    assert (ad + zero_map(m2)) == ad
    assert ad.perturbed(0, 1)(0) == 1 and ad(0) == 0
    with pytest.raises(ValueError):
        RingMap(m2, [0, 1])
    with pytest.raises(ValueError):
        RingMap(m2, [81] * 81)


def test_pairwise_predicates(m2, t2):
    for ring in (m2, t2):
        for a in range(ring.order):
            assert is_derivation(inner_derivation(ring, a))
        assert is_centralizer(scalar_map(ring, ring.element("2I")))
        assert is_additive(scalar_map(ring, ring.element("E11")))
    check = is_derivation(identity_map(m2))
    assert not check and check.law == "leibniz" and check.witness == (1, 1)
    assert not is_additive(square_map(m2))
    assert not is_centralizer(scalar_map(m2, m2.element("E11")))
    # on a commutative ring derivations and antiderivations coincide
    assert is_antiderivation(zero_map(Z3Z3))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_pairwise_match_oracle(data):
    ring = data.draw(st.sampled_from([Z3, T2, Z3Z3]))
    f = RingMap(ring, data.draw(images_for(ring)))
    add = lambda a, b: f(ring.add(a, b)) == ring.add(f(a), f(b))
    leib = lambda a, b: f(ring.mul(a, b)) == ring.add(ring.mul(f(a), b), ring.mul(a, f(b)))
    assert is_additive(f).witness == naive_pairs(ring, add)
    d = is_derivation(f)
    if d.law == "leibniz" or d.ok:
        assert d.witness == naive_pairs(ring, leib)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_jordan_identity_matches_oracle(data):
    ring = data.draw(st.sampled_from([Z3, T2, Z3Z3]))
    n = data.draw(st.integers(2, 3) if ring.order < 27 else st.just(2))
    kind = data.draw(st.sampled_from(["random", "inner", "scalar", "sum"]))
    if kind == "random":
        f = RingMap(ring, data.draw(images_for(ring)))
    else:
        a = data.draw(st.integers(0, ring.order - 1))
        f = {"inner": inner_derivation, "scalar": scalar_map}.get(kind, lambda r, x: scalar_map(r, r.one) + inner_derivation(r, x))(ring, a)
    g = RingMap(ring, data.draw(images_for(ring)))
    assert is_jordan_n_derivation(f, n).witness == naive_identity(ring, f.images, f.images, n)
    assert is_jordan_n_centralizer(f, n).witness == naive_identity(ring, f.images, None, n)
    assert jordan_n_identity(f, g, n).witness == naive_identity(ring, f.images, g.images, n)
    assert check_swap_law(f, n).witness == naive_swap(ring, f.images, n)


def test_m2_n3_matches_oracle_for_perturbed_scalar(m2):
    f = scalar_map(m2, m2.element("2I")).perturbed(40, 3)
    assert is_jordan_n_centralizer(f, 3).witness == naive_identity(m2, f.images, None, 3)


def test_jordan_laws_on_known_maps(m2, t2):
    for ring in (m2, t2):
        ad = inner_derivation(ring, ring.element("E12"))
        for n in (2, 3):
            assert is_jordan_n_derivation(ad, n)
            assert is_jordan_n_centralizer(scalar_map(ring, ring.element("2I")), n)
            F = scalar_map(ring, ring.element("2I")) + ad
            assert is_generalized_jordan_n_derivation(F, ad, n)
    check = is_jordan_n_derivation(square_map(m2), 2)
    assert not check
    assert check.info["additive"] is False
    assert check.witness == naive_identity(m2, square_map(m2).images, square_map(m2).images, 2)


def test_generalized_needs_jordan_derivation(t2):
    with pytest.raises(DefinitionError) as exc:
        is_generalized_jordan_n_derivation(identity_map(t2), identity_map(t2), 2)
    assert exc.value.witness == (1, 1)


def test_budget(m2):
    with pytest.raises(BudgetExceeded) as exc:
        is_jordan_n_derivation(zero_map(m2), 5)
    assert exc.value.required == 81**5
    with pytest.raises(BudgetExceeded):
        is_jordan_n_centralizer(zero_map(m2), 3, budget=1000)


def test_additive_extension(m2, z3z3):
    gens = m2.additive_generators
    f = additive_extension(m2, [g for g, _ in gens])
    assert f == identity_map(m2)
    assert additive_extension(z3z3, [0, 0]) == zero_map(z3z3)
    z4 = build_zmod(4)
    assert additive_extension(z4, [1]) == identity_map(z4)
    z6 = build_zmod(6)
    assert additive_extension(build_zmod(2), [1]) is not None
    assert additive_extension(z6, [3]) is not None
    with pytest.raises(ValueError):
        additive_extension(m2, [0])


def test_additive_extension_rejects_order_violations():
    z2xz4 = build_product_ring(build_zmod(2), build_zmod(4))
    # the generator of order 2 cannot go to an element of order 4
    images = [z2xz4.element("(0,1)"), 0]
    assert additive_extension(z2xz4, images) is None


def test_singular_jordan_derivation(t2, m2):
    ctx = make_peirce_context(t2, t2.element("E11"))
    assert is_singular_jordan_derivation(zero_map(t2), ctx)
    check = is_singular_jordan_derivation(inner_derivation(t2, t2.element("E12")), ctx)
    assert not check
    ctx = make_peirce_context(m2, m2.element("E11"))
    assert not is_singular_jordan_derivation(square_map(m2), ctx)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 26), st.integers(0, 26))
def test_sums_of_inner_derivations(a, b):
    f = inner_derivation(T2, a) + inner_derivation(T2, b)
    assert is_derivation(f)
    assert is_jordan_n_derivation(f, 3)
    assert np.array_equal(f.images, inner_derivation(T2, T2.add(a, b)).images)
