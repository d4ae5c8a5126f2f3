import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jordanlab.errors import SizeCapError, StructuralError, UnsupportedOperation
from jordanlab.rings import (
    FiniteRing,
    build_block_triangular_ring,
    build_matrix_ring,
    build_product_ring,
    build_triangular_ring,
    build_zmod,
    find_idempotents,
    halve,
    is_two_torsion_free,
    nontrivial_idempotents,
    validate_ring,
)
from oracles import int_matrices, matmul


def decode(ring_index, positions, r, m):
    """Matrix of a matrix-family element, least significant digit first."""
    mat = [[0] * r for _ in range(r)]
    x = ring_index
    for i, j in positions:
        mat[i][j] = x % m
        x //= m
    return tuple(tuple(row) for row in mat)


FULL = [(0, 0), (0, 1), (1, 0), (1, 1)]
UPPER = [(0, 0), (0, 1), (1, 1)]


def test_zmod_tables(z3):
    assert z3.order == 3
    assert z3.add(2, 2) == 1
    assert z3.mul(2, 2) == 1
    assert z3.neg(1) == 2
    assert z3.one == 1
    assert validate_ring(z3).ok


@pytest.mark.parametrize("positions,upper", [(FULL, False), (UPPER, True)])
def test_matrix_tables_match_oracle(z3, positions, upper):
    ring = build_triangular_ring(z3, 2) if upper else build_matrix_ring(z3, 2)
    mats = [decode(x, positions, 2, 3) for x in range(ring.order)]
    index = {m: i for i, m in enumerate(mats)}
    assert len(index) == ring.order
    for a, b in itertools.product(range(ring.order), repeat=2):
        assert mats[ring.mul(a, b)] == matmul(mats[a], mats[b], 3)
        s = tuple(tuple((x + y) % 3 for x, y in zip(ra, rb)) for ra, rb in zip(mats[a], mats[b]))
        assert mats[ring.add(a, b)] == s
    assert mats[ring.one] == ((1, 0), (0, 1))


def test_labels_and_indices(m2, z3z3):
    assert m2.element("E11") == 1
    assert m2.element("I") == 28
    assert m2.element("2I") == 56
    assert m2.label(0) == "0"
    assert m2.label(3) == "E12"
    assert m2.element(5) == 5
    assert z3z3.element("(1,0)") == 1
    assert z3z3.element("(0,1)") == 3
    with pytest.raises(ValueError):
        m2.element("E33")


@pytest.mark.parametrize("name", ["m2", "t2", "z3z3", "z4"])
def test_constructions_validate(name, request):
    assert validate_ring(request.getfixturevalue(name)).ok


def test_block_triangular_is_triangular_for_unit_blocks(z3):
    blk = build_block_triangular_ring(z3, 2, [1, 1])
    tri = build_triangular_ring(z3, 2)
    assert np.array_equal(blk.mul_table, tri.mul_table)
    full = build_block_triangular_ring(z3, 2, [2])
    assert np.array_equal(full.mul_table, build_matrix_ring(z3, 2).mul_table)
    with pytest.raises(ValueError):
        build_block_triangular_ring(z3, 3, [1, 1])


def test_idempotent_counts_match_oracle(m2, t2):
    for ring, upper in ((m2, False), (t2, True)):
        expected = sum(1 for a in int_matrices(3, 2, upper) if matmul(a, a, 3) == a)
        assert len(find_idempotents(ring)) == expected
    assert len(find_idempotents(m2)) == 14
    assert m2.element("E11") in nontrivial_idempotents(m2)


def test_two_torsion(z3, z4, m2):
    assert is_two_torsion_free(m2)
    check = is_two_torsion_free(z4)
    assert not check and check.witness == 2
    with pytest.raises(UnsupportedOperation):
        z4.half_table
    for t in range(z3.order):
        assert z3.double(halve(z3, t)) == t


def test_validate_reports_each_axiom():
    z3 = build_zmod(3)
    bad_one = FiniteRing(z3.add_table, z3.mul_table, 2)
    assert validate_ring(bad_one).axiom == "identity axiom"
    # every single-entry change of the Z3 product breaks some axiom
    for a, b, v in itertools.product(range(3), range(3), range(3)):
        if v == z3.mul(a, b):
            continue
        mul = np.array(z3.mul_table)
        mul[a, b] = v
        assert not validate_ring(FiniteRing(z3.add_table, mul, 1)).ok
    sub = np.array([[0, 1, 2], [1, 2, 0], [2, 0, 0]])
    report = validate_ring(FiniteRing(sub, z3.mul_table, 1))
    assert not report.ok and report.witness is not None


def test_structural_errors(z3):
    with pytest.raises(StructuralError):
        validate_ring(FiniteRing([[0, 1], [1, 0]], z3.mul_table, 1))
    with pytest.raises(StructuralError):
        validate_ring(FiniteRing([[0, 5], [5, 0]], [[0, 0], [0, 1]], 1))


def test_size_cap(z3):
    with pytest.raises(SizeCapError):
        build_matrix_ring(z3, 3, cap=1000)
    with pytest.raises(SizeCapError):
        build_zmod(5000)


def test_product_ring_componentwise(z3, z3z3):
    for a, b in itertools.product(range(9), repeat=2):
        xa, ya, xb, yb = a % 3, a // 3, b % 3, b // 3
        assert z3z3.mul(a, b) == (xa * xb) % 3 + 3 * ((ya * yb) % 3)
        assert z3z3.add(a, b) == (xa + xb) % 3 + 3 * ((ya + yb) % 3)
    assert z3z3.one == 4


@pytest.mark.parametrize("name", ["m2", "t2", "z3z3", "z4"])
def test_additive_generators_span(name, request):
    ring = request.getfixturevalue(name)
    coords = ring.coordinates
    for x in range(ring.order):
        acc = 0
        for c, (g, _) in zip(coords[x], ring.additive_generators):
            acc = ring.add(acc, ring.multiple(int(c), g))
        assert acc == x


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 80))
def test_m2_ring_laws(a, b, c):
    ring = _M2
    assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
    assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
    assert ring.jordan(a, b) == ring.jordan(b, a)
    assert ring.sub(ring.add(a, b), b) == a


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.integers(2, 7))
def test_zmod_products_validate(m, k):
    ring = build_product_ring(build_zmod(m), build_zmod(k))
    assert validate_ring(ring).ok
    assert ring.order == m * k
    assert len(find_idempotents(ring)) == len(find_idempotents(build_zmod(m))) * len(find_idempotents(build_zmod(k)))


_M2 = build_matrix_ring(build_zmod(3), 2)
