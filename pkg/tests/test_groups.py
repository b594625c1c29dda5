from __future__ import annotations

import itertools

import numpy as np
import pytest

from nilstring.catalog import abelian_group, heisenberg
from nilstring.errors import BudgetExceeded, InvalidTable
from nilstring.groups import (
    MultiplicationTable,
    PcGroup,
    ProductGroup,
    TableGroup,
    build_table_group,
    class2_witness,
    commutator,
    direct_product,
    element_order,
    power,
    table_from_generators,
    trivial_group,
    verify_class_at_most_2,
)
from nilstring.presentation import PcPresentation

# smallest loop that is not a group
LOOP5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def ut_matrix(entries, n, p):
    m = np.eye(n, dtype=np.int64)
    it = iter(entries)
    for i in range(n):
        for j in range(i + 1, n):
            m[i, j] = next(it)
    return m % p


def test_nonassociative_latin_square_rejected():
    mt = MultiplicationTable(np.array(LOOP5))
    assert mt.latin_witness() is None
    assert mt.identity_index() == 0
    w = mt.associativity_witness()
    assert w is not None
    t = mt.table
    x, g, y = w
    assert t[t[x, g], y] != t[x, t[g, y]]
    with pytest.raises(InvalidTable):
        build_table_group(mt)


@pytest.mark.parametrize(
    "table",
    [
        [[0, 1], [0, 1]],
        [[0, 1], [1, 1]],
        [[0, 1, 2]],
        [[0, 5], [5, 0]],
    ],
)
def test_invalid_tables(table):
    with pytest.raises(InvalidTable):
        build_table_group(np.array(table))


def test_cyclic_table_group():
    n = 7
    t = np.add.outer(np.arange(n), np.arange(n)) % n
    G = build_table_group(t, "Z7")
    assert G.is_abelian
    assert G.exponent == 7
    assert sorted(G.orders.tolist()) == [1] + [7] * 6


def test_unitriangular_matches_matrices(ut43):
    U = ut43
    assert U.cardinality == 3 ** 6
    rng = np.random.default_rng(5)
    for _ in range(200):
        a, b = (int(x) for x in rng.integers(0, U.cardinality, 2))
        ea, eb = U.element(a), U.element(b)
        got = ut_matrix(U.multiply(ea, eb), 4, 3)
        assert (got == ut_matrix(ea, 4, 3) @ ut_matrix(eb, 4, 3) % 3).all()
    assert not verify_class_at_most_2(U)
    a, b, c = class2_witness(U)
    assert U.commutator(U.commutator(a, b), c) != U.identity


def test_heisenberg_basics(h31):
    H = h31
    assert H.cardinality == 27
    assert int(H.center_mask.sum()) == 3
    assert int(H.derived_mask.sum()) == 3
    assert verify_class_at_most_2(H)
    x, y, z = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert commutator(H, x, y) == z
    assert power(H, x, 3) == H.identity
    assert element_order(H, (1, 1, 0)) == 3


def test_heisenberg_k2(h32):
    assert h32.cardinality == 729
    assert int(h32.center_mask.sum()) == 9
    assert h32.exponent == 9


def test_pc_group_table_agrees_with_collector(group_a):
    G = group_a
    t = G.table
    rng = np.random.default_rng(2)
    for i, j in rng.integers(0, G.cardinality, size=(200, 2)):
        assert G.index(G.collect(G.element(i), G.element(j))) == t[i, j]


def test_large_pc_group_without_table():
    pres = PcPresentation((27, 27, 27), {}, {(1, 0): (0, 0, 26)})
    G = PcGroup(pres)
    with pytest.raises(BudgetExceeded):
        G.table
    x, y = (1, 0, 0), (0, 1, 0)
    assert G.commutator(x, y) == (0, 0, 1)
    assert G.element_order(x) == 27


def test_power_and_inverse_consistent(group_a):
    G = group_a
    for e in G.elements()[:20]:
        assert G.multiply(e, G.inverse(e)) == G.identity
        assert G.power(e, -1) == G.inverse(e)
        assert G.power(e, G.element_order(e)) == G.identity


def test_product_group(h31):
    Z5 = abelian_group({5: [1]})
    P = direct_product(h31, Z5)
    assert P.cardinality == 135
    assert int(P.center_mask.sum()) == 15
    assert P.primes == [3, 5]
    # componentwise multiplication against the factor tables
    for i, j in itertools.product(range(0, 135, 17), range(0, 135, 11)):
        a, b = P.split(i), P.split(j)
        want = P.element(int(np.ravel_multi_index(
            (h31.table[a[0], b[0]], Z5.table[a[1], b[1]]), P.shape)))
        assert P.multiply(P.element(i), P.element(j)) == want
    assert (P.table[P.embed(0, 1)] >= 0).all()
    nested = ProductGroup([P, Z5])
    assert len(nested.factors) == 3


def test_table_from_generators_cyclic():
    mt, elems = table_from_generators([1], lambda a, b: (a + b) % 9, 0)
    assert mt.size == 9
    assert sorted(elems) == list(range(9))


def test_trivial_group():
    G = trivial_group()
    assert G.cardinality == 1 and G.is_abelian


def test_subgroup_and_power_masks(h32):
    cubes = h32.power_subgroup_mask(3)
    assert int(cubes.sum()) == 27
    assert int(h32.subgroup_mask([h32.gens[0]]).sum()) == 9


def test_table_group_with_labels():
    t = np.add.outer(np.arange(3), np.arange(3)) % 3
    G = TableGroup(MultiplicationTable(t), "Z3", labels=[(0,), (5,), (7,)])
    assert G.multiply((5,), (5,)) == (7,)
    with pytest.raises(ValueError):
        G.index((1,))


def test_heisenberg_rejects_bad_prime():
    with pytest.raises(ValueError):
        heisenberg(4)
