from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilstring.catalog import abelian_from_invariants, abelian_group, burnside_p4, heisenberg
from nilstring.errors import NotAbelianRealizable, SearchBudgetExceeded
from nilstring.groups import ProductGroup, build_pc_group, build_table_group
from nilstring.invariants import (
    OrderStructure,
    abelian_order_structure,
    abelian_type,
    abelianization_order_structure,
    center,
    derived_subgroup,
    exponent_of,
    fingerprint,
    is_isomorphic,
    order_structure,
    pth_power_subgroup,
    verify_witness,
)
from nilstring.presentation import PcPresentation

from conftest import cached_burnside


def brute_order_structure(G) -> dict[int, int]:
    counts: dict[int, int] = {}
    for e in G.elements():
        o, x = 1, e
        while x != G.identity:
            x = G.multiply(x, e)
            o += 1
        counts[o] = counts.get(o, 0) + 1
    return counts


def test_order_structure_of_z2_x_z4():
    G = abelian_group({2: [2, 1]})
    assert order_structure(G).as_dict() == {1: 1, 2: 3, 4: 4}
    assert abelian_order_structure([2, 4]).as_dict() == {1: 1, 2: 3, 4: 4}


def test_order_structure_matches_brute_force(h31, group_a):
    for G in (h31, group_a, cached_burnside(3, "E")):
        assert order_structure(G).as_dict() == brute_order_structure(G)


def test_order_structure_validation():
    assert OrderStructure(((1, 1), (2, 0))) == OrderStructure(((1, 1),))
    with pytest.raises(ValueError):
        OrderStructure(((1, 1), (3, -1)))
    with pytest.raises(ValueError):
        OrderStructure(((1, 1), (3, 2), (2, 1)))
    with pytest.raises(ValueError):
        OrderStructure(((3, 2),))
    os = OrderStructure.from_orders([1] + [3] * 2 + [9] * 6)
    assert os[3] == 2 and os[5] == 0 and os.total == 9
    assert os.to_json() == [[1, 1], [3, 2], [9, 6]]


def test_combine_is_order_structure_of_product(h31):
    Z5 = abelian_group({5: [1]})
    P = ProductGroup([h31, Z5])
    assert order_structure(h31).combine(order_structure(Z5)) == order_structure(P)


partitions = st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=3)


@given(st.dictionaries(st.sampled_from([3, 5, 7]), partitions, min_size=1, max_size=2))
def test_abelian_type_inverts_order_structure(parts):
    invariants = sorted(p ** k for p, ks in parts.items() for k in ks)
    os = abelian_order_structure(invariants)
    assert abelian_type(os) == invariants
    assert os.total == math.prod(invariants)


@pytest.mark.parametrize("invariants", [[3, 9], [27, 3, 3], [5, 25], [3, 5]])
def test_abelian_order_structure_matches_built_group(invariants):
    G = abelian_from_invariants(invariants)
    assert order_structure(G) == abelian_order_structure(invariants)


def test_abelian_type_rejects_unrealizable():
    with pytest.raises(NotAbelianRealizable):
        abelian_type(OrderStructure.from_mapping({1: 1, 3: 4, 9: 4}))


def test_nonabelian_groups_share_abelian_order_structure():
    A = cached_burnside(3, "A")
    assert abelian_type(order_structure(A)) == [3, 27]


def test_subgroups(h32):
    Z = center(h32)
    D = derived_subgroup(h32)
    assert Z.order == 9 and D.order == 9
    assert exponent_of(D) == 9
    assert h32.identity in Z
    assert (99, 0, 0) not in Z
    sub = Z.as_group()
    assert sub.is_abelian and sub.cardinality == 9
    assert pth_power_subgroup(h32, 3).order == 27
    with pytest.raises(ValueError):
        pth_power_subgroup(h32, 5)


def test_abelianization(h31):
    assert abelianization_order_structure(h31).as_dict() == {1: 1, 3: 8}


def test_center_structures_separate_b_and_d():
    B, D = cached_burnside(3, "B"), cached_burnside(3, "D")
    assert order_structure(B) == order_structure(D)
    assert fingerprint(B).center_order_structure != fingerprint(D).center_order_structure
    v = is_isomorphic(B, D)
    assert not v.isomorphic and v.separating_invariant == "center_order_structure"


def test_derived_in_cubes_separates_d_and_e():
    D, E = cached_burnside(3, "D"), cached_burnside(3, "E")
    fd, fe = fingerprint(D), fingerprint(E)
    assert fd.first_difference(fe) == "derived_in_power_subgroup"
    assert fd.derived_in_power_subgroup == ((3, True),)
    assert fe.derived_in_power_subgroup == ((3, False),)


def _relabel(G, seed):
    rng = np.random.default_rng(seed)
    perm = rng.permutation(G.cardinality)
    perm[perm == G.identity_index], perm[G.identity_index] = perm[G.identity_index], 0
    # ensure identity goes to 0 so the relabelled table has a clean identity
    inv = np.argsort(perm)
    t = perm[G.table[inv][:, inv]]
    return build_table_group(t, f"relabel({G.label})")


@pytest.mark.parametrize("which", "ABCDEF")
def test_isomorphic_to_relabelled_copy(which):
    G = cached_burnside(3, which)
    H = _relabel(G, ord(which))
    v = is_isomorphic(G, H)
    assert v.isomorphic and v.method == "search"
    assert verify_witness(G, H, v.witness)


def test_relabelled_heisenberg_k2(h32):
    H = _relabel(h32, 11)
    v = is_isomorphic(h32, H)
    assert v.isomorphic and verify_witness(h32, H, v.witness)


def test_search_refutes_when_fingerprints_agree():
    # same fingerprint is not enough: drive the search to a negative answer
    A = cached_burnside(3, "A")
    G = build_table_group(A.table, "A-table")
    H = _relabel(cached_burnside(3, "A"), 4)
    assert is_isomorphic(G, H).isomorphic
    for X, Y in itertools.combinations([cached_burnside(3, w) for w in "BDE"], 2):
        assert not is_isomorphic(X, Y).isomorphic


def test_verify_witness_rejects_non_homomorphism(h31):
    bad = {h31.element(h31.gens[0]): h31.element(h31.gens[0]),
           h31.element(h31.gens[1]): h31.element(h31.gens[0])}
    assert not verify_witness(h31, h31, bad)


def test_budget_and_limit(h32):
    H = _relabel(h32, 2)
    with pytest.raises(SearchBudgetExceeded):
        is_isomorphic(h32, H, node_budget=1)
    with pytest.raises(SearchBudgetExceeded):
        is_isomorphic(h32, H, search_limit=500)


def test_factorwise_decision(h31):
    G = ProductGroup([h31, heisenberg(5, 1)])
    H = ProductGroup([heisenberg(5, 1), _relabel(h31, 9)])
    v = is_isomorphic(G, H)
    assert v.isomorphic and v.method == "factorwise"
    assert verify_witness(G, H, v.witness)
    Z = ProductGroup([abelian_group({3: [1, 1, 1]}), heisenberg(5, 1)])
    assert not is_isomorphic(G, Z).isomorphic


def test_presentations_of_same_group_isomorphic():
    # two presentations of Z9 x Z3
    P1 = build_pc_group(PcPresentation((9, 3)))
    P2 = build_pc_group(PcPresentation((3, 3, 3), {0: (0, 1, 0)}))
    v = is_isomorphic(P1, P2)
    assert v.isomorphic and verify_witness(P1, P2, v.witness)


def test_fingerprint_json_is_plain():
    fp = fingerprint(cached_burnside(3, "C")).to_json()
    assert fp["group_order"] == 81
    assert fp["power_subgroup_orders"] == {"3": 9}
