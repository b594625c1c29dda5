from __future__ import annotations

import itertools

import numpy as np
import pytest

from nilstring.errors import InconsistentPresentation, NotClass2, PresentationError
from nilstring.groups import build_pc_group, check_consistency
from nilstring.presentation import Collector, PcPresentation, prime_power_base


def heisenberg_matrix(v, q):
    a, c, b = v
    return np.array([[1, a, a * c + b], [0, 1, c], [0, 0, 1]], dtype=np.int64) % q


def test_prime_power_base():
    assert prime_power_base(81) == 3
    assert prime_power_base(7) == 7
    assert prime_power_base(12) is None
    assert prime_power_base(1) is None


@pytest.mark.parametrize(
    "orders, powers, comms",
    [
        ((), {}, {}),
        ((6,), {}, {}),
        ((3, 3), {}, {(0, 1): (0, 1)}),
        ((3, 3), {}, {(1, 0): (0, 3)}),
        ((3, 3), {5: (0, 1)}, {}),
        ((3, 3), {0: (0,)}, {}),
    ],
)
def test_malformed_presentations_rejected(orders, powers, comms):
    with pytest.raises(PresentationError):
        PcPresentation(orders, powers, comms)


def test_zero_tails_dropped():
    pres = PcPresentation((3, 3), {0: (0, 0)}, {(1, 0): (0, 0)})
    assert pres.power_tails == {} and pres.comm_tails == {}


def test_json_round_trip(tmp_path):
    pres = PcPresentation((9, 3, 3), {1: (3, 0, 0)}, {(2, 0): (0, 2, 0)}, label="demo")
    path = tmp_path / "demo.json"
    pres.dump(path)
    back = PcPresentation.load(path)
    assert back == pres
    data = pres.to_json_dict()
    assert data["commutators"] == {"3,1": [0, 2, 0]}
    assert data["powers"] == {"2": [3, 0, 0]}


def test_malformed_json():
    with pytest.raises(PresentationError):
        PcPresentation.from_json_dict({"generators": [{"size": 3}]})


def test_collector_matches_matrix_model():
    # x, y, z with [y, x] = z^-1, so [x, y] = z: the 3x3 unitriangular group mod 9
    q = 9
    pres = PcPresentation((q, q, q), {}, {(1, 0): (0, 0, q - 1)})
    col = Collector(pres)
    rng = np.random.default_rng(1)
    for _ in range(300):
        u, v = (tuple(int(x) for x in rng.integers(0, q, 3)) for _ in range(2))
        got = heisenberg_matrix(col.multiply(u, v), q)
        want = heisenberg_matrix(u, q) @ heisenberg_matrix(v, q) % q
        assert (got == want).all()


def test_collector_power_overflow():
    # cyclic of order 9 presented as g1^3 = g2
    pres = PcPresentation((3, 3), {0: (0, 1)})
    col = Collector(pres)
    x = (1, 0)
    acc = (0, 0)
    seen = []
    for _ in range(9):
        acc = col.multiply(acc, x)
        seen.append(acc)
    assert seen[-1] == (0, 0)
    assert len(set(seen)) == 9
    assert seen[2] == (0, 1)


def test_conjugation_relation_holds_in_a(group_a):
    # y^-1 x y = x^(1 + p^2) with x = g1, y = g2, p = 3
    G = group_a
    x, y = (1, 0), (0, 1)
    lhs = G.multiply(G.multiply(G.inverse(y), x), y)
    assert lhs == G.power(x, 10)
    assert G.multiply(y, x) == G.multiply(G.power(x, 19), y)


def test_opposite_convention_gives_isomorphic_group(group_a):
    from nilstring.invariants import is_isomorphic, verify_witness

    alt = build_pc_group(PcPresentation((27, 3), {}, {(1, 0): (9, 0)}), label="A'")
    assert alt.multiply((0, 1), (1, 0)) == (10, 1)
    v = is_isomorphic(alt, group_a)
    assert v.isomorphic
    assert verify_witness(alt, group_a, v.witness)


def test_inconsistent_presentation_detected():
    # g3 of order 9 cannot be a commutator of two elements of order 3 in class 2
    pres = PcPresentation((3, 3, 9), {}, {(1, 0): (0, 0, 1)})
    verdict = check_consistency(pres)
    assert not verdict.consistent
    assert verdict.witness is not None
    with pytest.raises(InconsistentPresentation) as info:
        build_pc_group(pres)
    assert info.value.witness is not None


def test_consistency_modes():
    small = PcPresentation((3, 3), {}, {})
    assert check_consistency(small).mode == "exhaustive"
    big = PcPresentation((9, 9, 9), {}, {(1, 0): (0, 0, 8)})
    v = check_consistency(big, samples=10_000)
    assert v.consistent and v.mode == "sampled"


def test_consistency_budget():
    from nilstring.errors import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        check_consistency(PcPresentation((27, 27, 27)))


def test_noncentral_tail_rejected():
    # [g2, g1] = g3 and [g3, g1] = g4 is class 3
    pres = PcPresentation((3, 3, 3, 3), {}, {(1, 0): (0, 0, 1, 0), (2, 0): (0, 0, 0, 1)})
    with pytest.raises(NotClass2):
        build_pc_group(pres)


def test_collector_all_pairs_small():
    # exhaustive associativity of the collected product on order 27
    pres = PcPresentation((3, 3, 3), {}, {(1, 0): (0, 0, 2)})
    col = Collector(pres)
    elems = list(itertools.product(range(3), repeat=3))
    for a, b, c in itertools.product(elems[:9], elems, elems[::3]):
        assert col.multiply(col.multiply(a, b), c) == col.multiply(a, col.multiply(b, c))
