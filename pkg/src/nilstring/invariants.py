"""Structural invariants and isomorphism testing."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, fields
from functools import reduce
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .errors import NotAbelianRealizable, NotNilpotent, SearchBudgetExceeded
from .groups import (
    TABLE_LIMIT,
    Element,
    Group,
    MultiplicationTable,
    TableGroup,
    prime_factors,
    verify_class_at_most_2,
)
from .twist import _sylow_parts

ISO_SEARCH_LIMIT = 1000
ISO_NODE_BUDGET = 2_000_000


# ---------------------------------------------------------------------------
# order structures


@dataclass(frozen=True)
class OrderStructure:
    """Multiset of element orders, stored as sorted ``(order, count)`` pairs."""

    counts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted((int(d), int(c)) for d, c in self.counts if c))
        object.__setattr__(self, "counts", pairs)
        total = self.total
        if dict(pairs).get(1) != 1:
            raise ValueError("exactly one element of order 1 is required")
        for d, c in pairs:
            if c < 0 or total % d:
                raise ValueError(f"order {d} does not divide group order {total}")

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "OrderStructure":
        return cls(tuple(Counter(int(o) for o in orders).items()))

    @classmethod
    def from_mapping(cls, counts: Mapping[int, int]) -> "OrderStructure":
        return cls(tuple(counts.items()))

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def sequence(self) -> tuple[int, ...]:
        """The sorted tuple ``(1, n_2, ..., n_r)`` of element orders."""
        return tuple(d for d, c in self.counts for _ in range(c))

    def to_json(self) -> list[list[int]]:
        return [[d, c] for d, c in self.counts]

    def combine(self, other: "OrderStructure") -> "OrderStructure":
        """Order structure of a direct product."""
        out: Counter = Counter()
        for d1, c1 in self.counts:
            for d2, c2 in other.counts:
                out[math.lcm(d1, d2)] += c1 * c2
        return OrderStructure(tuple(out.items()))

    def __getitem__(self, d: int) -> int:
        return self.as_dict().get(d, 0)


def order_structure(G: Group) -> OrderStructure:
    return OrderStructure.from_orders(G.orders.tolist())


def _vp(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _p_adic(n: int, p: int) -> int | None:
    """``k`` with ``n == p^k``, else ``None``."""
    k = _vp(n, p)
    return k if n == p ** k else None


def abelian_order_structure(invariants: Sequence[int]) -> OrderStructure:
    """Order structure of ``Z_{q_1} x ... x Z_{q_m}`` for prime powers ``q_i``."""
    result = OrderStructure(((1, 1),))
    by_prime: dict[int, list[int]] = {}
    for q in invariants:
        if q == 1:
            continue
        (p,) = prime_factors(q)
        by_prime.setdefault(p, []).append(_p_adic(q, p))
    for p, exps in by_prime.items():
        top = max(exps)
        # elements of order dividing p^k number p^(sum min(k, e_i))
        below = [p ** sum(min(k, e) for e in exps) for k in range(top + 1)]
        part = {p ** k: below[k] - below[k - 1] for k in range(1, top + 1)}
        part[1] = 1
        result = result.combine(OrderStructure.from_mapping(part))
    return result


def abelian_type(os: OrderStructure) -> list[int]:
    """Elementary divisors of the abelian group with order structure ``os``.

    Returned as an ascending list of prime powers; ``[]`` is the trivial
    group.
    """
    counts = os.as_dict()
    total = os.total
    invariants: list[int] = []
    for p in prime_factors(total):
        v = _vp(total, p)
        logs = []
        k = 0
        while True:
            n_k = sum(c for d, c in counts.items() if (p ** k) % d == 0)
            a = _p_adic(n_k, p)
            if a is None:
                raise NotAbelianRealizable(f"{n_k} elements of order dividing {p}^{k}")
            logs.append(a)
            if a == v:
                break
            k += 1
            if k > v:
                raise NotAbelianRealizable(f"{p}-part does not reach {p}^{v}")
        at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))] + [0]
        if any(at_least[k] < at_least[k + 1] for k in range(len(at_least) - 1)):
            raise NotAbelianRealizable(f"inconsistent {p}-part")
        for k in range(1, len(logs)):
            invariants.extend([p ** k] * (at_least[k - 1] - at_least[k]))
    invariants.sort()
    if abelian_order_structure(invariants) != os:
        raise NotAbelianRealizable("no abelian group has this order structure")
    return invariants


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: Group
    indices: np.ndarray

    @classmethod
    def from_mask(cls, parent: Group, mask: np.ndarray) -> "Subgroup":
        return cls(parent, np.flatnonzero(mask))

    @property
    def order(self) -> int:
        return int(self.indices.size)

    def __len__(self) -> int:
        return self.order

    @property
    def elements(self) -> list[Element]:
        return [self.parent.element(int(i)) for i in self.indices]

    def __contains__(self, e) -> bool:
        try:
            i = self.parent.index(e)
        except ValueError:
            return False
        return bool(np.isin(i, self.indices))

    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.cardinality, dtype=bool)
        m[self.indices] = True
        return m

    def order_structure(self) -> OrderStructure:
        return OrderStructure.from_orders(self.parent.orders[self.indices].tolist())

    def as_group(self, label: str | None = None) -> TableGroup:
        idx = self.indices
        pos = np.full(self.parent.cardinality, -1, dtype=np.int64)
        pos[idx] = np.arange(idx.size)
        sub = pos[self.parent.table[idx][:, idx]]
        return TableGroup(MultiplicationTable(sub), label or f"sub({self.parent.label})",
                          labels=self.elements, check=False)


def center(G: Group) -> Subgroup:
    return Subgroup.from_mask(G, G.center_mask)


def derived_subgroup(G: Group) -> Subgroup:
    return Subgroup.from_mask(G, G.derived_mask)


def exponent_of(S: Subgroup) -> int:
    return int(reduce(math.lcm, S.parent.orders[S.indices].tolist(), 1))


def pth_power_subgroup(G: Group, p: int) -> Subgroup:
    """Subgroup generated by all ``p``-th powers.

    In an odd-order class-2 ``p``-group the set of ``p``-th powers is already
    a subgroup; that is checked rather than assumed.
    """
    if G.cardinality % p:
        raise ValueError(f"{p} does not divide |G| = {G.cardinality}")
    mask = G.power_subgroup_mask(p)
    if p % 2 and G.primes == [p] and G.cardinality <= TABLE_LIMIT:
        powers = np.zeros(G.cardinality, dtype=bool)
        powers[G.power_map(p)] = True
        if (powers != mask).any() and verify_class_at_most_2(G):
            raise AssertionError(f"{G.label}: {p}-th powers do not form a subgroup")
    return Subgroup.from_mask(G, mask)


def abelianization_order_structure(G: Group) -> OrderStructure:
    """Order structure of ``G / [G, G]``."""
    D = G.derived_mask
    d = int(D.sum())
    coset_order = np.zeros(G.cardinality, dtype=np.int64)
    e = G.exponent
    for m in sorted(k for k in range(1, e + 1) if e % k == 0):
        hit = D[G.power_map(m)] & (coset_order == 0)
        coset_order[hit] = m
    counts = Counter(coset_order.tolist())
    return OrderStructure(tuple((o, c // d) for o, c in counts.items()))


# ---------------------------------------------------------------------------
# fingerprints


@dataclass(frozen=True)
class Fingerprint:
    group_order: int
    order_structure: OrderStructure
    center_order: int
    center_order_structure: OrderStructure
    derived_order: int
    derived_exponent: int
    power_subgroup_orders: tuple[tuple[int, int], ...]
    derived_in_power_subgroup: tuple[tuple[int, bool], ...]
    abelianization_order_structure: OrderStructure

    def first_difference(self, other: "Fingerprint") -> str | None:
        for f in fields(self):
            if getattr(self, f.name) != getattr(other, f.name):
                return f.name
        return None

    def to_json(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, OrderStructure):
                v = v.to_json()
            elif isinstance(v, tuple):
                v = {str(p): x for p, x in v}
            out[f.name] = v
        return out


def fingerprint(G: Group) -> Fingerprint:
    cached = G.__dict__.get("_fingerprint")
    if cached is not None:
        return cached
    orders = G.orders
    Z = G.center_mask
    D = G.derived_mask
    power_orders, contained = [], []
    for p in G.primes:
        P = G.power_subgroup_mask(p)
        power_orders.append((p, int(P.sum())))
        contained.append((p, bool((P | ~D).all())))
    fp = Fingerprint(
        group_order=G.cardinality,
        order_structure=order_structure(G),
        center_order=int(Z.sum()),
        center_order_structure=OrderStructure.from_orders(orders[Z].tolist()),
        derived_order=int(D.sum()),
        derived_exponent=int(reduce(math.lcm, orders[D].tolist(), 1)),
        power_subgroup_orders=tuple(power_orders),
        derived_in_power_subgroup=tuple(contained),
        abelianization_order_structure=abelianization_order_structure(G),
    )
    G.__dict__["_fingerprint"] = fp
    return fp


# ---------------------------------------------------------------------------
# isomorphism


@dataclass(frozen=True)
class IsoVerdict:
    isomorphic: bool
    witness: dict[Element, Element] | None = None
    separating_invariant: str | None = None
    method: str = ""

    def __bool__(self) -> bool:
        return self.isomorphic


def verify_witness(G: Group, H: Group, witness: Mapping[Element, Element]) -> bool:
    """Does ``witness`` extend to a bijective homomorphism ``G -> H``?"""
    if G.cardinality != H.cardinality:
        return False
    gens = [G.index(g) for g in witness]
    imgs = [H.index(h) for h in witness.values()]
    if G.cardinality == 1:
        return True
    size, _ = kernels.extend_hom(G.table, np.array(gens, dtype=np.int64), H.table,
                                 np.array(imgs, dtype=np.int64), G.identity_index, H.identity_index)
    return size == G.cardinality


def _reduce_seeds(G: Group, values: np.ndarray, base: Sequence[int] = ()) -> list[int]:
    chosen = list(base)
    span = G.subgroup_mask(chosen)
    for v in values.tolist():
        if not span[v]:
            chosen.append(int(v))
            span = G.subgroup_mask(chosen)
    return chosen[len(base):]


def frattini_seeds(G: Group, p: int) -> list[int]:
    """Generators of ``G^p [G, G]``, the Frattini subgroup of a ``p``-group."""
    values = np.unique(np.concatenate([G.power_map(p), G.commutator_table.ravel()]))
    return _reduce_seeds(G, values)


def _search_generators(G: Group, phi_seeds: list[int]) -> list[int]:
    order = sorted(range(G.cardinality), key=lambda x: (-int(G.orders[x]), x))
    chosen: list[int] = []
    span = G.subgroup_mask(phi_seeds)
    for x in order:
        if span.all():
            break
        if not span[x]:
            chosen.append(x)
            span = G.subgroup_mask(phi_seeds + chosen)
    return chosen


def _backtrack(G: Group, H: Group, node_budget: int) -> IsoVerdict:
    p = prime_factors(G.cardinality)
    pgroup = len(p) == 1
    phi_g = frattini_seeds(G, p[0]) if pgroup else []
    phi_h = frattini_seeds(H, p[0]) if pgroup else []
    gens = _search_generators(G, phi_g)
    keys_g = (G.orders, G.center_mask, G.class_sizes)
    keys_h = (H.orders, H.center_mask, H.class_sizes)
    cands = []
    for g in gens:
        ok = np.ones(H.cardinality, dtype=bool)
        for kg, kh in zip(keys_g, keys_h):
            ok &= kh == kg[g]
        cands.append(np.flatnonzero(ok).tolist())
    tg, th = G.table, H.table
    gens_arr = np.array(gens, dtype=np.int64)
    images: list[int] = []
    nodes = 0

    def descend(k: int) -> bool:
        nonlocal nodes
        if k == len(gens):
            return True
        span = H.subgroup_mask(phi_h + images)
        for h in cands[k]:
            if span[h]:
                continue
            nodes += 1
            if nodes > node_budget:
                raise SearchBudgetExceeded(
                    f"isomorphism search {G.label} vs {H.label} exceeded {node_budget} nodes")
            images.append(h)
            size, _ = kernels.extend_hom(tg, gens_arr[:k + 1], th,
                                         np.array(images, dtype=np.int64),
                                         G.identity_index, H.identity_index)
            if size > 0 and descend(k + 1):
                return True
            images.pop()
        return False

    if descend(0):
        witness = {G.element(g): H.element(h) for g, h in zip(gens, images)}
        return IsoVerdict(True, witness, None, "search")
    return IsoVerdict(False, None, "search", "search")


def is_isomorphic(G: Group, H: Group, *, search_limit: int = ISO_SEARCH_LIMIT,
                  node_budget: int = ISO_NODE_BUDGET) -> IsoVerdict:
    """Exact isomorphism decision with a generator-image witness.

    Nilpotent groups whose order has several prime divisors are compared
    Sylow factor by Sylow factor.  Otherwise fingerprints refute first and a
    backtracking search assigns images to a minimal generating set, pruning
    by element order, centrality, class size, independence modulo the
    Frattini subgroup and by extending every partial assignment to a
    homomorphism of the subgroup it generates.
    """
    if G is H:
        return IsoVerdict(True, {G.element(g): G.element(g) for g in G.gens}, None, "identity")
    if G.cardinality != H.cardinality:
        return IsoVerdict(False, None, "group_order", "fingerprint")
    if G.cardinality == 1:
        return IsoVerdict(True, {}, None, "identity")
    if len(prime_factors(G.cardinality)) > 1:
        # nilpotent groups are isomorphic iff their Sylow factors are
        try:
            parts_g, parts_h = _sylow_parts(G), _sylow_parts(H)
        except NotNilpotent:
            parts_g = parts_h = None
        if parts_g is not None:
            witness = {}
            for (p, P, emb_p), (q, Q, emb_q) in zip(parts_g, parts_h):
                v = is_isomorphic(P, Q, search_limit=search_limit, node_budget=node_budget)
                if not v.isomorphic:
                    return IsoVerdict(False, None, f"sylow_{p}.{v.separating_invariant}", "factorwise")
                for a, b in v.witness.items():
                    witness[G.element(emb_p(P.index(a)))] = H.element(emb_q(Q.index(b)))
            return IsoVerdict(True, witness, None, "factorwise")
    field = fingerprint(G).first_difference(fingerprint(H))
    if field is not None:
        return IsoVerdict(False, None, field, "fingerprint")
    if G.cardinality > search_limit:
        raise SearchBudgetExceeded(
            f"order {G.cardinality} exceeds isomorphism search limit {search_limit}")
    return _backtrack(G, H, node_budget)
