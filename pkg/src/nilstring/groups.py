"""Concrete finite groups.

Elements are exponent vectors (tuples of ints).  Internally every group also
numbers its elements ``0 .. |G|-1``; most algorithms work on that index space
and on the Cayley table, which is materialized lazily for groups of at most
``TABLE_LIMIT`` elements.

Backends:

``PcGroup``       power-commutator presentation with class-2 collection
``TableGroup``    explicit multiplication table
``ProductGroup``  direct product of other groups, computed componentwise

Twisted groups live in :mod:`nilstring.twist`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Sequence

import numpy as np

from . import kernels
from .errors import (
    BudgetExceeded,
    InconsistentPresentation,
    InvalidTable,
    NotClass2,
)
from .presentation import Collector, PcPresentation

Element = tuple[int, ...]

TABLE_LIMIT = 4096
CONSISTENCY_BUDGET = 10_000
DEFAULT_SEED = 20240229


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _vector_power(table: np.ndarray, identity: int, m: int) -> np.ndarray:
    """``x -> x^m`` for every index ``x`` (``m >= 0``)."""
    n = table.shape[0]
    result = np.full(n, identity, dtype=np.int64)
    base = np.arange(n, dtype=np.int64)
    while m:
        if m & 1:
            result = table[result, base]
        m >>= 1
        if m:
            base = table[base, base]
    return result


class Group:
    """A finite group with indexed elements.

    Subclasses provide ``element``/``index`` and either ``_build_table`` or
    their own overrides of the index-space caches.  Groups are immutable.
    """

    label: str = ""
    cardinality: int = 1
    identity_index: int = 0

    def __len__(self) -> int:
        return self.cardinality

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label!r} order={self.cardinality}>"

    # -- encoding --------------------------------------------------------

    def element(self, i: int) -> Element:
        raise NotImplementedError

    def index(self, e: Sequence[int]) -> int:
        raise NotImplementedError

    def elements(self) -> list[Element]:
        return [self.element(i) for i in range(self.cardinality)]

    @property
    def identity(self) -> Element:
        return self.element(self.identity_index)

    # -- multiplication ----------------------------------------------------

    def _build_table(self) -> np.ndarray:
        raise NotImplementedError

    @cached_property
    def table(self) -> np.ndarray:
        if self.cardinality > TABLE_LIMIT:
            raise BudgetExceeded(
                f"{self.label}: order {self.cardinality} exceeds table limit {TABLE_LIMIT}"
            )
        t = np.ascontiguousarray(self._build_table(), dtype=np.int32)
        t.setflags(write=False)
        return t

    @property
    def has_table(self) -> bool:
        return "table" in self.__dict__

    def _mul_index(self, i: int, j: int) -> int:
        """Product of indices without a table; backends override."""
        return int(self.table[i, j])

    def mul_index(self, i: int, j: int) -> int:
        if self.has_table or self.cardinality <= TABLE_LIMIT:
            return int(self.table[i, j])
        return self._mul_index(i, j)

    def multiply(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return self.element(self.mul_index(self.index(a), self.index(b)))

    @property
    def _tabled(self) -> bool:
        return self.has_table or self.cardinality <= TABLE_LIMIT

    def _order_of_index(self, i: int) -> int:
        if self._tabled:
            return int(self.orders[i])
        m, cur = 1, i
        while cur != self.identity_index:
            cur = self.mul_index(cur, i)
            m += 1
        return m

    def _inverse_index(self, i: int) -> int:
        if self._tabled:
            return int(self.inverses[i])
        return self.index(self.power(self.element(i), self._order_of_index(i) - 1))

    def inverse(self, a: Sequence[int]) -> Element:
        return self.element(self._inverse_index(self.index(a)))

    def power(self, a: Sequence[int], m: int) -> Element:
        i = self.index(a)
        if m < 0:
            i, m = self._inverse_index(i), -m
        result = self.identity_index
        while m:
            if m & 1:
                result = self.mul_index(result, i)
            m >>= 1
            if m:
                i = self.mul_index(i, i)
        return self.element(result)

    def commutator(self, a: Sequence[int], b: Sequence[int]) -> Element:
        """``[a, b] = a^-1 b^-1 a b``."""
        i, j = self.index(a), self.index(b)
        left = self.mul_index(self._inverse_index(i), self._inverse_index(j))
        return self.element(self.mul_index(left, self.mul_index(i, j)))

    def element_order(self, a: Sequence[int]) -> int:
        return self._order_of_index(self.index(a))

    # -- index-space caches ----------------------------------------------

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.argmax(self.table == self.identity_index, axis=1).astype(np.int64)

    @cached_property
    def orders(self) -> np.ndarray:
        t = self.table
        n = self.cardinality
        orders = np.zeros(n, dtype=np.int64)
        base = np.arange(n, dtype=np.int64)
        cur = base.copy()
        m = 1
        while True:
            hit = (cur == self.identity_index) & (orders == 0)
            orders[hit] = m
            if orders.all():
                return orders
            cur = t[cur, base]
            m += 1

    def power_map(self, m: int) -> np.ndarray:
        if m < 0:
            return self.power_map(-m)[self.inverses]
        return _vector_power(self.table, self.identity_index, m)

    @cached_property
    def commutator_table(self) -> np.ndarray:
        t = self.table
        inv = self.inverses
        return t[t[inv][:, inv], t]

    @cached_property
    def gens(self) -> tuple[int, ...]:
        """A generating set (indices), greedy by decreasing element order."""
        order = sorted(range(self.cardinality), key=lambda x: (-int(self.orders[x]), x))
        chosen: list[int] = []
        span = self.subgroup_mask([])
        for x in order:
            if span.all():
                break
            if not span[x]:
                chosen.append(x)
                span = self.subgroup_mask(chosen)
        return tuple(chosen)

    def subgroup_mask(self, seeds: Sequence[int]) -> np.ndarray:
        seeds = np.asarray(list(seeds), dtype=np.int64)
        return kernels.closure(self.table, seeds, self.identity_index)

    @cached_property
    def center_mask(self) -> np.ndarray:
        t = self.table
        mask = np.ones(self.cardinality, dtype=bool)
        for g in self.gens:
            mask &= t[:, g] == t[g, :]
        return mask

    @cached_property
    def derived_mask(self) -> np.ndarray:
        values = np.unique(self.commutator_table)
        return self.subgroup_mask(values)

    def power_subgroup_mask(self, p: int) -> np.ndarray:
        return self.subgroup_mask(np.unique(self.power_map(p)))

    @cached_property
    def class_sizes(self) -> np.ndarray:
        t = self.table
        centralizer = (t == t.T).sum(axis=1)
        return self.cardinality // centralizer

    @cached_property
    def is_abelian(self) -> bool:
        return bool(self.center_mask.all())

    @cached_property
    def exponent(self) -> int:
        return int(reduce(math.lcm, self.orders.tolist(), 1))

    @property
    def primes(self) -> list[int]:
        return prime_factors(self.cardinality)

    @property
    def factors(self) -> tuple["Group", ...]:
        return (self,)


# ---------------------------------------------------------------------------
# polycyclic backend


class PcGroup(Group):
    """Group of a power-commutator presentation.

    Elements are normal-form exponent vectors, numbered in lexicographic
    order (first generator most significant).  Use :func:`build_pc_group`
    to get a validated instance.
    """

    def __init__(self, presentation: PcPresentation, label: str | None = None):
        self.presentation = presentation
        self.label = label or presentation.label or "pc"
        self.collector = Collector(presentation)
        self.rel_orders = presentation.rel_orders
        self.cardinality = presentation.order
        strides, s = [], 1
        for r in reversed(self.rel_orders):
            strides.append(s)
            s *= r
        self.strides = tuple(reversed(strides))
        self.identity_index = 0

    def element(self, i: int) -> Element:
        i = int(i)
        if not 0 <= i < self.cardinality:
            raise IndexError(f"element index {i} out of range")
        out = []
        for s, r in zip(self.strides, self.rel_orders):
            out.append((i // s) % r)
        return tuple(out)

    def index(self, e: Sequence[int]) -> int:
        if len(e) != len(self.rel_orders):
            raise ValueError(f"expected exponent vector of length {len(self.rel_orders)}")
        i = 0
        for x, s, r in zip(e, self.strides, self.rel_orders):
            if not 0 <= x < r:
                raise ValueError(f"exponent {x} outside [0, {r})")
            i += int(x) * s
        return i

    def _mul_index(self, i: int, j: int) -> int:
        return self.index(self.collector.multiply(self.element(i), self.element(j)))

    def collect(self, a: Sequence[int], b: Sequence[int]) -> Element:
        """Product by direct collection, bypassing the table."""
        self.index(a), self.index(b)
        return self.collector.multiply(a, b)

    @cached_property
    def right_generator_maps(self) -> np.ndarray:
        """``R[i, x]`` = index of ``x * g_i``, computed by collection."""
        k = len(self.rel_orders)
        out = np.empty((k, self.cardinality), dtype=np.int64)
        for x in range(self.cardinality):
            e = self.element(x)
            for i in range(k):
                out[i, x] = self.index(self.collector.times_generator(e, i))
        return out

    def _build_table(self) -> np.ndarray:
        # column y = column prev(y) right-multiplied by the last generator in
        # y's normal form; appending g_m to a normal form ending at g_m is exact
        n = self.cardinality
        R = self.right_generator_maps
        t = np.empty((n, n), dtype=np.int64)
        t[:, 0] = np.arange(n)
        k = len(self.rel_orders)
        for y in range(1, n):
            m = k - 1
            while (y // self.strides[m]) % self.rel_orders[m] == 0:
                m -= 1
            t[:, y] = R[m][t[:, y - self.strides[m]]]
        return t

    @cached_property
    def gens(self) -> tuple[int, ...]:
        return tuple(self.strides)


# ---------------------------------------------------------------------------
# table backend


@dataclass(frozen=True, eq=False)
class MultiplicationTable:
    table: np.ndarray

    def __post_init__(self):
        t = np.ascontiguousarray(np.asarray(self.table, dtype=np.int32))
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise InvalidTable("table must be a nonempty square array")
        object.__setattr__(self, "table", t)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    @cached_property
    def orders(self) -> np.ndarray:
        return TableGroup(self, check=False).orders

    def latin_witness(self) -> tuple | None:
        t = self.table
        n = self.size
        if t.min() < 0 or t.max() >= n:
            return ("entry out of range",)
        target = np.arange(n)
        for axis, what in ((1, "row"), (0, "column")):
            bad = ~(np.sort(t, axis=axis) == (target[None, :] if axis == 1 else target[:, None])).all(axis=axis)
            if bad.any():
                return (what, int(np.argmax(bad)))
        return None

    def identity_index(self) -> int | None:
        n = self.size
        target = np.arange(n)
        rows = np.flatnonzero((self.table == target[None, :]).all(axis=1))
        for e in rows:
            if (self.table[:, e] == target).all():
                return int(e)
        return None

    def associativity_witness(self, generators: Sequence[int] | None = None) -> tuple | None:
        """First ``(x, g, y)`` with ``(xg)y != x(gy)``.

        With ``generators`` this is Light's test, which is exact whenever the
        generators generate the whole table.
        """
        t = self.table
        gs = range(self.size) if generators is None else generators
        for g in gs:
            lhs = t[t[:, g], :]
            rhs = t[:, t[g, :]]
            diff = lhs != rhs
            if diff.any():
                x, y = np.unravel_index(int(np.argmax(diff)), diff.shape)
                return (int(x), int(g), int(y))
        return None

    def validate(self) -> None:
        w = self.latin_witness()
        if w is not None:
            raise InvalidTable(f"not a Latin square ({w[0]} {w[1:]})", w)
        if self.identity_index() is None:
            raise InvalidTable("no identity element")
        w = self.associativity_witness()
        if w is not None:
            raise InvalidTable(f"not associative at {w}", w)


class TableGroup(Group):
    """Group given by an explicit Cayley table.

    ``labels`` optionally names the elements (e.g. the parent's exponent
    vectors for subgroups, or matrix entries); default labels are ``(i,)``.
    """

    def __init__(self, mt: MultiplicationTable, label: str = "table",
                 labels: Sequence[Element] | None = None, *, check: bool = True):
        if check:
            mt.validate()
        self.mt = mt
        self.label = label
        self.cardinality = mt.size
        e = mt.identity_index()
        self.identity_index = 0 if e is None else e
        self._labels = [tuple(x) for x in labels] if labels is not None else None
        if self._labels is not None:
            if len(self._labels) != self.cardinality:
                raise ValueError("one label per element required")
            self._lookup = {x: i for i, x in enumerate(self._labels)}

    def element(self, i: int) -> Element:
        i = int(i)
        if not 0 <= i < self.cardinality:
            raise IndexError(f"element index {i} out of range")
        return self._labels[i] if self._labels is not None else (i,)

    def index(self, e: Sequence[int]) -> int:
        e = tuple(int(x) for x in e)
        if self._labels is not None:
            try:
                return self._lookup[e]
            except KeyError:
                raise ValueError(f"{e} is not an element of {self.label}") from None
        if len(e) != 1 or not 0 <= e[0] < self.cardinality:
            raise ValueError(f"{e} is not an element of {self.label}")
        return e[0]

    def _build_table(self) -> np.ndarray:
        return self.mt.table

    @cached_property
    def center_mask(self) -> np.ndarray:
        t = self.table
        return (t == t.T).all(axis=1)


def table_from_generators(gens: Sequence, mul, identity) -> tuple[MultiplicationTable, list]:
    """Cayley table of the group generated by ``gens`` under ``mul``.

    Elements are discovered by breadth-first closure; each new element is
    recorded as ``parent * g``, so column ``y`` of the table is column
    ``parent(y)`` pushed through right multiplication by ``g``.
    """
    elements = [identity]
    where = {identity: 0}
    parent = [(-1, -1)]
    head = 0
    while head < len(elements):
        x = elements[head]
        for k, g in enumerate(gens):
            y = mul(x, g)
            if y not in where:
                where[y] = len(elements)
                elements.append(y)
                parent.append((head, k))
        head += 1
    n = len(elements)
    right = np.empty((len(gens), n), dtype=np.int64)
    for i, x in enumerate(elements):
        for k, g in enumerate(gens):
            right[k, i] = where[mul(x, g)]
    t = np.empty((n, n), dtype=np.int64)
    t[:, 0] = np.arange(n)
    for y in range(1, n):
        par, k = parent[y]
        t[:, y] = right[k][t[:, par]]
    return MultiplicationTable(t), elements


# ---------------------------------------------------------------------------
# direct products


class ProductGroup(Group):
    """Direct product; elements are concatenated factor vectors."""

    def __init__(self, factors: Sequence[Group], label: str | None = None):
        flat: list[Group] = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, ProductGroup) else (f,))
        self._factors = tuple(flat)
        self.label = label or " x ".join(f.label for f in self._factors)
        self.shape = tuple(f.cardinality for f in self._factors)
        self.cardinality = math.prod(self.shape)
        self._widths = tuple(len(f.identity) for f in self._factors)
        self.identity_index = int(np.ravel_multi_index(
            tuple(f.identity_index for f in self._factors), self.shape))

    @property
    def factors(self) -> tuple[Group, ...]:
        return self._factors

    @cached_property
    def components(self) -> tuple[np.ndarray, ...]:
        return tuple(c.astype(np.int64) for c in np.unravel_index(np.arange(self.cardinality), self.shape))

    def _ravel(self, parts: Sequence) -> np.ndarray:
        return np.ravel_multi_index(tuple(parts), self.shape).astype(np.int64)

    def split(self, i: int) -> tuple[int, ...]:
        return tuple(int(c) for c in np.unravel_index(int(i), self.shape))

    def element(self, i: int) -> Element:
        i = int(i)
        if not 0 <= i < self.cardinality:
            raise IndexError(f"element index {i} out of range")
        out: list[int] = []
        for f, c in zip(self._factors, self.split(i)):
            out.extend(f.element(c))
        return tuple(out)

    def index(self, e: Sequence[int]) -> int:
        e = tuple(e)
        if len(e) != sum(self._widths):
            raise ValueError(f"expected vector of length {sum(self._widths)}")
        parts, pos = [], 0
        for f, w in zip(self._factors, self._widths):
            parts.append(f.index(e[pos:pos + w]))
            pos += w
        return int(np.ravel_multi_index(tuple(parts), self.shape))

    def embed(self, slot: int, factor_index: int) -> int:
        parts = [f.identity_index for f in self._factors]
        parts[slot] = factor_index
        return int(np.ravel_multi_index(tuple(parts), self.shape))

    def _mul_index(self, i: int, j: int) -> int:
        parts = [f.mul_index(a, b) for f, a, b in zip(self._factors, self.split(i), self.split(j))]
        return int(np.ravel_multi_index(tuple(parts), self.shape))

    def mul_index(self, i: int, j: int) -> int:
        if self.has_table:
            return int(self.table[i, j])
        return self._mul_index(i, j)

    def _build_table(self) -> np.ndarray:
        comps = self.components
        parts = [f.table[c[:, None], c[None, :]] for f, c in zip(self._factors, comps)]
        return np.ravel_multi_index(tuple(parts), self.shape)

    def _componentwise_mask(self, masks: Sequence[np.ndarray]) -> np.ndarray:
        out = np.ones(self.cardinality, dtype=bool)
        for m, c in zip(masks, self.components):
            out &= m[c]
        return out

    @cached_property
    def inverses(self) -> np.ndarray:
        return self._ravel([f.inverses[c] for f, c in zip(self._factors, self.components)])

    @cached_property
    def orders(self) -> np.ndarray:
        out = np.ones(self.cardinality, dtype=np.int64)
        for f, c in zip(self._factors, self.components):
            out = np.lcm(out, f.orders[c])
        return out

    def power_map(self, m: int) -> np.ndarray:
        return self._ravel([f.power_map(m)[c] for f, c in zip(self._factors, self.components)])

    @cached_property
    def gens(self) -> tuple[int, ...]:
        return tuple(self.embed(s, g) for s, f in enumerate(self._factors) for g in f.gens)

    @cached_property
    def center_mask(self) -> np.ndarray:
        return self._componentwise_mask([f.center_mask for f in self._factors])

    @cached_property
    def derived_mask(self) -> np.ndarray:
        return self._componentwise_mask([f.derived_mask for f in self._factors])

    def power_subgroup_mask(self, p: int) -> np.ndarray:
        return self._componentwise_mask([f.power_subgroup_mask(p) for f in self._factors])

    @cached_property
    def class_sizes(self) -> np.ndarray:
        out = np.ones(self.cardinality, dtype=np.int64)
        for f, c in zip(self._factors, self.components):
            out *= f.class_sizes[c]
        return out

    @cached_property
    def is_abelian(self) -> bool:
        return all(f.is_abelian for f in self._factors)


# ---------------------------------------------------------------------------
# operations


@dataclass(frozen=True)
class ConsistencyVerdict:
    consistent: bool
    mode: str
    witness: tuple | None = None
    reason: str = ""


def _relation_witness(G: PcGroup) -> tuple | None:
    pres = G.presentation
    t = G.table
    for i, r in enumerate(pres.rel_orders):
        gi = G.strides[i]
        expected = G.index(pres.power_tails.get(i, G.identity))
        got = int(G.power_map(r)[gi])
        if got != expected:
            return (G.element(gi), r, G.element(got))
    inv = G.inverses
    for j in range(pres.num_gens):
        for i in range(j):
            gj, gi = G.strides[j], G.strides[i]
            expected = G.index(pres.comm_tails.get((j, i), G.identity))
            got = int(t[t[inv[gj], inv[gi]], t[gj, gi]])
            if got != expected:
                return (G.element(gj), G.element(gi), G.element(got))
    return None


def _tail_centrality_witness(G: PcGroup) -> tuple | None:
    t = G.table
    pres = G.presentation
    tails = list(pres.power_tails.values()) + list(pres.comm_tails.values())
    for vec in tails:
        c = G.index(vec)
        for g in G.gens:
            if t[c, g] != t[g, c]:
                return (vec, G.element(g))
    return None


def check_consistency(pres: PcPresentation, *, budget: int = CONSISTENCY_BUDGET,
                      samples: int = 1_000_000, seed: int = DEFAULT_SEED,
                      collector_samples: int = 4096) -> ConsistencyVerdict:
    """Certify that ``pres`` defines a group of order ``prod r_i``.

    The table built by collection must be a Latin square with identity,
    pass Light's associativity test against every generator (exhaustive over
    element pairs), satisfy the defining relations, and agree with direct
    collection.  Element triples are checked exhaustively when there are at
    most ``samples`` of them and by seeded sampling otherwise; ``mode``
    records which.
    """
    n = pres.order
    if n > budget:
        raise BudgetExceeded(f"order {n} exceeds consistency budget {budget}")
    G = PcGroup(pres)
    mode = "exhaustive" if n ** 3 <= samples else "sampled"
    try:
        t = G.table
    except InconsistentPresentation as exc:
        return ConsistencyVerdict(False, mode, exc.witness, str(exc))
    mt = MultiplicationTable(t)
    w = mt.latin_witness()
    if w is not None:
        return ConsistencyVerdict(False, mode, w, "collected table is not a Latin square")
    w = mt.associativity_witness(G.gens)
    if w is not None:
        return ConsistencyVerdict(False, mode, tuple(G.element(x) for x in w),
                                  "associativity fails against a generator")
    w = _relation_witness(G)
    if w is not None:
        return ConsistencyVerdict(False, mode, w, "a defining relation fails in the collected table")
    rng = np.random.default_rng(seed)
    if mode == "exhaustive":
        a, b, c = (x.ravel() for x in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij"))
    else:
        a, b, c = rng.integers(0, n, size=(3, samples))
    bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
    if bad.size:
        k = int(bad[0])
        return ConsistencyVerdict(False, mode, tuple(G.element(int(x[k])) for x in (a, b, c)),
                                  "associativity fails on an element triple")
    if n * n <= collector_samples:
        pairs = [(i, j) for i in range(n) for j in range(n)]
    else:
        pairs = [tuple(map(int, ij)) for ij in rng.integers(0, n, size=(collector_samples, 2))]
    for i, j in pairs:
        direct = G.index(G.collector.multiply(G.element(i), G.element(j)))
        if direct != t[i, j]:
            return ConsistencyVerdict(False, mode, (G.element(i), G.element(j), G.element(direct)),
                                      "direct collection disagrees with the table")
    return ConsistencyVerdict(True, mode)


def build_pc_group(pres: PcPresentation, label: str | None = None, *,
                   budget: int = CONSISTENCY_BUDGET, seed: int = DEFAULT_SEED) -> PcGroup:
    """Validated polycyclic group: tails central, presentation consistent."""
    G = PcGroup(pres, label)
    if G.cardinality <= TABLE_LIMIT:
        try:
            G.table
        except InconsistentPresentation as exc:
            raise InconsistentPresentation(str(exc), exc.witness) from None
        w = _tail_centrality_witness(G)
        if w is not None:
            raise NotClass2(f"{G.label}: tail {w[0]} does not commute with generator {w[1]}", w)
    verdict = check_consistency(pres, budget=budget, seed=seed)
    if not verdict.consistent:
        raise InconsistentPresentation(f"{G.label}: {verdict.reason}", verdict.witness)
    return G


def build_table_group(t: MultiplicationTable | np.ndarray, label: str = "table",
                      labels: Sequence[Element] | None = None) -> TableGroup:
    if not isinstance(t, MultiplicationTable):
        t = MultiplicationTable(np.asarray(t))
    return TableGroup(t, label, labels)


def trivial_group() -> TableGroup:
    return TableGroup(MultiplicationTable(np.zeros((1, 1), dtype=np.int32)), "1")


def direct_product(G: Group, H: Group, label: str | None = None) -> ProductGroup:
    return ProductGroup([G, H], label)


def multiply(G: Group, a: Sequence[int], b: Sequence[int]) -> Element:
    return G.multiply(a, b)


def power(G: Group, a: Sequence[int], m: int) -> Element:
    return G.power(a, m)


def commutator(G: Group, a: Sequence[int], b: Sequence[int]) -> Element:
    return G.commutator(a, b)


def element_order(G: Group, a: Sequence[int]) -> int:
    return G.element_order(a)


def class2_witness(G: Group) -> tuple | None:
    """A triple ``(a, b, c)`` with ``[[a, b], c] != 1``, or ``None``."""
    if isinstance(G, ProductGroup):
        for s, f in enumerate(G.factors):
            w = class2_witness(f)
            if w is not None:
                return w
        return None
    C = G.commutator_table
    values = np.unique(C)
    bad = values[~G.center_mask[values]]
    if bad.size == 0:
        return None
    c = int(bad[0])
    a, b = (int(x) for x in np.argwhere(C == c)[0])
    t = G.table
    for g in range(G.cardinality):
        if t[c, g] != t[g, c]:
            return (G.element(a), G.element(b), G.element(g))
    raise AssertionError("noncentral commutator commutes with everything")


def verify_class_at_most_2(G: Group) -> bool:
    return class2_witness(G) is None
