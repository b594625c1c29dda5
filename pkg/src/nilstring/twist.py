"""Twisted products ``x o y = [x, y]^n x y`` and strings of twisted groups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Callable, Sequence

import numpy as np

from .errors import EvenOrder, NotClass2, NotNilpotent
from .groups import (
    Element,
    Group,
    MultiplicationTable,
    PcGroup,
    ProductGroup,
    TableGroup,
    class2_witness,
    prime_factors,
)
from .presentation import PcPresentation


def derived_exponent(G: Group) -> int:
    return int(reduce(math.lcm, G.orders[G.derived_mask].tolist(), 1))


def _require_class2(G: Group) -> None:
    w = class2_witness(G)
    if w is not None:
        raise NotClass2(f"{G.label} has nilpotency class above 2 (witness {w})", w)


class TwistedGroup(Group):
    """``S_n(G)``: the elements of ``base`` under ``x o y = [x, y]^n x y``.

    ``n`` only matters modulo the exponent ``e`` of the derived subgroup of
    the base, so it is stored reduced as ``n_effective``.  With
    ``strict=False`` the class-2 check is skipped; the result may then fail
    to be associative, which is how non-associativity witnesses are built.
    """

    def __init__(self, base: Group, n: int, *, strict: bool = True, label: str | None = None):
        if n < 0:
            raise ValueError("twist parameter must be non-negative")
        if strict:
            _require_class2(base)
        self.base = base
        self.strict = strict
        self.n_raw = n
        self.derived_exp = derived_exponent(base)
        self.n_effective = n % self.derived_exp
        self.cardinality = base.cardinality
        self.identity_index = base.identity_index
        self.label = label or f"S_{n}({base.label})"

    def element(self, i: int) -> Element:
        return self.base.element(i)

    def index(self, e: Sequence[int]) -> int:
        return self.base.index(e)

    def _build_table(self) -> np.ndarray:
        t = self.base.table
        if self.n_effective == 0:
            return t.copy()
        comm_pow = self.base.power_map(self.n_effective)[self.base.commutator_table]
        idx = np.arange(self.cardinality)
        return t[t[comm_pow, idx[:, None]], idx[None, :]]

    def _mul_index(self, i: int, j: int) -> int:
        b = self.base
        x, y = b.element(i), b.element(j)
        c = b.power(b.commutator(x, y), self.n_effective)
        return b.index(b.multiply(b.multiply(c, x), y))

    @cached_property
    def gens(self) -> tuple[int, ...]:
        chosen = list(self.base.gens)
        span = self.subgroup_mask(chosen)
        for x in range(self.cardinality):
            if span.all():
                break
            if not span[x]:
                chosen.append(x)
                span = self.subgroup_mask(chosen)
        return tuple(chosen)

    def root(self) -> Group:
        g = self.base
        while isinstance(g, TwistedGroup):
            g = g.base
        return g


def twisted_multiply(G: Group, n: int, x: Sequence[int], y: Sequence[int], *,
                     strict: bool = True, formula: str = "commutator") -> Element:
    """``[x, y]^n x y`` evaluated in ``G``.

    ``formula="conjugate"`` evaluates ``y^-n x y^(n+1)`` instead; the two
    agree on groups of class at most 2.
    """
    if strict:
        _require_class2(G)
    if formula == "commutator":
        c = G.power(G.commutator(x, y), n)
        return G.multiply(G.multiply(c, x), y)
    if formula == "conjugate":
        return G.multiply(G.multiply(G.power(y, -n), x), G.power(y, n + 1))
    raise ValueError(f"unknown formula {formula!r}")


def twist(G: Group, n: int, *, strict: bool = True, label: str | None = None) -> TwistedGroup:
    return TwistedGroup(G, n, strict=strict, label=label)


def s_of_i(n: int, i: int, modulus: int | None = None) -> int:
    """``((2n+1)^i - 1) / 2``, optionally reduced mod ``modulus``."""
    if n < 0 or i < 0:
        raise ValueError("n and i must be non-negative")
    if modulus is None:
        return ((2 * n + 1) ** i - 1) // 2
    # (2n+1)^i is odd, so its residue mod 2m is odd too and halving commutes
    return (pow(2 * n + 1, i, 2 * modulus) - 1) // 2


def iterate_twist(G: Group, n: int, i: int, *, strict: bool = True) -> TwistedGroup:
    """``S_n^i(G)`` realized in one step as ``S_{s(i)}(G)``."""
    e = derived_exponent(G)
    s = s_of_i(n, i, e)
    return TwistedGroup(G, s, strict=strict, label=f"S_{n}^{i}({G.label})")


def literal_iterate(G: Group, n: int, i: int) -> Group:
    """``S_n`` applied ``i`` times, each twist taken over the previous one."""
    for _ in range(i):
        G = TwistedGroup(G, n)
    return G


def solve_right(G: Group, n: int, a: Sequence[int], b: Sequence[int]) -> Element:
    """The unique ``X`` with ``X o a = b``; ``X = a^n b a^-(n+1)``."""
    _require_class2(G)
    x = G.multiply(G.multiply(G.power(a, n), b), G.power(a, -(n + 1)))
    if twisted_multiply(G, n, x, a, strict=False) != tuple(b):
        raise ArithmeticError("substitution check failed")  # unreachable in class 2
    return x


# ---------------------------------------------------------------------------
# Sylow decomposition


def _prime_of(n: int) -> int | None:
    ps = prime_factors(n)
    return ps[0] if len(ps) == 1 else None


def _sylow_parts(G: Group) -> list[tuple[int, Group, Callable[[int], int]]]:
    """Sylow factors with embeddings of factor indices into ``G``."""
    if G.cardinality == 1:
        return []
    p = _prime_of(G.cardinality)
    if p is not None:
        return [(p, G, lambda i: i)]
    if isinstance(G, ProductGroup):
        per_prime: dict[int, list[tuple[int, Group, Callable]]] = {}
        for slot, f in enumerate(G.factors):
            for q, part, emb in _sylow_parts(f):
                per_prime.setdefault(q, []).append((slot, part, emb))
        out = []
        for q in sorted(per_prime):
            items = per_prime[q]
            if len(items) == 1:
                slot, part, emb = items[0]
                out.append((q, part, lambda i, s=slot, e=emb: G.embed(s, e(i))))
            else:
                sub = ProductGroup([part for _, part, _ in items],
                                   label=f"{G.label}_{q}")

                def emb_many(i, items=items, sub=sub):
                    parts = [f.identity_index for f in G.factors]
                    for (slot, _, e), c in zip(items, sub.split(i)):
                        parts[slot] = e(c)
                    return int(np.ravel_multi_index(tuple(parts), G.shape))

                out.append((q, sub, emb_many))
        return out
    # sieve: elements of q-power order form a subgroup in nilpotent groups
    t = G.table
    out = []
    for q in G.primes:
        idx = np.flatnonzero([o == 1 or _prime_of(int(o)) == q for o in G.orders])
        pos = np.full(G.cardinality, -1, dtype=np.int64)
        pos[idx] = np.arange(idx.size)
        sub = pos[t[idx][:, idx]]
        if (sub < 0).any():
            raise NotNilpotent(f"{G.label}: elements of {q}-power order are not closed")
        H = TableGroup(MultiplicationTable(sub), f"{G.label}_{q}",
                       labels=[G.element(int(i)) for i in idx], check=False)
        out.append((q, H, lambda i, idx=idx: int(idx[i])))
    return out


def sylow_decompose(G: Group) -> list[tuple[int, Group]]:
    """Sylow factors ``(p, P)`` by increasing ``p``."""
    return [(p, P) for p, P, _ in _sylow_parts(G)]


# ---------------------------------------------------------------------------
# strings


@dataclass(frozen=True)
class SylowStep:
    p: int
    n: int
    t: int


@dataclass(frozen=True, eq=False)
class GroupString:
    """Terms ``F_0 .. F_T`` of the string of a group."""

    input_label: str
    terms: tuple[Group, ...]
    prime_schedule: tuple[SylowStep, ...]

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def total_steps(self) -> int:
        return sum(s.t for s in self.prime_schedule)

    def report(self, *, fingerprints: bool = True) -> dict:
        from .invariants import fingerprint, is_isomorphic

        terms = []
        for i, F in enumerate(self.terms):
            entry = {
                "index": i,
                "label": F.label,
                "abelian": bool(F.is_abelian),
                "center_order": int(F.center_mask.sum()),
            }
            if fingerprints:
                entry["fingerprint"] = fingerprint(F).to_json()
            terms.append(entry)
        distinct = all(
            not is_isomorphic(self.terms[a], self.terms[b]).isomorphic
            for a in range(len(self.terms))
            for b in range(a + 1, len(self.terms))
        )
        return {
            "input": self.input_label,
            "sylow": [{"p": s.p, "n": s.n, "t": s.t} for s in self.prime_schedule],
            "terms": terms,
            "pairwise_non_isomorphic": distinct,
        }


def _log(p: int, value: int) -> int:
    t = 0
    while value > 1:
        if value % p:
            raise ValueError(f"{value} is not a power of {p}")
        value //= p
        t += 1
    return t


def string_of(G: Group) -> GroupString:
    """The string ``F_0 = G, F_1, ..., F_T`` of an odd-order class-2 group.

    Sylow factors are processed by increasing prime.  Term ``i`` twists the
    current factor to level ``i - (steps used by earlier factors)`` with
    ``n = (p - 1) / 2``; earlier factors sit at their final level and later
    ones are untouched.  Terms past ``F_0`` are direct products of the
    (twisted) Sylow factors.
    """
    if G.cardinality % 2 == 0:
        raise EvenOrder(f"{G.label} has even order {G.cardinality}")
    _require_class2(G)
    parts = sylow_decompose(G)
    schedule = []
    for p, P in parts:
        schedule.append(SylowStep(p, (p - 1) // 2, _log(p, derived_exponent(P))))
    levels = [0] * len(parts)
    terms: list[Group] = [G]
    for j, step in enumerate(schedule):
        for level in range(1, step.t + 1):
            levels[j] = level
            comps = [
                P if lv == 0 else iterate_twist(P, s.n, lv)
                for (_, P), s, lv in zip(parts, schedule, levels)
            ]
            i = len(terms)
            label = f"F_{i}({G.label})"
            terms.append(comps[0] if len(comps) == 1 else ProductGroup(comps, label=label))
    return GroupString(G.label, tuple(terms), tuple(schedule))


# ---------------------------------------------------------------------------
# export


def to_presentation(tw: TwistedGroup) -> PcPresentation:
    """Power-commutator presentation of a twisted polycyclic group.

    Generators are those of the underlying presentation; normal forms are
    re-read as twisted products ``g_1^a_1 o ... o g_k^a_k``.
    """
    root = tw.root()
    if not isinstance(root, PcGroup):
        raise TypeError("to_presentation needs a twist of a polycyclic group")
    orders = root.rel_orders
    k = len(orders)
    gens = root.gens
    t = tw.table
    pw = [tw.power_map(a) for a in range(max(orders))]
    lookup = {}
    for i in range(tw.cardinality):
        exps = root.element(i)
        x = tw.identity_index
        for g, a in zip(gens, exps):
            x = int(t[x, pw[a][g]])
        lookup[x] = exps
    if len(lookup) != tw.cardinality:
        raise ValueError(f"{tw.label}: twisted normal forms do not cover the group")
    powers = {}
    for i, r in enumerate(orders):
        v = lookup[int(tw.power_map(r)[gens[i]])]
        if any(v):
            powers[i] = v
    comms = {}
    C = tw.commutator_table
    for j in range(k):
        for i in range(j):
            v = lookup[int(C[gens[j], gens[i]])]
            if any(v):
                comms[(j, i)] = v
    return PcPresentation(orders, powers, comms, label=tw.label)
