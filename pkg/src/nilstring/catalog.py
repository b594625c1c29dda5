"""Named groups: the odd-order p^4 list, abelian groups, Heisenberg groups.

Also classification of a complete set of groups by order structure and the
search for maximal members of each class.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Mapping, Sequence

from .errors import ConfigError, PresentationError
from .groups import Group, PcGroup, ProductGroup, TableGroup, build_pc_group, table_from_generators
from .invariants import OrderStructure, is_isomorphic, order_structure
from .presentation import PcPresentation, prime_power_base
from .twist import string_of

BURNSIDE_NAMES = "ABCDEF"


def _check_odd_prime(p: int) -> None:
    if p < 3 or prime_power_base(p) != p:
        raise ValueError(f"{p} is not an odd prime")


def _tag(G: Group, spec: str) -> Group:
    G.spec = spec
    return G


def burnside_presentation(p: int, which: str) -> PcPresentation:
    """Power-commutator form of the nonabelian groups of order ``p^4``.

    Generator names and order follow the classical presentations; each
    conjugation relation ``v^-1 u v = u w`` is recorded as ``[u, v] = w``,
    i.e. ``[v, u] = w^-1``.
    """
    _check_odd_prime(p)
    p2, p3 = p * p, p ** 3
    which = which.upper()
    if which == "A":
        # x^(p^3), y^p, y^-1 x y = x^(1+p^2)
        return PcPresentation((p3, p), {}, {(1, 0): (p3 - p2, 0)}, label="A")
    if which == "B":
        # x^(p^2), y^p, z^p, z^-1 y z = y x^p, x central
        return PcPresentation((p2, p, p), {}, {(2, 1): (p2 - p, 0, 0)}, label="B")
    if which == "C":
        # x^(p^2), y^(p^2), y^-1 x y = x^(1+p)
        return PcPresentation((p2, p2), {}, {(1, 0): (p2 - p, 0)}, label="C")
    if which == "D":
        # x^(p^2), y^p, z^p, z^-1 x z = x^(1+p), y central
        return PcPresentation((p2, p, p), {}, {(2, 0): (p2 - p, 0, 0)}, label="D")
    if which == "E":
        # x^(p^2), y^p, z^p, z^-1 x z = x y, y central
        return PcPresentation((p2, p, p), {}, {(2, 0): (0, p - 1, 0)}, label="E")
    if which == "F":
        # x, y, z, a of order p, a^-1 z a = z x, everything else commutes
        return PcPresentation((p, p, p, p), {}, {(3, 2): (p - 1, 0, 0, 0)}, label="F")
    raise ValueError(f"unknown group {which!r}; expected one of {BURNSIDE_NAMES}")


def burnside_p4(p: int, which: str) -> PcGroup:
    pres = burnside_presentation(p, which)
    G = build_pc_group(pres, label=f"{which.upper()}(p={p})")
    return _tag(G, f"burnside:{which.upper()}:p={p}")


def _abelian_label(invariants: Sequence[int]) -> str:
    return "x".join(f"Z{q}" for q in invariants) or "1"


def abelian_group(partition_per_prime: Mapping[int, Sequence[int]], label: str | None = None) -> Group:
    """Direct product of cyclic groups ``Z_{p^k}``, ``k`` running over each partition.

    ``{3: [3, 1]}`` is ``Z_27 x Z_3``.
    """
    parts = []
    for p in sorted(partition_per_prime):
        exps = sorted((int(k) for k in partition_per_prime[p] if k), reverse=True)
        if prime_power_base(p) != p:
            raise ValueError(f"{p} is not prime")
        if not exps:
            raise ValueError(f"empty partition for prime {p}")
        orders = tuple(p ** k for k in exps)
        pres = PcPresentation(orders, label=_abelian_label(orders))
        parts.append(build_pc_group(pres))
    if not parts:
        raise ValueError("at least one prime is required")
    invariants = [q for G in parts for q in G.rel_orders]
    name = label or _abelian_label(invariants)
    spec = "abelian:" + "x".join(str(q) for q in invariants)
    if len(parts) == 1:
        parts[0].label = name
        return _tag(parts[0], spec)
    return _tag(ProductGroup(parts, label=name), spec)


def abelian_from_invariants(invariants: Sequence[int], label: str | None = None) -> Group:
    by_prime: dict[int, list[int]] = {}
    for q in invariants:
        p = prime_power_base(q)
        if p is None:
            raise ValueError(f"{q} is not a prime power")
        k = 0
        while q > 1:
            q //= p
            k += 1
        by_prime.setdefault(p, []).append(k)
    return abelian_group(by_prime, label)


def heisenberg(p: int, k: int = 1) -> PcGroup:
    """Upper unitriangular 3x3 matrices over ``Z/p^k``.

    Generators ``x = E12``, ``y = E23``, ``z = E13`` with ``[x, y] = z``;
    the normal form ``x^a y^c z^b`` is the matrix with entries ``(a, ac+b, c)``.
    """
    _check_odd_prime(p)
    if k < 1:
        raise ValueError("k must be positive")
    q = p ** k
    pres = PcPresentation((q, q, q), {}, {(1, 0): (0, 0, q - 1)}, label=f"H(p={p},k={k})")
    return _tag(build_pc_group(pres), f"heisenberg:p={p}:k={k}")


def unitriangular(n: int, p: int) -> TableGroup:
    """Upper unitriangular ``n x n`` matrices mod ``p`` as a table group.

    Elements are labelled by their strictly-upper entries, row by row.
    For ``n = 4`` this has class 3, which makes it the standard negative
    fixture for twisting.
    """
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pos = {s: m for m, s in enumerate(slots)}

    def entry(a, i, j):
        if i == j:
            return 1
        return a[pos[(i, j)]] if i < j else 0

    def mul(a, b):
        return tuple(
            sum(entry(a, i, m) * entry(b, m, j) for m in range(i, j + 1)) % p
            for i, j in slots
        )

    identity = tuple(0 for _ in slots)
    gens = [tuple(1 if s == (i, i + 1) else 0 for s in slots) for i in range(n - 1)]
    mt, elements = table_from_generators(gens, mul, identity)
    G = TableGroup(mt, f"UT({n},{p})", labels=elements, check=False)
    return _tag(G, f"unitriangular:n={n}:p={p}")


def p4_catalog(p: int = 3) -> list[Group]:
    """The eleven groups of order ``p^4`` with class at most 2 (``p`` odd)."""
    groups: list[Group] = [burnside_p4(p, w) for w in BURNSIDE_NAMES]
    for parts in ([3, 1], [2, 1, 1], [2, 2], [1, 1, 1, 1], [4]):
        groups.append(abelian_group({p: parts}))
    return groups


def p4_expected_classes(p: int = 3) -> list[set[str]]:
    """Order-structure classes of :func:`p4_catalog`, by label."""
    z = lambda *ks: _abelian_label([p ** k for k in ks])  # noqa: E731
    return [
        {f"A(p={p})", z(3, 1)},
        {f"B(p={p})", f"D(p={p})", f"E(p={p})", z(2, 1, 1)},
        {f"C(p={p})", z(2, 2)},
        {f"F(p={p})", z(1, 1, 1, 1)},
        {z(4)},
    ]


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True, eq=False)
class StructureClass:
    order_structure: OrderStructure
    members: tuple[Group, ...]

    @property
    def minimal_member(self) -> Group | None:
        abelian = [G for G in self.members if G.is_abelian]
        return abelian[0] if abelian else None

    @cached_property
    def maximal_members(self) -> list[Group]:
        return find_maximal(self)

    @property
    def labels(self) -> set[str]:
        return {G.label for G in self.members}


def classify_by_order_structure(groups: Sequence[Group]) -> list[StructureClass]:
    buckets: dict[OrderStructure, list[Group]] = {}
    for G in groups:
        buckets.setdefault(order_structure(G), []).append(G)
    return [StructureClass(os, tuple(buckets[os])) for os in sorted(buckets, key=lambda o: o.counts)]


def find_maximal(cls: StructureClass) -> list[Group]:
    """Members that are no later string term of another member."""
    later_terms = {id(H): string_of(H).terms[1:] for H in cls.members}
    maximal = []
    for G in cls.members:
        hit = any(
            is_isomorphic(F, G).isomorphic
            for H in cls.members if H is not G
            for F in later_terms[id(H)]
        )
        if not hit:
            maximal.append(G)
    return maximal


# ---------------------------------------------------------------------------
# shorthand specs


def _parse_params(parts: Sequence[str]) -> dict[str, int]:
    out = {}
    for part in parts:
        if "=" not in part:
            raise ConfigError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = int(v)
    return out


def _parse_prime_power(text: str) -> int:
    text = text.strip()
    if "^" in text:
        base, exp = text.split("^", 1)
        return int(base) ** int(exp)
    return int(text)


def parse_group(spec: str) -> Group:
    """Build a group from a shorthand or a presentation JSON file.

    Shorthands: ``burnside:A:p=3``, ``heisenberg:p=3:k=2``,
    ``abelian:3^3x3`` (``×`` also accepted), ``unitriangular:n=4:p=3``.
    Factors joined with ``*`` form a direct product.
    """
    spec = spec.strip()
    if "*" in spec:
        parts = [parse_group(s) for s in spec.split("*")]
        G = ProductGroup(parts)
        return _tag(G, spec)
    path = Path(spec)
    if spec.endswith(".json") or path.is_file():
        try:
            pres = PcPresentation.load(path)
        except OSError as exc:
            raise ConfigError(f"cannot read {spec}: {exc}") from exc
        return _tag(build_pc_group(pres, label=pres.label or path.stem), spec)
    family, _, rest = spec.partition(":")
    fields = [f for f in rest.split(":") if f]
    try:
        if family == "burnside":
            which = fields[0]
            params = _parse_params(fields[1:])
            return burnside_p4(params.get("p", 3), which)
        if family == "heisenberg":
            params = _parse_params(fields)
            return heisenberg(params.get("p", 3), params.get("k", 1))
        if family == "abelian":
            factors = re.split(r"[x×]", rest)
            return abelian_from_invariants([_parse_prime_power(f) for f in factors if f.strip()])
        if family == "unitriangular":
            params = _parse_params(fields)
            return unitriangular(params.get("n", 4), params.get("p", 3))
    except (IndexError, ValueError, PresentationError) as exc:
        raise ConfigError(f"bad group spec {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown group spec {spec!r}")


def spec_of(G: Group) -> str:
    return getattr(G, "spec", G.label)
