"""Power-commutator presentations and class-2 collection.

A presentation fixes generators ``g_1 .. g_k`` with relative orders ``r_i``.
Every element has a unique normal form ``g_1^{e_1} ... g_k^{e_k}`` with
``0 <= e_i < r_i``.  Relations are given as tails:

* ``g_i^{r_i} = power_tails[i]``
* ``[g_j, g_i] = comm_tails[(j, i)]`` for ``j > i``

Both kinds of tail must be central.  Indices are 0-based in Python and
1-based in the JSON file format.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .errors import InconsistentPresentation, PresentationError

Vector = tuple[int, ...]

# upper bound on collection steps per product; runaway collection means the
# tails are not central or the presentation is inconsistent
COLLECT_STEP_LIMIT = 10_000


def prime_power_base(n: int) -> int | None:
    """Return ``p`` if ``n = p^k`` with ``k >= 1``, else ``None``."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return n
    while n % p == 0:
        n //= p
    return p if n == 1 else None


@dataclass(frozen=True)
class PcPresentation:
    rel_orders: tuple[int, ...]
    power_tails: Mapping[int, Vector] = field(default_factory=dict)
    comm_tails: Mapping[tuple[int, int], Vector] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rel_orders", tuple(int(r) for r in self.rel_orders))
        k = len(self.rel_orders)
        if k == 0:
            raise PresentationError("a presentation needs at least one generator")
        for r in self.rel_orders:
            if prime_power_base(r) is None:
                raise PresentationError(f"relative order {r} is not a prime power")
        powers = {}
        for i, vec in dict(self.power_tails).items():
            if not 0 <= i < k:
                raise PresentationError(f"power tail for unknown generator {i}")
            powers[int(i)] = self._check_vector(vec, f"power tail {i}")
        comms = {}
        for (j, i), vec in dict(self.comm_tails).items():
            if not 0 <= i < j < k:
                raise PresentationError(f"commutator tail ({j},{i}) needs 0 <= i < j < k")
            comms[(int(j), int(i))] = self._check_vector(vec, f"commutator tail ({j},{i})")
        # drop trivial tails so that "missing" and "zero" mean the same thing
        object.__setattr__(self, "power_tails", {i: v for i, v in powers.items() if any(v)})
        object.__setattr__(self, "comm_tails", {ji: v for ji, v in comms.items() if any(v)})

    def _check_vector(self, vec: Sequence[int], what: str) -> Vector:
        vec = tuple(int(x) for x in vec)
        if len(vec) != len(self.rel_orders):
            raise PresentationError(f"{what} has length {len(vec)}, expected {len(self.rel_orders)}")
        for e, r in zip(vec, self.rel_orders):
            if not 0 <= e < r:
                raise PresentationError(f"{what} entry {e} outside [0, {r})")
        return vec

    @property
    def num_gens(self) -> int:
        return len(self.rel_orders)

    @property
    def order(self) -> int:
        return math.prod(self.rel_orders)

    def primes(self) -> list[int]:
        return sorted({prime_power_base(r) for r in self.rel_orders})

    def unit(self, i: int) -> Vector:
        return tuple(1 if m == i else 0 for m in range(self.num_gens))

    # -- serialization -------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "generators": [{"order": r} for r in self.rel_orders],
            "powers": {str(i + 1): list(v) for i, v in sorted(self.power_tails.items())},
            "commutators": {
                f"{j + 1},{i + 1}": list(v) for (j, i), v in sorted(self.comm_tails.items())
            },
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "PcPresentation":
        try:
            orders = [int(g["order"]) for g in data["generators"]]
            powers = {int(i) - 1: v for i, v in data.get("powers", {}).items()}
            comms = {}
            for key, v in data.get("commutators", {}).items():
                j, i = (int(s) - 1 for s in key.split(","))
                comms[(j, i)] = v
        except (KeyError, TypeError, ValueError) as exc:
            raise PresentationError(f"malformed presentation JSON: {exc}") from exc
        return cls(tuple(orders), powers, comms, label=str(data.get("label", "")))

    @classmethod
    def load(cls, path: str | Path) -> "PcPresentation":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))

    def dump(self, path: str | Path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")


class Collector:
    """Right multiplication of normal forms, exact for central tails.

    Right-multiplying ``v`` by a block ``g_i^e`` moves the block past the
    generators ``g_j`` (``j > i``) already present in ``v``.  Since all
    commutators are central this only leaves behind the central factor
    ``prod_j [g_j, g_i]^(v_j e)``.  Overflow of the ``i``-th exponent leaves
    ``power_tails[i]^q``.  Central factors are queued and multiplied in once
    the current block sequence is finished.
    """

    def __init__(self, pres: PcPresentation):
        self.pres = pres
        self.k = pres.num_gens
        self.r = pres.rel_orders
        self.power = [pres.power_tails.get(i) for i in range(self.k)]
        # tails_after[i] = [(j, [g_j, g_i]) ...] for j > i with nontrivial tail
        self.tails_after = [
            [(j, pres.comm_tails[(j, i)]) for j in range(i + 1, self.k) if (j, i) in pres.comm_tails]
            for i in range(self.k)
        ]

    def _expand(self, vec: Vector, m: int, central: deque) -> list[tuple[int, int]]:
        # vec^m = prod_a g_a^(m t_a) * prod_{b>a} [g_b, g_a]^(t_b t_a m(m-1)/2)
        blocks = [(a, m * t) for a, t in enumerate(vec) if t]
        if m > 1:
            half = m * (m - 1) // 2
            for a, ta in enumerate(vec):
                if not ta:
                    continue
                for b, tail in self.tails_after[a]:
                    if vec[b]:
                        central.append((tail, vec[b] * ta * half))
        return blocks

    def collect(self, v: Sequence[int], blocks: Sequence[tuple[int, int]]) -> Vector:
        v = list(v)
        work = deque(blocks)
        central: deque = deque()
        r, power, tails_after = self.r, self.power, self.tails_after
        steps = 0
        while work or central:
            if not work:
                vec, m = central.popleft()
                work.extend(self._expand(vec, m, central))
                continue
            i, e = work.popleft()
            if power[i] is None:
                e %= r[i]
            if e == 0:
                continue
            steps += 1
            if steps > COLLECT_STEP_LIMIT:
                raise InconsistentPresentation(
                    f"collection did not terminate for {self.pres.label or 'presentation'}"
                )
            for j, tail in tails_after[i]:
                if v[j]:
                    central.append((tail, v[j] * e))
            q, v[i] = divmod(v[i] + e, r[i])
            if q and power[i] is not None:
                central.append((power[i], q))
        return tuple(v)

    def multiply(self, a: Sequence[int], b: Sequence[int]) -> Vector:
        return self.collect(a, [(i, e) for i, e in enumerate(b) if e])

    def times_generator(self, a: Sequence[int], i: int) -> Vector:
        return self.collect(a, [(i, 1)])
