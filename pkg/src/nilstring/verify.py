"""Verification suites and their reports."""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import __version__
from .catalog import (
    abelian_from_invariants,
    burnside_p4,
    classify_by_order_structure,
    heisenberg,
    p4_catalog,
    p4_expected_classes,
    parse_group,
    spec_of,
    unitriangular,
)
from .errors import BudgetExceeded, ConfigError, NilstringError
from .groups import DEFAULT_SEED, Group, ProductGroup, verify_class_at_most_2
from .invariants import abelian_type, is_isomorphic, order_structure
from .twist import (
    TwistedGroup,
    derived_exponent,
    iterate_twist,
    literal_iterate,
    s_of_i,
    string_of,
)

SUITES = ("lemma-s", "lemma-center", "theorem", "p4-classification", "corollary", "associativity")

PASS, FAIL, BUDGET = "pass", "fail", "budget"


@dataclass
class Check:
    name: str
    anchor: str
    status: str
    detail: str = ""
    witness: object = None
    replay: str | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "anchor": self.anchor, "status": self.status, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.replay is not None:
            out["replay"] = self.replay
        return out


@dataclass
class Report:
    suite: str | None = None
    inputs: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    timings: dict = field(default_factory=dict, compare=False)
    version: str | None = None

    @property
    def status(self) -> str:
        states = {c.status for c in self.checks}
        if FAIL in states:
            return FAIL
        if BUDGET in states:
            return BUDGET
        return PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, BUDGET: 3}[self.status]

    def to_dict(self) -> dict:
        if self.suite is None and not self.checks and not self.inputs:
            return {}
        return {
            "suite": self.suite,
            "inputs": self.inputs,
            "status": self.status,
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.name)],
            "version": self.version,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        if not data:
            return cls()
        checks = [Check(**c) for c in data.get("checks", [])]
        return cls(data.get("suite"), data.get("inputs", {}), checks, {}, data.get("version"))


def render_report(r: Report, fmt: str = "json") -> bytes:
    """Byte-stable rendering; json mode carries no timings."""
    if fmt == "json":
        return (json.dumps(r.to_dict(), indent=2, sort_keys=True) + "\n").encode()
    if fmt == "text":
        lines = []
        for c in sorted(r.checks, key=lambda c: c.name):
            lines.append(f"{c.status.upper()} {c.anchor} {c.detail} [{c.name}]")
            if c.witness is not None:
                lines.append(f"  witness: {json.dumps(c.witness)}")
            if c.status != PASS and c.replay:
                lines.append(f"  replay: {c.replay}")
        if r.suite is not None:
            total = sum(r.timings.values())
            lines.append(f"{r.status.upper()} suite {r.suite}: {len(r.checks)} checks in {total:.2f}s")
        return ("\n".join(lines) + "\n").encode()
    raise ConfigError(f"unknown report format {fmt!r}")


@dataclass(frozen=True)
class VerifySuiteConfig:
    suite: str
    primes: tuple[int, ...] = (3,)
    groups: tuple[str, ...] = ()
    node_budget: int = 2_000_000
    seed: int = DEFAULT_SEED
    samples: int = 1_000_000
    strict: bool = True
    output: str | None = None

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if self.node_budget <= 0 or self.samples <= 0:
            raise ConfigError("budgets must be positive")
        for p in self.primes:
            if p < 3 or any(p % q == 0 for q in range(2, p)):
                raise ConfigError(f"{p} is not an odd prime")


# ---------------------------------------------------------------------------
# helpers


def _replay(cfg: VerifySuiteConfig, G: Group | None = None) -> str:
    cmd = f"nilstring verify --suite {cfg.suite}"
    if not cfg.strict:
        cmd += " --unchecked"
    if cfg.seed != DEFAULT_SEED:
        cmd += f" --seed {cfg.seed}"
    if G is not None:
        return cmd + f" --group '{spec_of(G)}'"
    return cmd + "".join(f" --p {p}" for p in cfg.primes)


_NODE_BUDGET = [2_000_000]


def _iso(G: Group, H: Group):
    return is_isomorphic(G, H, node_budget=_NODE_BUDGET[0])


class _Runner:
    def __init__(self, cfg: VerifySuiteConfig):
        self.cfg = cfg
        self.report = Report(cfg.suite, version=__version__)

    def check(self, name: str, anchor: str, fn: Callable[[], tuple], G: Group | None = None) -> None:
        """``fn`` returns ``(ok, detail)`` or ``(ok, detail, witness)``."""
        start = time.perf_counter()
        try:
            ok, detail, *rest = fn()
            status = PASS if ok else FAIL
            witness = rest[0] if rest and not ok else None
        except BudgetExceeded as exc:
            status, detail, witness = BUDGET, str(exc), None
        except ConfigError:
            raise
        except NilstringError as exc:
            status, detail, witness = FAIL, str(exc), getattr(exc, "witness", None)
        self.report.timings[name] = time.perf_counter() - start
        replay = None if status == PASS else _replay(self.cfg, G)
        self.report.checks.append(Check(name, anchor, status, detail, _jsonable(witness), replay))


def _jsonable(x):
    if x is None:
        return None
    return json.loads(json.dumps(x, default=lambda o: o.tolist() if hasattr(o, "tolist") else str(o)))


def default_fixtures(p: int, *, max_order: int = 729) -> list[Group]:
    out: list[Group] = [burnside_p4(p, w) for w in "ABCDEF"]
    for k in (1, 2):
        if p ** (3 * k) <= max_order:
            out.append(heisenberg(p, k))
    return out


def _fixtures(cfg: VerifySuiteConfig, default: Callable[[int], list[Group]]) -> list[Group]:
    if cfg.groups:
        return [parse_group(s) for s in cfg.groups]
    return [G for p in cfg.primes for G in default(p)]


def _tables_equal(A: Group, B: Group) -> tuple:
    diff = A.table != B.table
    if diff.any():
        x, y = (int(v) for v in np.argwhere(diff)[0])
        return False, "tables differ", [list(A.element(x)), list(A.element(y))]
    return True, "tables agree"


def _center_size(G: Group) -> int:
    return int(G.center_mask.sum())


def _last_term_abelian(F: Group) -> tuple:
    if isinstance(F, ProductGroup):
        for f in F.factors:
            r = _last_term_abelian(f)
            if not r[0]:
                return r
        return True, f"{F.label} commutative (factorwise)"
    t = F.table
    diff = t != t.T
    if diff.any():
        x, y = (int(v) for v in np.argwhere(diff)[0])
        return False, f"{F.label} not commutative", [list(F.element(x)), list(F.element(y))]
    return True, f"{F.label} commutative ({F.cardinality}^2 pairs)"


def _pairwise_distinct(terms: Sequence[Group]) -> tuple:
    for a, b in itertools.combinations(range(len(terms)), 2):
        v = _iso(terms[a], terms[b])
        if v.isomorphic:
            return False, f"F_{a} ~ F_{b}", [a, b]
    pairs = len(terms) * (len(terms) - 1) // 2
    return True, f"{pairs} pairs non-isomorphic"


def _center_chain(terms: Sequence[Group]) -> tuple:
    sizes = [_center_size(F) for F in terms]
    ok = all(a < b for a, b in zip(sizes, sizes[1:]))
    return ok, "|Z| chain " + "<".join(map(str, sizes)), None if ok else sizes


# ---------------------------------------------------------------------------
# suites


def _suite_p4(run: _Runner) -> None:
    for p in run.cfg.primes:
        cat = p4_catalog(p)
        run.report.inputs.setdefault("groups", []).extend(G.label for G in cat)

        def all_class2(cat=cat):
            bad = [G.label for G in cat if not verify_class_at_most_2(G)]
            return not bad, f"{len(cat) - len(bad)}/{len(cat)} class <= 2", bad or None

        run.check(f"p={p}/catalog-class-2", "class-at-most-2", all_class2)

        def pairwise(cat=cat):
            n = 0
            for G, H in itertools.combinations(cat, 2):
                if _iso(G, H).isomorphic:
                    return False, f"{G.label} ~ {H.label}", [G.label, H.label]
                n += 1
            if not all(_iso(G, G).isomorphic for G in cat):
                return False, "reflexivity failed"
            return True, f"{n} pairs non-isomorphic"

        run.check(f"p={p}/pairwise-non-isomorphic", "complete-set-non-isomorphic", pairwise)

        classes = classify_by_order_structure(cat)
        expected = p4_expected_classes(p)

        def membership(classes=classes, expected=expected):
            got = [c.labels for c in classes]
            ok = sorted(map(sorted, got)) == sorted(map(sorted, expected))
            detail = " | ".join("{" + ",".join(sorted(s)) + "}" for s in got)
            return ok, f"{len(got)} classes: {detail}", None if ok else [sorted(s) for s in got]

        run.check(f"p={p}/order-structure-classes", "order-structure-classes", membership)

        for cls in classes:
            nonabelian = {G.label for G in cls.members if not G.is_abelian}
            want = nonabelian or {G.label for G in cls.members}
            key = ",".join(sorted(want))

            def maximal(cls=cls, want=want):
                got = {G.label for G in cls.maximal_members}
                return got == want, "maximal {" + ",".join(sorted(got)) + "}", None if got == want else sorted(got)

            run.check(f"p={p}/maximal[{key}]", "maximal-elements", maximal)

            def minimal(cls=cls):
                Z = cls.minimal_member
                for G in cls.members:
                    last = string_of(G).terms[-1]
                    if not _iso(last, Z).isomorphic:
                        return False, f"last term of {G.label} differs from {Z.label}", G.label
                return True, f"every member's last term ~ {Z.label}"

            run.check(f"p={p}/last-terms[{key}]", "last-terms-agree", minimal)


def _suite_theorem(run: _Runner) -> None:
    fixtures = _fixtures(run.cfg, default_fixtures)
    run.report.inputs["groups"] = [G.label for G in fixtures]
    for G in fixtures:
        S = string_of(G)
        terms = S.terms
        name = G.label
        run.check(f"{name}/string-length", "string-length",
                  lambda: (len(terms) == 1 + S.total_steps,
                           f"{len(terms)} terms, schedule " +
                           ",".join(f"(p={s.p},n={s.n},t={s.t})" for s in S.prime_schedule)), G)
        run.check(f"{name}/terms-non-isomorphic", "terms-pairwise-non-isomorphic",
                  lambda: _pairwise_distinct(terms), G)
        if len(terms) > 1:
            run.check(f"{name}/center-chain", "strict-center-chain", lambda: _center_chain(terms), G)
        run.check(f"{name}/last-term-abelian", "last-term-abelian", lambda: _last_term_abelian(terms[-1]), G)

        def last_matches():
            inv = abelian_type(order_structure(G))
            Z = abelian_from_invariants(inv)
            v = _iso(terms[-1], Z)
            return v.isomorphic, f"last term ~ {Z.label}"

        run.check(f"{name}/last-term-class", "last-terms-agree", last_matches, G)

        def orders_kept():
            base = order_structure(G)
            for i, F in enumerate(terms):
                if order_structure(F) != base:
                    return False, f"F_{i} changes the order structure", i
            return True, f"{len(terms)} terms share order structure"

        run.check(f"{name}/order-structure", "order-structure-preserved", orders_kept, G)


def _suite_lemma_s(run: _Runner) -> None:
    def recurrence():
        for n in range(0, 6):
            s = 0
            for i in range(0, 13):
                if s_of_i(n, i) != s:
                    return False, f"s({n},{i}) mismatch", [n, i]
                s = (2 * s + 1) * n + s
        return True, "closed form matches recurrence for n<=5, i<=12"

    run.check("s-recurrence", "iteration-exponent", recurrence)
    fixtures = [G for G in _fixtures(run.cfg, default_fixtures) if G.cardinality <= 729]
    run.report.inputs["groups"] = [G.label for G in fixtures]
    for G in fixtures:
        def law(G=G):
            count = 0
            for n in range(1, 6):
                chain = G
                for i in range(0, 7):
                    if i:
                        chain = TwistedGroup(chain, n)
                    closed = iterate_twist(G, n, i)
                    r = _tables_equal(closed, chain)
                    if not r[0]:
                        return False, f"n={n}, i={i}: {r[1]}", [n, i] + r[2]
                    count += 1
            return True, f"{count} (n,i) pairs, full tables"

        def orders(G=G):
            base = order_structure(G)
            for n in range(1, 6):
                for i in range(0, 7):
                    if order_structure(iterate_twist(G, n, i)) != base:
                        return False, f"n={n}, i={i} changes the order structure", [n, i]
            return True, f"n<=5, i<=6 keep {base.to_json()}"

        run.check(f"{G.label}/iteration-law", "iteration-law", law, G)
        run.check(f"{G.label}/order-structure", "order-structure-preserved", orders, G)


def _p_group_fixtures(p: int) -> list[Group]:
    return [burnside_p4(p, "A")] + [heisenberg(p, k) for k in (1, 2) if p ** (3 * k) <= 729]


def _suite_lemma_center(run: _Runner) -> None:
    fixtures = _fixtures(run.cfg, _p_group_fixtures)
    run.report.inputs["groups"] = [G.label for G in fixtures]
    for G in fixtures:
        primes = G.primes
        if len(primes) != 1:
            raise ConfigError(f"{G.label} is not a p-group")
        p = primes[0]
        n = (p - 1) // 2
        e = derived_exponent(G)
        t = 0
        while p ** t < e:
            t += 1
        levels = [iterate_twist(G, n, i) for i in range(t + 2)]
        ZG = G.center_mask

        def part_i(G=G, levels=levels, ZG=ZG, p=p, t=t):
            for i in range(t + 1):
                pred = ZG[G.power_map(p ** i)]
                got = levels[i].center_mask
                if (pred != got).any():
                    x = int(np.argmax(pred != got))
                    return False, f"i={i}", [i, list(G.element(x))]
            return True, f"x in Z(S^i) <=> x^(p^i) in Z(G), i<= {t}, all {G.cardinality} elements"

        def part_ii(G=G, levels=levels, p=p, t=t):
            for i in range(t + 1):
                pred = levels[i].center_mask[G.power_map(p)]
                got = levels[i + 1].center_mask
                if (pred != got).any():
                    x = int(np.argmax(pred != got))
                    return False, f"i={i}", [i, list(G.element(x))]
            return True, f"x in Z(S^(i+1)) <=> x^p in Z(S^i), i<= {t}"

        def part_iii(G=G, levels=levels, t=t):
            for i in range(t + 1):
                Z = np.flatnonzero(levels[i].center_mask)
                nxt = levels[i + 1]
                T = nxt.table
                mask = levels[i].center_mask
                if not mask[T[Z][:, Z]].all():
                    return False, f"i={i}: not closed", i
                inv = nxt.inverses
                conj = T[T[inv][:, Z], np.arange(G.cardinality)[:, None]]
                if not mask[conj].all():
                    return False, f"i={i}: not normal", i
            return True, f"Z(S^i) normal in S^(i+1), i<= {t}"

        run.check(f"{G.label}/center-criterion", "center-power-criterion", part_i, G)
        run.check(f"{G.label}/center-step", "center-step-criterion", part_ii, G)
        run.check(f"{G.label}/center-normal", "center-normal-in-next", part_iii, G)


def _mixed_prime_fixtures(p: int) -> list[Group]:
    return [ProductGroup([heisenberg(3, 1), heisenberg(5, 1)])]


def _suite_corollary(run: _Runner) -> None:
    fixtures = _fixtures(run.cfg, _mixed_prime_fixtures)
    if not run.cfg.groups:
        fixtures = fixtures[:1]
    run.report.inputs["groups"] = [G.label for G in fixtures]
    for G in fixtures:
        e = derived_exponent(G)
        r_total = 0
        for p in G.primes:
            while e % p == 0:
                e //= p
                r_total += 1
        S = string_of(G)
        terms = S.terms
        nonabelian = [F for F in terms if not F.is_abelian]
        run.check(f"{G.label}/length", "string-length",
                  lambda: (len(terms) == 1 + r_total, f"{len(terms)} terms, sum of r_j = {r_total}"), G)
        run.check(f"{G.label}/nonabelian-count", "nonabelian-term-count",
                  lambda: (len(nonabelian) == r_total and len(nonabelian) == len(terms) - 1,
                           f"{len(nonabelian)} nonabelian terms"), G)
        run.check(f"{G.label}/nonabelian-distinct", "terms-pairwise-non-isomorphic",
                  lambda: _pairwise_distinct(nonabelian), G)
        run.check(f"{G.label}/last-term-abelian", "last-term-abelian", lambda: _last_term_abelian(terms[-1]), G)
        run.check(f"{G.label}/center-chain", "strict-center-chain", lambda: _center_chain(terms), G)


def _assoc_witness(T: np.ndarray, a, b, c) -> tuple | None:
    bad = np.flatnonzero(T[T[a, b], c] != T[a, T[b, c]])
    if bad.size:
        k = int(bad[0])
        return int(a[k]), int(b[k]), int(c[k])
    return None


def associativity_witness(G: Group, *, samples: int = 1_000_000, seed: int = DEFAULT_SEED,
                          exhaustive_limit: int = 81) -> tuple[tuple | None, str]:
    """First non-associative triple of ``G``'s table and the mode used."""
    n = G.cardinality
    T = G.table
    if n <= exhaustive_limit:
        idx = np.arange(n)
        for a in range(n):
            b, c = np.meshgrid(idx, idx, indexing="ij")
            w = _assoc_witness(T, np.full(b.size, a), b.ravel(), c.ravel())
            if w:
                return w, "exhaustive"
        return None, "exhaustive"
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, samples))
    return _assoc_witness(T, a, b, c), "sampled"


def _suite_associativity(run: _Runner) -> None:
    cfg = run.cfg
    fixtures = _fixtures(cfg, default_fixtures)
    run.report.inputs["groups"] = [G.label for G in fixtures]
    run.report.inputs["seed"] = cfg.seed
    for G in fixtures:
        def assoc(G=G):
            e = derived_exponent(G)
            modes = set()
            for n in range(e + 1):
                w, mode = associativity_witness(TwistedGroup(G, n, strict=cfg.strict), samples=cfg.samples, seed=cfg.seed + n)
                modes.add(mode)
                if w:
                    return False, f"n={n} fails", [n] + [list(G.element(x)) for x in w]
            return True, f"n=0..{e} associative ({'/'.join(sorted(modes))})"

        run.check(f"{G.label}/twist-associative", "twist-associative", assoc, G)
    if not cfg.groups:
        U = unitriangular(4, 3)

        def negative():
            tw = TwistedGroup(U, 1, strict=False)
            w, mode = associativity_witness(tw, samples=cfg.samples, seed=cfg.seed)
            if w is None:
                return False, "no non-associative triple found"
            return True, "witness " + " ".join(str(U.element(x)) for x in w)

        run.check(f"{U.label}/twist-non-associative", "class-3-counterexample", negative, U)


_SUITES: dict[str, Callable[[_Runner], None]] = {
    "p4-classification": _suite_p4,
    "theorem": _suite_theorem,
    "lemma-s": _suite_lemma_s,
    "lemma-center": _suite_lemma_center,
    "corollary": _suite_corollary,
    "associativity": _suite_associativity,
}


def run_verify_suite(cfg: VerifySuiteConfig) -> Report:
    run = _Runner(cfg)
    _NODE_BUDGET[0] = cfg.node_budget
    run.report.inputs["primes"] = list(cfg.primes)
    if cfg.groups:
        run.report.inputs["specs"] = list(cfg.groups)
    _SUITES[cfg.suite](run)
    if cfg.output:
        with open(cfg.output, "wb") as fh:
            fh.write(render_report(run.report, "json"))
    return run.report
