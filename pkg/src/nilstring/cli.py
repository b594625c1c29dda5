"""Command-line front end."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .catalog import classify_by_order_structure, p4_catalog, parse_group, spec_of
from .errors import (
    BudgetExceeded,
    ConfigError,
    EvenOrder,
    InconsistentPresentation,
    NilstringError,
    NotClass2,
    PresentationError,
)
from .groups import DEFAULT_SEED, Group, build_pc_group, check_consistency
from .invariants import ISO_NODE_BUDGET, fingerprint, is_isomorphic, order_structure
from .presentation import PcPresentation
from .twist import TwistedGroup, string_of
from .verify import SUITES, VerifySuiteConfig, render_report, run_verify_suite

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _emit(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _groups_from(args, *, need: int | None = None) -> list[Group]:
    specs = list(args.spec or []) + list(args.group or [])
    if not specs:
        raise ConfigError("give a group with --spec FILE or --group NAME")
    if need is not None and len(specs) != need:
        raise ConfigError(f"expected {need} groups, got {len(specs)}")
    return [parse_group(s) for s in specs]


def _summary(G: Group) -> dict:
    return {
        "label": G.label,
        "spec": spec_of(G),
        "order": G.cardinality,
        "abelian": bool(G.is_abelian),
        "center_order": int(G.center_mask.sum()),
        "order_structure": order_structure(G).to_json(),
    }


def cmd_build(args) -> int:
    out = []
    code = EXIT_PASS
    for spec in list(args.spec or []) + list(args.group or []):
        if spec.endswith(".json"):
            pres = PcPresentation.load(spec)
            verdict = check_consistency(pres, seed=args.seed)
            if not verdict.consistent:
                out.append({"spec": spec, "consistent": False, "mode": verdict.mode,
                            "reason": verdict.reason, "witness": verdict.witness,
                            "replay": f"nilstring build --spec {spec}"})
                code = EXIT_FAIL
                continue
            G = build_pc_group(pres, label=pres.label or spec, seed=args.seed)
            G.spec = spec
            entry = _summary(G)
            entry.update(consistent=True, mode=verdict.mode)
        else:
            entry = _summary(parse_group(spec))
        if args.twist is not None:
            T = TwistedGroup(parse_group(spec), args.twist, strict=args.strict)
            entry["twisted"] = {"n": args.twist, "label": T.label,
                                "center_order": int(T.center_mask.sum())}
        out.append(entry)
    if not out:
        raise ConfigError("give a group with --spec FILE or --group NAME")
    _emit({"groups": out}, args.json)
    return code


def cmd_string(args) -> int:
    docs = [string_of(G).report(fingerprints=not args.brief) for G in _groups_from(args)]
    _emit(docs[0] if len(docs) == 1 else {"strings": docs}, args.json)
    return EXIT_PASS


def cmd_iso(args) -> int:
    G, H = _groups_from(args, need=2)
    v = is_isomorphic(G, H, node_budget=args.budget or ISO_NODE_BUDGET)
    doc = {
        "groups": [G.label, H.label],
        "isomorphic": v.isomorphic,
        "method": v.method,
    }
    if v.isomorphic and v.witness is not None:
        doc["witness"] = [[list(a), list(b)] for a, b in v.witness.items()]
    if v.separating_invariant is not None:
        doc["separating_invariant"] = v.separating_invariant
    _emit(doc, args.json)
    return EXIT_PASS


def cmd_catalog(args) -> int:
    groups = p4_catalog(args.p or 3)
    doc = {"p": args.p or 3, "groups": [_summary(G) for G in groups]}
    if args.classify:
        doc["classes"] = [
            {
                "order_structure": c.order_structure.to_json(),
                "members": sorted(c.labels),
                "maximal": sorted(G.label for G in c.maximal_members),
            }
            for c in classify_by_order_structure(groups)
        ]
    if args.fingerprints:
        for entry, G in zip(doc["groups"], groups):
            entry["fingerprint"] = fingerprint(G).to_json()
    _emit(doc, args.json)
    return EXIT_PASS


def cmd_verify(args) -> int:
    cfg = VerifySuiteConfig(
        suite=args.suite,
        primes=tuple(args.p or [3]),
        groups=tuple(list(args.spec or []) + list(args.group or [])),
        node_budget=args.budget or ISO_NODE_BUDGET,
        seed=args.seed,
        samples=args.samples,
        strict=args.strict,
        output=args.json,
    )
    report = run_verify_suite(cfg)
    sys.stdout.buffer.write(render_report(report, args.format))
    sys.stdout.flush()
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", action="append", metavar="FILE", help="presentation JSON file")
    common.add_argument("--group", action="append", metavar="NAME",
                        help="shorthand such as burnside:A:p=3 or heisenberg:p=3:k=2")
    common.add_argument("--json", metavar="PATH", help="write the JSON result here")
    common.add_argument("--budget", type=int, metavar="N", help="isomorphism search node budget")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true", default=True,
                      help="reject groups of class above 2 (default)")
    mode.add_argument("--unchecked", dest="strict", action="store_false",
                      help="skip the class check when twisting")

    parser = argparse.ArgumentParser(prog="nilstring", description=__doc__)
    parser.add_argument("--version", action="version", version=f"nilstring {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="build groups and check presentations")
    b.add_argument("--twist", type=int, metavar="N", help="also report the twist by N")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("string", parents=[common], help="compute the string of a group")
    s.add_argument("--brief", action="store_true", help="omit fingerprints")
    s.set_defaults(func=cmd_string)

    i = sub.add_parser("iso", parents=[common], help="decide isomorphism of two groups")
    i.set_defaults(func=cmd_iso)

    c = sub.add_parser("catalog", parents=[common], help="list the order p^4 catalog")
    c.add_argument("--p", type=int, default=3)
    c.add_argument("--classify", action="store_true")
    c.add_argument("--fingerprints", action="store_true")
    c.set_defaults(func=cmd_catalog)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--p", type=int, action="append", metavar="N", help="prime (repeatable)")
    v.add_argument("--samples", type=int, default=1_000_000, help="sampled associativity triples")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InconsistentPresentation, NotClass2, EvenOrder) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ConfigError, PresentationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NilstringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
