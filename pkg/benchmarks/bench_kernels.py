"""Compare the compiled kernels with the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.
"""

from __future__ import annotations

import argparse
import time
from contextlib import contextmanager

import numpy as np

from nilstring import _pycore, kernels
from nilstring.catalog import burnside_p4, heisenberg
from nilstring.groups import build_table_group
from nilstring.invariants import is_isomorphic

try:
    from nilstring import _core
except ImportError:
    _core = None


@contextmanager
def backend(impl):
    saved = kernels.closure, kernels.extend_hom
    kernels.closure, kernels.extend_hom = impl.closure, impl.extend_hom
    try:
        yield
    finally:
        kernels.closure, kernels.extend_hom = saved


def relabel(G, seed):
    rng = np.random.default_rng(seed)
    perm = rng.permutation(G.cardinality)
    j = int(np.flatnonzero(perm == 0)[0])
    perm[j], perm[G.identity_index] = perm[G.identity_index], 0
    inv = np.argsort(perm)
    return build_table_group(perm[G.table[inv][:, inv]], f"relabel({G.label})")


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def cases():
    H = heisenberg(3, 2)
    E = burnside_p4(3, "E")
    rng = np.random.default_rng(0)
    seeds = [rng.integers(0, H.cardinality, size=2) for _ in range(200)]
    gens = np.array(H.gens, dtype=np.int64)
    H2, E2 = relabel(H, 1), relabel(E, 2)

    def closure():
        for s in seeds:
            kernels.closure(H.table, s, H.identity_index)

    def extend():
        for _ in range(200):
            kernels.extend_hom(H.table, gens, H.table, gens, H.identity_index, H.identity_index)

    def iso81():
        for G in (E, E2):
            G.__dict__.pop("_fingerprint", None)
        assert is_isomorphic(E, E2).isomorphic

    def iso729():
        assert is_isomorphic(H, H2).isomorphic

    return [("closure x200 (order 729)", closure), ("extend_hom x200 (order 729)", extend),
            ("iso search (order 81)", iso81), ("iso search (order 729)", iso729)]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    impls = [("python", _pycore)] + ([("compiled", _core)] if _core is not None else [])
    print(f"{'case':32s}" + "".join(f"{name:>12s}" for name, _ in impls) + "     speedup")
    for label, fn in cases():
        row = []
        for _, impl in impls:
            with backend(impl):
                row.append(best_of(fn, args.repeat))
        speed = f"{row[0] / row[1]:10.1f}x" if len(row) == 2 else "         -"
        print(f"{label:32s}" + "".join(f"{t * 1e3:10.1f}ms" for t in row) + speed)


if __name__ == "__main__":
    main()
