"""The compiled kernels and the pure-Python fallback must agree."""

from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from nilstring import _pycore, kernels

from conftest import cached_burnside, cached_heisenberg

try:
    from nilstring import _core
except ImportError:  # extension not built
    _core = None

needs_core = pytest.mark.skipif(_core is None, reason="compiled extension not built")


def _random_seeds(G, rng, k):
    return rng.integers(0, G.cardinality, size=k)


@needs_core
@pytest.mark.parametrize("key", [("A",), ("E",), ("H", 2)])
def test_closure_agrees(key):
    G = cached_heisenberg(3, 2) if key[0] == "H" else cached_burnside(3, key[0])
    rng = np.random.default_rng(0)
    for k in range(0, 4):
        seeds = _random_seeds(G, rng, k)
        a = _core.closure(G.table, seeds, G.identity_index)
        b = _pycore.closure(G.table, seeds, G.identity_index)
        assert a.dtype == b.dtype == bool
        assert (a == b).all()


@needs_core
def test_extend_hom_agrees():
    G = cached_burnside(3, "C")
    rng = np.random.default_rng(1)
    gens = np.array(G.gens, dtype=np.int64)
    for _ in range(50):
        imgs = _random_seeds(G, rng, len(gens)).astype(np.int64)
        s1, p1 = _core.extend_hom(G.table, gens, G.table, imgs, G.identity_index, G.identity_index)
        s2, p2 = _pycore.extend_hom(G.table, gens, G.table, imgs, G.identity_index, G.identity_index)
        assert s1 == s2
        if s1 > 0:
            assert (p1 == p2).all()


def test_extend_hom_identity_map(h31):
    gens = np.array(h31.gens, dtype=np.int64)
    for impl in filter(None, (_pycore, _core)):
        size, phi = impl.extend_hom(h31.table, gens, h31.table, gens, h31.identity_index, h31.identity_index)
        assert size == 27
        assert (phi == np.arange(27)).all()


def test_extend_hom_detects_non_injective(h31):
    gens = np.array(h31.gens, dtype=np.int64)
    imgs = np.array([gens[0]] * len(gens), dtype=np.int64)
    for impl in filter(None, (_pycore, _core)):
        size, _ = impl.extend_hom(h31.table, gens, h31.table, imgs, h31.identity_index, h31.identity_index)
        assert size == -1


def test_closure_of_nothing_is_trivial(h31):
    for impl in filter(None, (_pycore, _core)):
        m = impl.closure(h31.table, np.array([], dtype=np.int64), h31.identity_index)
        assert m.sum() == 1 and m[h31.identity_index]


def test_backend_name():
    assert kernels.BACKEND in ("compiled", "python")
    if _core is not None and not os.environ.get("NILSTRING_PURE_PYTHON"):
        assert kernels.BACKEND == "compiled"


def test_env_var_forces_fallback():
    out = subprocess.run(
        [sys.executable, "-c", "import nilstring.kernels as k; print(k.BACKEND)"],
        env={**os.environ, "NILSTRING_PURE_PYTHON": "1"},
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
