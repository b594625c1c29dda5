"""Pure-Python kernels; the reference and fallback for ``_core``.

Tables are ``int32`` arrays with ``table[x, y]`` the index of ``x*y``.
"""

from __future__ import annotations

import numpy as np


def closure(table, seeds, identity):
    """Mask of the subgroup generated by ``seeds``.

    Breadth-first search under right multiplication by the seeds; in a finite
    group the generated submonoid is already a subgroup.
    """
    rows = table.tolist() if isinstance(table, np.ndarray) else table
    seeds = [int(s) for s in seeds]
    n = len(rows)
    seen = bytearray(n)
    seen[identity] = 1
    queue = [identity]
    head = 0
    while head < len(queue):
        row = rows[queue[head]]
        head += 1
        for s in seeds:
            y = row[s]
            if not seen[y]:
                seen[y] = 1
                queue.append(y)
    return np.frombuffer(bytes(seen), dtype=np.uint8).astype(bool)


def extend_hom(table_g, gens, table_h, images, id_g, id_h):
    """Extend ``gens[k] -> images[k]`` to an injective homomorphism.

    Returns ``(size, phi)`` where ``phi[x]`` is the image of ``x`` (``-1``
    outside the subgroup generated by ``gens``) and ``size`` is the order of
    that subgroup.  ``size`` is ``-1`` when the assignment does not extend,
    either because two words for the same element disagree or because two
    elements collide.
    """
    rg = table_g.tolist() if isinstance(table_g, np.ndarray) else table_g
    rh = table_h.tolist() if isinstance(table_h, np.ndarray) else table_h
    gens = [int(g) for g in gens]
    images = [int(h) for h in images]
    n_g, n_h = len(rg), len(rh)
    phi = [-1] * n_g
    used = bytearray(n_h)
    phi[id_g] = id_h
    used[id_h] = 1
    queue = [id_g]
    head = 0
    pairs = list(zip(gens, images))
    while head < len(queue):
        x = queue[head]
        head += 1
        row_g = rg[x]
        row_h = rh[phi[x]]
        for g, h in pairs:
            y = row_g[g]
            img = row_h[h]
            cur = phi[y]
            if cur < 0:
                if used[img]:
                    return -1, np.array(phi, dtype=np.int64)
                phi[y] = img
                used[img] = 1
                queue.append(y)
            elif cur != img:
                return -1, np.array(phi, dtype=np.int64)
    return len(queue), np.array(phi, dtype=np.int64)
