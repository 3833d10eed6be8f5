"""Exact isomorphism by individualization and color refinement.

Both graphs are refined jointly as one disjoint union so that color ids are
directly comparable; a branch dies as soon as the two halves disagree on a
color histogram.
"""

from __future__ import annotations

from typing import Hashable, Sequence

import numpy as np
from scipy.linalg import block_diag

from .graph import Graph


def _equitable(adj: np.ndarray, colors: np.ndarray) -> np.ndarray:
    """Coarsest equitable refinement of ``colors``, relabelled canonically."""
    _, colors = np.unique(colors, return_inverse=True)
    colors = colors.reshape(-1)
    num = int(colors.max()) + 1
    while True:
        onehot = np.zeros((colors.size, num), dtype=np.int64)
        onehot[np.arange(colors.size), colors] = 1
        rows = np.column_stack([colors, adj @ onehot])
        uniq, inv = np.unique(rows, axis=0, return_inverse=True)
        if len(uniq) == num:
            return colors
        colors = inv.reshape(-1)
        num = len(uniq)


def _search(adj: np.ndarray, ag: np.ndarray, ah: np.ndarray, n: int, colors: np.ndarray) -> bool:
    colors = _equitable(adj, colors)
    num = int(colors.max()) + 1
    cg, ch = colors[:n], colors[n:]
    sizes = np.bincount(cg, minlength=num)
    if not np.array_equal(sizes, np.bincount(ch, minlength=num)):
        return False
    if (sizes <= 1).all():
        # discrete: the coloring is the only candidate bijection
        to_h = np.empty(n, dtype=np.int64)
        to_h[ch] = np.arange(n)
        phi = to_h[cg]
        return bool(np.array_equal(ag, ah[np.ix_(phi, phi)]))
    cells = np.nonzero(sizes > 1)[0]
    target = cells[np.argmin(sizes[cells])]
    v = int(np.nonzero(cg == target)[0][0])
    fresh = num
    failed: list[int] = []
    hh = None
    for u in np.nonzero(ch == target)[0]:
        if failed:
            # skip u when an automorphism of h (fixing the current coloring) maps a failed candidate onto it
            if hh is None:
                hh = block_diag(ah, ah)
            base = np.concatenate([ch, ch])
            if any(_search(hh, ah, ah, n, _individualize(base, n, w, u, fresh)) for w in failed):
                continue
        if _search(adj, ag, ah, n, _individualize(colors, n, v, u, fresh)):
            return True
        failed.append(int(u))
    return False


def _individualize(colors: np.ndarray, n: int, v: int, u: int, fresh: int) -> np.ndarray:
    trial = colors.copy()
    trial[v] = fresh
    trial[n + u] = fresh
    return trial


def is_isomorphic(
    g: Graph,
    h: Graph,
    g_colors: Sequence[Hashable] | None = None,
    h_colors: Sequence[Hashable] | None = None,
) -> bool:
    """True iff an edge-preserving bijection exists (respecting colors when given)."""
    if g.n != h.n or g.m != h.m:
        return False
    if not np.array_equal(np.sort(g.degrees()), np.sort(h.degrees())):
        return False
    n = g.n
    if n == 0:
        return True
    if (g_colors is None) != (h_colors is None):
        raise ValueError("colors must be given for both graphs or neither")
    if g_colors is None:
        init = np.zeros(2 * n, dtype=np.int64)
    else:
        labels = [repr(x) for x in g_colors] + [repr(x) for x in h_colors]
        if len(labels) != 2 * n:
            raise ValueError("one color per node is required")
        _, init = np.unique(np.array(labels, dtype=object), return_inverse=True)
    ag = g.adjacency().astype(np.int64)
    ah = h.adjacency().astype(np.int64)
    return _search(block_diag(ag, ah), ag, ah, n, np.asarray(init, dtype=np.int64).reshape(-1))


def is_rooted_isomorphic(g: Graph, h: Graph, g_root: int = 1, h_root: int = 1) -> bool:
    """Isomorphism that maps ``g_root`` to ``h_root`` (1-based)."""
    gc = [int(v == g_root) for v in range(1, g.n + 1)]
    hc = [int(v == h_root) for v in range(1, h.n + 1)]
    return is_isomorphic(g, h, gc, hc)
