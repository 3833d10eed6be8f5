"""Exact membership tests for the regular-graph families.

Inclusions: 4-vertex-condition graphs are strongly regular, and connected
strongly regular graphs are exactly the distance-regular graphs of diameter 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..graph import Graph, all_pairs_distances


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int

    def feasible(self) -> bool:
        return self.k * (self.k - self.lam - 1) == (self.v - self.k - 1) * self.mu

    def __str__(self) -> str:
        return f"srg({self.v},{self.k},{self.lam},{self.mu})"


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def diameter(self) -> int:
        return len(self.c)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + "}"


@dataclass(frozen=True)
class RegularityCertificate:
    level: str  # "regular", "strongly_regular", "four_vertex_condition", "distance_regular"
    witness: object


def verify_regular(g: Graph) -> int | None:
    if g.n == 0:
        return None
    deg = g.degrees()
    return int(deg[0]) if (deg == deg[0]).all() else None


def _pair_masks(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    a = g.adjacency().astype(bool)
    off = ~np.eye(g.n, dtype=bool)
    return a, off & ~a


def verify_srg(g: Graph) -> SrgParams | None:
    """srg parameters, or None. Complete and edgeless graphs are not counted."""
    k = verify_regular(g)
    if k is None:
        return None
    adjm, nonadj = _pair_masks(g)
    if not adjm.any() or not nonadj.any():
        return None
    a = g.adjacency().astype(np.int64)
    common = a @ a
    lam_vals = np.unique(common[adjm])
    mu_vals = np.unique(common[nonadj])
    if len(lam_vals) != 1 or len(mu_vals) != 1:
        return None
    return SrgParams(g.n, k, int(lam_vals[0]), int(mu_vals[0]))


def common_neighbor_edges(g: Graph) -> np.ndarray:
    """``out[u, v]`` = number of edges inside the common neighborhood of ``u`` and ``v``."""
    a = g.adjacency().astype(np.int64)
    out = np.zeros((g.n, g.n), dtype=np.int64)
    for u in range(g.n):
        c = a[u][None, :] * a  # row v: common-neighbor indicator of (u, v)
        out[u] = np.einsum("vx,xy,vy->v", c, a, c) // 2
    return out


def verify_4vc(g: Graph) -> bool:
    if verify_srg(g) is None:
        return False
    adjm, nonadj = _pair_masks(g)
    e = common_neighbor_edges(g)
    return len(np.unique(e[adjm])) == 1 and len(np.unique(e[nonadj])) == 1


def verify_drg(g: Graph) -> IntersectionArray | None:
    """Intersection array when every p^d_{jk} depends only on the distance d, else None."""
    if g.n < 2 or verify_regular(g) is None:
        return None
    dm = all_pairs_distances(g)
    if not dm.connected:
        return None
    dist = dm.dist.astype(np.int64)
    diam = dm.diameter
    layers = [(dist == j).astype(np.int64) for j in range(diam + 1)]
    classes = [dist == d for d in range(diam + 1)]
    for j in range(diam + 1):
        for k in range(diam + 1):
            p = layers[j] @ layers[k].T
            for cls in classes:
                if len(np.unique(p[cls])) != 1:
                    return None
    a = layers[1]
    b, c = [], []
    for d in range(diam + 1):
        cls = classes[d]
        if d < diam:
            b.append(int(np.unique((a @ layers[d + 1].T)[cls.T])[0]))
        if d > 0:
            c.append(int(np.unique((a @ layers[d - 1].T)[cls.T])[0]))
    return IntersectionArray(tuple(b), tuple(c))


def certify(g: Graph) -> RegularityCertificate | None:
    """Strongest family membership for ``g``."""
    k = verify_regular(g)
    if k is None:
        return None
    srg = verify_srg(g)
    if srg is not None:
        if verify_4vc(g):
            return RegularityCertificate("four_vertex_condition", srg)
        return RegularityCertificate("strongly_regular", srg)
    drg = verify_drg(g)
    if drg is not None and drg.diameter >= 3:
        return RegularityCertificate("distance_regular", drg)
    return RegularityCertificate("regular", k)
