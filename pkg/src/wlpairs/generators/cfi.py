"""Cai-Fürer-Immerman graph pairs over small backbones."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..graph import Graph, GraphError, is_connected


@dataclass(frozen=True)
class CfiSpec:
    backbone: Graph
    twisted: bool = False
    twist_edge: int = 0  # index into the sorted backbone edge list

    def __post_init__(self):
        b = self.backbone
        if b.n < 2 or not is_connected(b):
            raise GraphError("CFI backbone must be connected")
        if b.n and b.degrees().min() < 2:
            raise GraphError("CFI backbone needs minimum degree >= 2")
        if not 0 <= self.twist_edge < b.m:
            raise GraphError(f"twist edge index {self.twist_edge} out of range")


def cfi_node_count(backbone: Graph) -> int:
    return int(sum(2 ** (int(d) - 1) for d in backbone.degrees())) + 2 * backbone.m


def gen_cfi(spec: CfiSpec) -> Graph:
    """Even-subset gadget construction with one shared node pair per backbone edge.

    Gadget nodes come first (backbone vertices in order, even subsets in
    lexicographic order), followed by ``e0, e1`` for each sorted edge. The
    twist flips the pair at the larger endpoint of the twisted edge.
    """
    b = spec.backbone
    edges = sorted(b.edges)
    eidx = {e: i for i, e in enumerate(edges)}
    twist = edges[spec.twist_edge] if spec.twisted else None
    gadgets = []
    for v in range(1, b.n + 1):
        inc = [eidx[(min(v, u), max(v, u))] for u in b.neighbors[v]]
        inc.sort()
        for size in range(0, len(inc) + 1, 2):
            for z in itertools.combinations(inc, size):
                gadgets.append((v, inc, frozenset(z)))
    base = len(gadgets)
    out = []
    for node, (v, inc, z) in enumerate(gadgets, start=1):
        for e in inc:
            bit = e in z
            if twist is not None and edges[e] == twist and v == twist[1]:
                bit = not bit
            out.append((node, base + 2 * e + 1 + int(bit)))
    g = Graph(base + 2 * len(edges), frozenset(out))
    assert g.n == cfi_node_count(b)
    return g


def cfi_pair(backbone: Graph, twist_edge: int = 0) -> tuple[Graph, Graph]:
    return (
        gen_cfi(CfiSpec(backbone, False, twist_edge)),
        gen_cfi(CfiSpec(backbone, True, twist_edge)),
    )


def treewidth(g: Graph) -> int:
    """Exact treewidth by dynamic programming over vertex subsets (n <= ~16)."""
    n = g.n
    if n <= 1:
        return 0
    adj = [0] * n
    for u, v in g.edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)

    def q(s: int, v: int) -> int:
        # vertices outside s and v reachable from v through s
        seen = 1 << v
        frontier = 1 << v
        reach = 0
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                x = low.bit_length() - 1
                f ^= low
                nbrs = adj[x] & ~seen
                nxt |= nbrs & s
                reach |= nbrs & ~s
                seen |= nbrs
            frontier = nxt
        return bin(reach & ~(1 << v)).count("1")

    full = (1 << n) - 1
    tw = {0: -1}
    for size in range(1, n + 1):
        for comb in itertools.combinations(range(n), size):
            s = sum(1 << x for x in comb)
            best = n
            for v in comb:
                rest = s & ~(1 << v)
                best = min(best, max(tw[rest], q(rest, v)))
            tw[s] = best
    return tw[full]


def backbone_ok(g: Graph) -> bool:
    return g.n >= 3 and is_connected(g) and bool(np.min(g.degrees()) >= 2)
