from __future__ import annotations

import math
from dataclasses import dataclass

from ..graph import Graph, GraphError

DEFAULT_SKIPS = (2, 3, 4, 5, 6, 9, 11, 12, 13, 16)


@dataclass(frozen=True)
class CslParams:
    m: int
    r: int

    def __post_init__(self):
        if self.m < 4 or not 1 < self.r < self.m - 1 or math.gcd(self.m, self.r) != 1:
            raise GraphError(f"CSL needs coprime m, r with 1 < r < m-1, got m={self.m}, r={self.r}")


def gen_csl(p: CslParams) -> Graph:
    """Circulant skip-link graph: an m-cycle plus skip links of stride r.

    The skip sequence starts at node 1 and advances r positions around the
    cycle, ``s_{i+1} = (s_i + r - 1) mod m + 1``.
    """
    m, r = p.m, p.r
    edges = {(j, j + 1) for j in range(1, m)} | {(1, m)}
    s = 1
    for _ in range(m):
        t = (s + r - 1) % m + 1
        edges.add((min(s, t), max(s, t)))
        s = t
    g = Graph(m, frozenset(edges))
    if (g.degrees() != 4).any():
        raise GraphError(f"CSL({m},{r}) is not 4-regular")
    return g
