"""Undirected simple graphs with 1-based node labels.

Nodes are ``1..n``. The numpy adjacency matrix returned by
:meth:`Graph.adjacency` is 0-based: node ``v`` is row ``v - 1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative node count {self.n}")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge {e} out of range for n={self.n}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(seen))

    @classmethod
    def from_adjacency(cls, adj: np.ndarray) -> "Graph":
        adj = np.asarray(adj)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise GraphError("adjacency matrix must be square")
        if (adj != adj.T).any():
            raise GraphError("adjacency matrix must be symmetric")
        if np.diag(adj).any():
            raise GraphError("self-loops are not allowed")
        us, vs = np.nonzero(np.triu(adj, 1))
        return cls(adj.shape[0], frozenset(zip((us + 1).tolist(), (vs + 1).tolist())))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _adj(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        if self.edges:
            e = np.array(sorted(self.edges)) - 1
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        a.setflags(write=False)
        return a

    def adjacency(self) -> np.ndarray:
        """Read-only 0-based int8 adjacency matrix."""
        return self._adj

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """``neighbors[v]`` for 1-based ``v``; index 0 is an empty placeholder."""
        nb: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in sorted(self.edges):
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(x) for x in nb)

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1).astype(np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def induced(self, nodes: Sequence[int]) -> "Graph":
        """Induced subgraph; ``nodes[i]`` becomes node ``i + 1``."""
        idx = np.asarray(nodes, dtype=np.int64) - 1
        return Graph.from_adjacency(self._adj[np.ix_(idx, idx)])

    def complement(self) -> "Graph":
        a = 1 - self._adj
        np.fill_diagonal(a, 0)
        return Graph.from_adjacency(a)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, frozenset(edges))


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return bool(np.isfinite(bfs_distances(g, 1)).all())


# ---------------------------------------------------------------- permutations


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``[n]``; ``mapping[i - 1]`` is the image of node ``i``."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.mapping)
        if sorted(m) != list(range(1, len(m) + 1)):
            raise GraphError("permutation must be a bijection on 1..n")
        object.__setattr__(self, "mapping", m)

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, v: int) -> int:
        return self.mapping[v - 1]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "Permutation":
        return cls(tuple((rng.permutation(n) + 1).tolist()))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.mapping, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))


def apply_permutation(g: Graph, p: Permutation) -> Graph:
    """Relabel so that ``(u, v)`` in ``g`` iff ``(p(u), p(v))`` in the result."""
    if p.n != g.n:
        raise GraphError(f"permutation size {p.n} does not match graph size {g.n}")
    return Graph(g.n, frozenset((p(u), p(v)) for u, v in g.edges))


# ------------------------------------------------------------------- distances


@dataclass(frozen=True)
class DistanceMatrix:
    dist: np.ndarray  # float, inf for unreachable pairs

    @property
    def diameter(self) -> int:
        """Largest finite distance (0 for graphs with fewer than two nodes)."""
        finite = self.dist[np.isfinite(self.dist)]
        return int(finite.max()) if finite.size else 0

    @property
    def connected(self) -> bool:
        return bool(np.isfinite(self.dist).all())


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop counts from 1-based ``source``; 0-based result, inf when unreachable."""
    dist = np.full(g.n, np.inf)
    dist[source - 1] = 0
    nb = g.neighbors
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u - 1] + 1
        for w in nb[u]:
            if dist[w - 1] == np.inf:
                dist[w - 1] = du
                queue.append(w)
    return dist


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    if g.n == 0:
        return DistanceMatrix(np.zeros((0, 0)))
    # frontier expansion on the adjacency matrix, one BFS layer per step for all sources
    a = g.adjacency().astype(bool)
    dist = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(dist, 0)
    reached = np.eye(g.n, dtype=bool)
    frontier = reached.copy()
    step = 0
    while frontier.any():
        step += 1
        nxt = (frontier.astype(np.int32) @ a.astype(np.int32)) > 0
        nxt &= ~reached
        dist[nxt] = step
        reached |= nxt
        frontier = nxt
    return DistanceMatrix(dist)


def ego_net(g: Graph, v: int, k: int) -> Graph:
    """Induced subgraph on nodes within distance ``k`` of ``v``; ``v`` becomes node 1.

    Remaining nodes keep their relative order.
    """
    if not 1 <= v <= g.n:
        raise GraphError(f"node {v} out of range for n={g.n}")
    if k < 0:
        raise GraphError("radius must be non-negative")
    d = bfs_distances(g, v)
    others = [u + 1 for u in np.nonzero(d <= k)[0].tolist() if u + 1 != v]
    return g.induced([v] + others)


# ------------------------------------------------------------ named small graphs


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 nodes")
    return Graph(n, frozenset((i, i % n + 1) for i in range(1, n + 1)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(1, n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def star_graph(leaves: int) -> Graph:
    """Star with center 1 and ``leaves`` leaves."""
    return Graph(leaves + 1, frozenset((1, j) for j in range(2, leaves + 2)))


def empty_graph(n: int) -> Graph:
    return Graph(n)
