"""Isomorphism-class representatives of all graphs on up to 8 nodes."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np

from .graph import Graph
from .graph6 import write_graph6
from .isomorphism import is_isomorphic
from .wl import refine_node_colors

MAX_INTERNAL_N = 8


class EnumerationLimitError(ValueError):
    pass


def _walk_labels(adj: np.ndarray) -> list[tuple[int, int]]:
    a = adj.astype(np.int64)
    a2 = a @ a
    a3 = a2 @ a
    return list(zip(np.diag(a2).tolist(), np.diag(a3).tolist()))


def _invariant(adj: np.ndarray) -> tuple[str, list[tuple[int, int]]]:
    labels = _walk_labels(adj)
    hashes = refine_node_colors(adj, labels)[2]
    return hashes[-1], labels


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0),)
    if n == 1:
        return (Graph(1),)
    buckets: dict[str, list[tuple[Graph, list]]] = {}
    found: list[Graph] = []
    for base in _classes(n - 1):
        a0 = base.adjacency()
        deg0 = a0.sum(axis=1)
        for mask in range(1 << (n - 1)):
            sel = np.array([(mask >> i) & 1 for i in range(n - 1)], dtype=np.int8)
            d = int(sel.sum())
            # the new node must have minimum degree in the result
            if (deg0 + sel < d).any():
                continue
            a = np.zeros((n, n), dtype=np.int8)
            a[:-1, :-1] = a0
            a[-1, :-1] = sel
            a[:-1, -1] = sel
            key, labels = _invariant(a)
            bucket = buckets.setdefault(key, [])
            g = Graph.from_adjacency(a)
            if any(is_isomorphic(g, other, labels, olabels) for other, olabels in bucket):
                continue
            bucket.append((g, labels))
            found.append(g)
    found.sort(key=lambda g: (g.m, write_graph6(g)))
    return tuple(found)


def enumerate_nonisomorphic(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class, ordered by (edge count, graph6)."""
    if n < 0:
        raise EnumerationLimitError("node count must be non-negative")
    if n > MAX_INTERNAL_N:
        raise EnumerationLimitError(
            f"internal enumeration stops at n={MAX_INTERNAL_N}; pipe an external graph6 "
            f"stream (e.g. from nauty's geng {n}) into the collision search instead"
        )
    yield from _classes(n)
