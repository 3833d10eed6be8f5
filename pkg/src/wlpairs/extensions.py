"""Non-GNN extension baselines built on 1-WL.

``S3``/``S4`` seed 1-WL with per-node counts of induced connected k-node
subgraphs, typed by the rooted isomorphism class; ``N1``/``N2`` seed it with
the rooted isomorphism class of each node's radius-k ego-net; ``M1`` runs one
marked refinement per node and hashes the multiset of outcomes.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator


from .graph import Graph, ego_net
from .isomorphism import is_rooted_isomorphic
from .wl import WlConfig, distinguishes, refine_node_colors

DEFAULT_SUBSET_BUDGET = 5_000_000
DEFAULT_EGO_NODE_LIMIT = 80


class ExtensionResourceError(RuntimeError):
    pass


@dataclass(frozen=True)
class ExtensionConfig:
    kind: str  # "S", "N" or "M"
    k: int = 1

    def __post_init__(self):
        if self.kind == "S" and self.k < 3:
            raise ValueError("substructure counting needs k >= 3")
        if self.kind == "N" and self.k < 1:
            raise ValueError("ego-net radius must be >= 1")
        if self.kind == "M" and self.k != 1:
            raise ValueError("only single-node marking is supported")
        if self.kind not in ("S", "N", "M"):
            raise ValueError(f"unknown extension kind {self.kind!r}")

    @property
    def label(self) -> str:
        return f"{self.kind.lower()}{self.k}"

    @classmethod
    def parse(cls, text: str) -> "ExtensionConfig":
        t = text.strip().lower()
        if len(t) < 2 or t[0] not in "snm" or not t[1:].isdigit():
            raise ValueError(f"cannot parse extension method {text!r}")
        return cls(t[0].upper(), int(t[1:]))


# ------------------------------------------------------------ substructures


def connected_subsets(g: Graph, k: int, budget: int = DEFAULT_SUBSET_BUDGET) -> Iterator[tuple[int, ...]]:
    """Each connected induced k-node subset exactly once (0-based node ids)."""
    nb = [set(x - 1 for x in g.neighbors[v]) for v in range(1, g.n + 1)]
    emitted = 0

    def extend(sub: list[int], sub_nb: set[int], ext: set[int], root: int):
        nonlocal emitted
        if len(sub) == k:
            emitted += 1
            if emitted > budget:
                raise ExtensionResourceError(f"more than {budget} connected {k}-subsets")
            yield tuple(sub)
            return
        ext = set(ext)
        while ext:
            w = min(ext)
            ext.discard(w)
            excl = {u for u in nb[w] if u > root and u not in sub_nb and u not in sub}
            yield from extend(sub + [w], sub_nb | nb[w], ext | excl, root)

    for v in range(g.n):
        yield from extend([v], set(nb[v]), {u for u in nb[v] if u > v}, v)


@lru_cache(maxsize=None)
def _rooted_code(k: int, bits: int, root: int) -> tuple[int, ...]:
    """Canonical adjacency code of a k-node graph (upper-triangle bitmask) rooted at ``root``."""
    pairs = list(itertools.combinations(range(k), 2))
    adj = {p for i, p in enumerate(pairs) if (bits >> i) & 1}
    others = [x for x in range(k) if x != root]
    best = None
    for perm in itertools.permutations(others):
        order = (root,) + perm
        code = tuple(int((min(order[i], order[j]), max(order[i], order[j])) in adj) for i, j in pairs)
        if best is None or code < best:
            best = code
    return best


def substructure_init_colors(g: Graph, k: int, budget: int = DEFAULT_SUBSET_BUDGET) -> list[tuple]:
    """Per-node sorted ``(rooted type, count)`` tuples over induced connected k-node subgraphs."""
    if k < 3:
        raise ValueError("substructure counting needs k >= 3")
    a = g.adjacency()
    pairs = list(itertools.combinations(range(k), 2))
    counts: list[dict] = [dict() for _ in range(g.n)]
    for sub in connected_subsets(g, k, budget):
        bits = 0
        for i, (x, y) in enumerate(pairs):
            if a[sub[x], sub[y]]:
                bits |= 1 << i
        for pos, v in enumerate(sub):
            code = _rooted_code(k, bits, pos)
            counts[v][code] = counts[v].get(code, 0) + 1
    return [tuple(sorted(c.items())) for c in counts]


# --------------------------------------------------------------- ego-nets


@dataclass
class EgoNetPool:
    """Rooted isomorphism classes of ego-nets seen during one session."""

    node_limit: int = DEFAULT_EGO_NODE_LIMIT
    _buckets: dict = field(default_factory=dict)
    size: int = 0

    def class_of(self, net: Graph) -> int:
        if net.n > self.node_limit:
            raise ExtensionResourceError(
                f"ego-net with {net.n} nodes exceeds the exact-isomorphism limit {self.node_limit}"
            )
        root = [int(v == 1) for v in range(1, net.n + 1)]
        key = (net.n, net.m, refine_node_colors(net.adjacency(), root)[2][-1])
        bucket = self._buckets.setdefault(key, [])
        for rep, idx in bucket:
            if is_rooted_isomorphic(net, rep):
                return idx
        bucket.append((net, self.size))
        self.size += 1
        return self.size - 1


def egonet_init_colors(g: Graph, k: int, pool: EgoNetPool | None = None) -> list[int]:
    pool = pool if pool is not None else EgoNetPool()
    return [pool.class_of(ego_net(g, v, k)) for v in range(1, g.n + 1)]


# ----------------------------------------------------------------- marking


def marking_hashes(g: Graph) -> list[str]:
    adj = g.adjacency()
    out = []
    for u in range(g.n):
        labels = [0] * g.n
        labels[u] = 1
        out.append(refine_node_colors(adj, labels)[2][-1])
    return out


def marking_signature(g: Graph) -> str:
    h = hashlib.blake2b(digest_size=16)
    h.update(g.n.to_bytes(4, "little"))
    for x in sorted(marking_hashes(g)):
        h.update(bytes.fromhex(x))
    return h.hexdigest()


# ---------------------------------------------------------------- dispatch


def init_colors(cfg: ExtensionConfig, g: Graph, pool: EgoNetPool | None = None) -> list:
    if cfg.kind == "S":
        return substructure_init_colors(g, cfg.k)
    if cfg.kind == "N":
        return egonet_init_colors(g, cfg.k, pool)
    raise ValueError("marking has no single initial coloring")


def extension_signature(cfg: ExtensionConfig, g: Graph, pool: EgoNetPool | None = None) -> str:
    """Graph-level digest; comparable across graphs that share ``pool`` (for N_k)."""
    if cfg.kind == "M":
        return marking_signature(g)
    return refine_node_colors(g.adjacency(), init_colors(cfg, g, pool))[2][-1]


def extension_distinguishes(cfg: ExtensionConfig, g: Graph, h: Graph, pool: EgoNetPool | None = None) -> bool:
    if cfg.kind == "M":
        return marking_signature(g) != marking_signature(h)
    pool = pool if pool is not None else EgoNetPool()
    return distinguishes(WlConfig.wl1(), g, h, init_colors(cfg, g, pool), init_colors(cfg, h, pool))
