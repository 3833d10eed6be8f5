"""Bucket a graph stream by a distinguisher's signature and emit colliding pairs."""

from __future__ import annotations

import functools
import itertools
from typing import Iterable, Union

import numpy as np

from ..extensions import EgoNetPool, ExtensionConfig, extension_signature
from ..graph import Graph
from ..pairs import GraphPair
from ..parallel import pmap
from ..wl import WlConfig, refine

Method = Union[WlConfig, ExtensionConfig]


def method_label(method: Method) -> str:
    return method.label


def _signature(method: Method, g: Graph) -> str:
    if isinstance(method, WlConfig):
        return refine(g, method).stable_histogram_hash
    return extension_signature(method, g)


def graph_signatures(graphs: list[Graph], method: Method, workers: int = 1) -> list[str]:
    """Per-graph digests; equal digests mean the method cannot tell the graphs apart.

    Ego-net classes live in one shared pool, so N_k signatures are computed
    in-process regardless of ``workers``.
    """
    if isinstance(method, ExtensionConfig) and method.kind == "N":
        pool = EgoNetPool()
        return [extension_signature(method, g, pool) for g in graphs]
    return pmap(functools.partial(_signature, method), graphs, workers)


def collision_index_pairs(signatures: list[str]) -> list[tuple[int, int]]:
    """All index pairs ``i < j`` with equal signatures, sorted."""
    buckets: dict[str, list[int]] = {}
    for i, s in enumerate(signatures):
        buckets.setdefault(s, []).append(i)
    out = [p for idx in buckets.values() for p in itertools.combinations(idx, 2)]
    out.sort()
    return out


def sample_sorted(items: list, count: int | None, seed: int) -> list:
    """Seeded sample of ``count`` items, returned in their original order."""
    if count is None or count >= len(items):
        return list(items)
    rng = np.random.default_rng(seed)
    pick = np.sort(rng.choice(len(items), size=count, replace=False))
    return [items[i] for i in pick]


def find_collision_pairs(
    graphs: Iterable[Graph],
    method: Method,
    sample: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> list[GraphPair]:
    """Pairs of stream graphs the method cannot distinguish.

    Pair ids are ``<method>-<i>-<j>`` with 1-based stream positions.
    """
    graphs = list(graphs)
    sigs = graph_signatures(graphs, method, workers)
    idx = sample_sorted(collision_index_pairs(sigs), sample, seed)
    label = method_label(method)
    return [GraphPair(f"{label}-{i + 1}-{j + 1}", graphs[i], graphs[j]) for i, j in idx]
