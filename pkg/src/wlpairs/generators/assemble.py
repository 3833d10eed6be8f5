"""Per-category dataset assembly with seeded selection and post-assembly audits.

Selection: every candidate pool is sorted (by the graph6 strings of its two
graphs) before sampling, and each subcategory draws from its own
``numpy.random.default_rng([seed, category, subcategory])`` stream, so a fixed
seed gives the same pairs for any worker count or pool discovery order.
"""

from __future__ import annotations

import functools
import logging
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from ..enumeration import MAX_INTERNAL_N, enumerate_nonisomorphic
from ..extensions import ExtensionConfig
from ..graph import Graph, cycle_graph, disjoint_union
from ..graph6 import read_graph6_file, write_graph6
from ..isomorphism import is_isomorphic
from ..pairs import Audit, GraphPair
from ..parallel import pmap
from ..wl import WlConfig, distinguishes
from .cfi import backbone_ok, cfi_pair, treewidth
from .collisions import collision_index_pairs, graph_signatures
from .families import builtin_catalog
from .regular import certify, verify_drg, verify_regular, verify_srg

log = logging.getLogger(__name__)

CATEGORIES = ("basic", "regular_simple", "srg", "fourvc", "drg", "extension", "cfi")

# subcategory -> pair count, in selection order
FULL_COUNTS: dict[str, dict[str, int]] = {
    "basic": {"basic": 60},
    "regular_simple": {"simple": 50},
    "srg": {"srg": 50},
    "fourvc": {"fourvc": 20},
    "drg": {"drg": 20},
    "extension": {"s4": 10, "n1": 20, "s3": 60, "virtual_apex": 5, "virtual_cycle": 5},
    "cfi": {"1WL": 60, "3WL": 20, "4WL": 20},
}

_SIDECAR_CATEGORY = {
    "basic": "basic",
    "regular_simple": "regular",
    "srg": "regular",
    "fourvc": "regular",
    "drg": "regular",
    "extension": "extension",
    "cfi": "cfi",
}


class InsufficientSourceError(RuntimeError):
    def __init__(self, category: str, subcategory: str, wanted: int, available: int):
        self.category, self.subcategory = category, subcategory
        self.wanted, self.available = wanted, available
        super().__init__(
            f"{category}/{subcategory}: need {wanted} pairs, source pool has {available} "
            f"(shortfall {wanted - available})"
        )

    @property
    def shortfall(self) -> int:
        return self.wanted - self.available


@dataclass
class Sources:
    """Where candidate graphs come from.

    ``graph6_streams`` replace the internal enumeration for Basic/Extension
    (e.g. all 10-node graphs from an external enumerator); ``catalogs`` add
    graphs for the SRG/4VC/DRG pools on top of the built-in constructions.
    """

    max_n: int = MAX_INTERNAL_N
    regular_n: tuple[int, ...] = (6, 7, 8)
    graph6_streams: tuple[Path, ...] = ()
    catalogs: tuple[Path, ...] = ()
    use_builtin_catalog: bool = True
    cfi_backbone_nodes: tuple[int, ...] = (3, 4, 5)
    cfi_iso_node_limit: int = 130
    workers: int = 1
    _cache: dict = field(default_factory=dict, repr=False)

    def stream(self) -> list[Graph]:
        if "stream" not in self._cache:
            if self.graph6_streams:
                gs = [g for p in self.graph6_streams for g in read_graph6_file(p)]
            else:
                gs = list(enumerate_nonisomorphic(self.max_n))
            self._cache["stream"] = gs
        return self._cache["stream"]

    def graphs_with_n(self, n: int) -> list[Graph]:
        out = [g for g in self.stream() if g.n == n]
        if not out and not self.graph6_streams and n <= MAX_INTERNAL_N:
            out = list(enumerate_nonisomorphic(n))
        return out

    def catalog(self) -> list[Graph]:
        if "catalog" not in self._cache:
            cands = [g for _, g in builtin_catalog()] if self.use_builtin_catalog else []
            for p in self.catalogs:
                cands.extend(read_graph6_file(p))
            reps: list[Graph] = []
            for g in cands:
                if not any(is_isomorphic(g, r) for r in reps):
                    reps.append(g)
            self._cache["catalog"] = reps
        return self._cache["catalog"]


# ------------------------------------------------------------------ helpers


def _key(g: Graph, h: Graph) -> tuple[str, str]:
    return (write_graph6(g), write_graph6(h))


def _ordered(g: Graph, h: Graph) -> tuple[Graph, Graph]:
    return (g, h) if write_graph6(g) <= write_graph6(h) else (h, g)


def _sorted_pool(pairs: Iterable[tuple[Graph, Graph]]) -> list[tuple[Graph, Graph]]:
    seen = {}
    for g, h in pairs:
        g, h = _ordered(g, h)
        seen.setdefault(_key(g, h), (g, h))
    return [seen[k] for k in sorted(seen)]


def _rng(seed: int, category: str, sub: str) -> np.random.Generator:
    return np.random.default_rng([seed, CATEGORIES.index(category), zlib.crc32(sub.encode())])


def _take(pool: list, count: int, rng: np.random.Generator) -> list:
    """Random selection in random order (the order matters for graph-reuse exclusion)."""
    if count >= len(pool):
        return [pool[i] for i in rng.permutation(len(pool))]
    return [pool[i] for i in rng.choice(len(pool), size=count, replace=False)]


def apex_graph(g: Graph) -> Graph:
    """``g`` plus one virtual node adjacent to every node."""
    n = g.n + 1
    return Graph(n, g.edges | frozenset((v, n) for v in range(1, g.n + 1)))


def cycle_pair(l: int) -> tuple[Graph, Graph]:
    """C_{2l} and C_l + C_l."""
    return cycle_graph(2 * l), disjoint_union(cycle_graph(l), cycle_graph(l))


def cfi_difficulty(backbone: Graph) -> str:
    """Hardest WL level the pair defeats, from the backbone treewidth.

    Over a backbone of treewidth t the pair defeats t-WL and falls to
    (t+1)-WL; levels above 3 are carried as metadata, not re-verified.
    """
    tw = treewidth(backbone)
    return {1: "1WL", 2: "1WL", 3: "3WL", 4: "4WL"}.get(tw, "beyond4WL")


# ------------------------------------------------------------------ audits


def _audit(args: tuple[Graph, Graph, bool, int]) -> Audit:
    g, h, is_cfi, iso_limit = args
    wl1_same = not distinguishes(WlConfig.wl1(), g, h)
    if is_cfi and g.n > iso_limit:
        # twisted and untwisted CFI graphs over a connected backbone are never
        # isomorphic; exact search at this size is beyond desk scale
        return Audit(wl1_same, True, "cfi_parity")
    return Audit(wl1_same, not is_isomorphic(g, h), "exact")


def audit_pairs(pairs: list[GraphPair], iso_node_limit: int = 130, workers: int = 1) -> list[GraphPair]:
    jobs = [(p.g, p.h, p.category == "cfi", iso_node_limit) for p in pairs]
    audits = pmap(_audit, jobs, workers, chunksize=1)
    return [GraphPair(p.pair_id, p.g, p.h, p.category, p.subcategory, p.wl_difficulty, a) for p, a in zip(pairs, audits)]


# ------------------------------------------------------------------- pools


def _wl1_collisions(graphs: list[Graph], workers: int) -> list[tuple[Graph, Graph]]:
    sigs = graph_signatures(graphs, WlConfig.wl1(), workers)
    return [(graphs[i], graphs[j]) for i, j in collision_index_pairs(sigs)]


def basic_pool(src: Sources) -> list[tuple[Graph, Graph]]:
    graphs = [g for g in src.stream() if verify_regular(g) is None]
    return _sorted_pool(_wl1_collisions(graphs, src.workers))


def _simple_regular(g: Graph) -> bool:
    c = certify(g)
    return c is not None and c.level == "regular"


def regular_simple_pool(src: Sources) -> list[tuple[Graph, Graph]]:
    out = []
    for n in src.regular_n:
        groups: dict[int, list[Graph]] = {}
        for g in src.graphs_with_n(n):
            k = verify_regular(g)
            if k is not None and _simple_regular(g):
                groups.setdefault(k, []).append(g)
        for gs in groups.values():
            out += [(gs[i], gs[j]) for i in range(len(gs)) for j in range(i + 1, len(gs))]
    return _sorted_pool(out)


def _catalog_groups(src: Sources):
    srg: dict = {}
    drg: dict = {}
    for g in src.catalog():
        p = verify_srg(g)
        if p is not None and p.mu > 0:
            srg.setdefault(p, []).append(g)
            continue
        ia = verify_drg(g)
        if ia is not None and ia.diameter >= 3:
            drg.setdefault(ia, []).append(g)
    return srg, drg


def _within(groups: dict, keep=lambda g, h: True) -> list[tuple[Graph, Graph]]:
    out = []
    for gs in groups.values():
        out += [(gs[i], gs[j]) for i in range(len(gs)) for j in range(i + 1, len(gs)) if keep(gs[i], gs[j])]
    return _sorted_pool(out)


def srg_pools(src: Sources) -> tuple[list, list]:
    """(pairs with at least one non-4VC graph, pairs of two 4VC graphs)."""
    from .regular import verify_4vc

    srg, _ = _catalog_groups(src)
    four = {}

    def is4(g):
        key = write_graph6(g)
        if key not in four:
            four[key] = verify_4vc(g)
        return four[key]

    return _within(srg, lambda g, h: not (is4(g) and is4(h))), _within(srg, lambda g, h: is4(g) and is4(h))


def drg_pool(src: Sources) -> list[tuple[Graph, Graph]]:
    return _within(_catalog_groups(src)[1])


def extension_pools(src: Sources) -> dict[str, list[tuple[Graph, Graph]]]:
    base = _wl1_collisions(src.stream(), src.workers)
    graphs = sorted({write_graph6(x): x for p in base for x in p}.items())
    index = {k: i for i, (k, _) in enumerate(graphs)}
    glist = [g for _, g in graphs]
    pools = {}
    for name in ("s4", "n1", "s3"):
        sig = graph_signatures(glist, ExtensionConfig.parse(name), src.workers)
        pools[name] = _sorted_pool(
            (g, h) for g, h in base if sig[index[write_graph6(g)]] == sig[index[write_graph6(h)]]
        )
    regular = {}
    for g in src.graphs_with_n(src.max_n):
        k = verify_regular(g)
        if k is not None and 0 < k < g.n - 1:
            regular.setdefault(k, []).append(g)
    pools["virtual_apex"] = _sorted_pool(
        (apex_graph(a), apex_graph(b)) for gs in regular.values() for i, a in enumerate(gs) for b in gs[i + 1 :]
    )
    return pools


def cfi_pools(src: Sources) -> dict[str, list[tuple[Graph, Graph, str]]]:
    pools: dict[str, list] = {"1WL": [], "3WL": [], "4WL": []}
    for n in src.cfi_backbone_nodes:
        for b in enumerate_nonisomorphic(n):
            if not backbone_ok(b):
                continue
            tag = cfi_difficulty(b)
            g, h = cfi_pair(b)
            pools["4WL" if tag == "beyond4WL" else tag].append((g, h, tag))
    for k in pools:
        pools[k].sort(key=lambda t: (t[0].n, write_graph6(t[0])))
    return pools


# ---------------------------------------------------------------- assembly


def _fill(category, sub, pool, count, rng, allow_shortfall, shortfalls, used=None):
    chosen = []
    for item in _take(pool, len(pool), rng):
        if len(chosen) == count:
            break
        if used is not None:
            keys = {write_graph6(item[0]), write_graph6(item[1])}
            if keys & used:
                continue
            used |= keys
        chosen.append(item)
    if len(chosen) < count:
        err = InsufficientSourceError(category, sub, count, len(chosen))
        if not allow_shortfall:
            raise err
        log.warning("%s", err)
        if shortfalls is not None:
            shortfalls.append(err)
    return chosen


def assemble_category(
    category: str,
    sources: Sources | None = None,
    seed: int = 0,
    counts: dict[str, int] | None = None,
    allow_shortfall: bool = False,
    shortfalls: list | None = None,
    audit: bool = True,
) -> list[GraphPair]:
    """Audited pairs for one category, deterministic in ``(seed, sources)``.

    ``counts`` overrides the per-subcategory sizes. When a pool is too small
    an :class:`InsufficientSourceError` is raised, unless ``allow_shortfall``
    is set, in which case everything available is used and the error is
    appended to ``shortfalls``.
    """
    if category not in CATEGORIES:
        raise ValueError(f"unknown category {category!r}; expected one of {', '.join(CATEGORIES)}")
    src = sources or Sources()
    want = dict(FULL_COUNTS[category])
    if counts:
        unknown = set(counts) - set(want)
        if unknown:
            raise ValueError(f"unknown subcategories for {category}: {sorted(unknown)}")
        want.update(counts)
    fill = functools.partial(_fill, category, allow_shortfall=allow_shortfall, shortfalls=shortfalls)
    picked: list[tuple[str, Graph, Graph, str]] = []  # (sub, g, h, tag)

    if category == "basic":
        for g, h in fill("basic", basic_pool(src), want["basic"], _rng(seed, category, "basic")):
            picked.append(("basic", g, h, "1WL"))
    elif category == "regular_simple":
        for g, h in fill("simple", regular_simple_pool(src), want["simple"], _rng(seed, category, "simple")):
            picked.append(("simple", g, h, "1WL"))
    elif category in ("srg", "fourvc"):
        srg, four = srg_pools(src)
        pool = srg if category == "srg" else four
        for g, h in fill(category, pool, want[category], _rng(seed, category, category)):
            picked.append((category, g, h, "3WL"))
    elif category == "drg":
        for g, h in fill("drg", drg_pool(src), want["drg"], _rng(seed, category, "drg")):
            picked.append(("drg", g, h, "3WL"))
    elif category == "extension":
        pools = extension_pools(src)
        used: set[str] = set()
        for sub in ("s4", "n1", "s3"):
            for g, h in fill(sub, pools[sub], want[sub], _rng(seed, category, sub), used=used):
                picked.append((sub, g, h, "1WL"))
        for g, h in fill("virtual_apex", pools["virtual_apex"], want["virtual_apex"], _rng(seed, category, "virtual_apex")):
            picked.append(("virtual_apex", g, h, "1WL"))
        for l in range(3, 3 + want["virtual_cycle"]):
            g, h = cycle_pair(l)
            picked.append(("virtual_cycle", g, h, "1WL"))
    else:
        pools = cfi_pools(src)
        for sub in ("1WL", "3WL", "4WL"):
            for g, h, tag in fill(sub, pools[sub], want[sub], _rng(seed, category, sub)):
                picked.append((sub, g, h, tag))

    label = _SIDECAR_CATEGORY[category]
    pairs = [
        GraphPair(f"{category}-{i + 1:03d}", g, h, label, sub, tag)
        for i, (sub, g, h, tag) in enumerate(picked)
    ]
    if audit:
        pairs = audit_pairs(pairs, src.cfi_iso_node_limit, src.workers)
    return pairs
