"""Weisfeiler-Lehman color refinement: 1-WL, k-WL and k-FWL.

Colors inside one run are dense integer ids assigned in lexicographic order of
their signatures, so they are canonical. Each round's palette (the sorted
distinct signature rows and their counts) is folded into a 128-bit blake2b
chain; two runs produce the same digest exactly when their refinement
histories coincide, which makes digests comparable across graphs.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

import numpy as np

from .graph import Graph, disjoint_union

DEFAULT_BUDGET = 10**8
EXACT_DEBUG_MAX_N = 12


class WlResourceError(RuntimeError):
    """Raised when a tuple refinement would exceed its operation budget."""


@dataclass(frozen=True)
class WlConfig:
    method: str = "wl1"  # one of "wl1", "wlk", "fwlk"
    k: int = 1
    max_iterations: int | None = None
    initial_colors: tuple[Hashable, ...] | None = None
    budget: int = DEFAULT_BUDGET
    exact_debug: bool = False

    def __post_init__(self):
        if self.method not in ("wl1", "wlk", "fwlk"):
            raise ValueError(f"unknown WL method {self.method!r}")
        if self.method == "wl1" and self.k != 1:
            raise ValueError("1-WL takes k=1")
        if self.method != "wl1" and self.k < 2:
            raise ValueError("k-WL and k-FWL need k >= 2")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1 when set")
        if self.initial_colors is not None and self.method != "wl1":
            raise ValueError("initial colors are only supported for 1-WL")

    @classmethod
    def wl1(cls, **kw) -> "WlConfig":
        return cls("wl1", 1, **kw)

    @classmethod
    def wlk(cls, k: int, **kw) -> "WlConfig":
        return cls("wlk", k, **kw)

    @classmethod
    def fwlk(cls, k: int, **kw) -> "WlConfig":
        return cls("fwlk", k, **kw)

    @property
    def label(self) -> str:
        return {"wl1": "1wl", "wlk": f"kwl:{self.k}", "fwlk": f"kfwl:{self.k}"}[self.method]

    def round_cost(self, n: int) -> int:
        """Tuple-update operations of one refinement round on ``n`` nodes."""
        if self.method == "wl1":
            return n * n
        return n**self.k * self.k * n


@dataclass
class ColorRefinementResult:
    stable_histogram_hash: str
    iterations_used: int
    per_round_hashes: list[str]
    colors: np.ndarray = field(repr=False)  # final dense ids, one per node or tuple
    exact_key: bytes | None = field(default=None, repr=False)

    @property
    def num_colors(self) -> int:
        return int(self.colors.max()) + 1 if self.colors.size else 0


# ------------------------------------------------------------------ core loop


def _label_bytes(label: Hashable) -> bytes:
    if isinstance(label, bytes):
        return label
    return repr(label).encode()


def _array_bytes(a: np.ndarray) -> bytes:
    a = np.ascontiguousarray(a, dtype=np.int64)
    return np.array(a.shape, dtype=np.int64).tobytes() + a.tobytes()


def _refine(
    init_labels: Sequence[bytes],
    step: Callable[[np.ndarray], tuple[np.ndarray, list[np.ndarray]]],
    max_iterations: int | None,
    keep_history: bool = False,
) -> tuple[np.ndarray, int, list[str], bytes | None]:
    labels = sorted(set(init_labels))
    index = {lab: i for i, lab in enumerate(labels)}
    colors = np.fromiter((index[x] for x in init_labels), dtype=np.int64, count=len(init_labels))
    counts = np.bincount(colors, minlength=len(labels))
    entry = b"".join(len(x).to_bytes(4, "little") + x for x in labels) + counts.tobytes()
    history = [entry] if keep_history else None
    h = hashlib.blake2b(b"init" + entry, digest_size=16).digest()
    hashes = [h.hex()]
    num = len(labels)
    rounds = 0
    if not init_labels:
        return colors, 0, hashes, (b"" if keep_history else None)
    while max_iterations is None or rounds < max_iterations:
        rows, tables = step(colors)
        uniq, inv, cnt = np.unique(rows, axis=0, return_inverse=True, return_counts=True)
        rounds += 1
        # the palette is folded in even when the partition did not split: it
        # still carries the signature meaning (e.g. the common degree)
        entry = b"".join(_array_bytes(t) for t in tables) + _array_bytes(uniq) + cnt.tobytes()
        if history is not None:
            history.append(entry)
        h = hashlib.blake2b(h + entry, digest_size=16).digest()
        hashes.append(h.hex())
        if len(uniq) == num:
            # stable: later rounds are determined, so the digest repeats
            hashes.append(hashes[-1])
            break
        colors = inv.reshape(-1).astype(np.int64)
        num = len(uniq)
    exact = b"|".join(history) if history is not None else None
    return colors, rounds, hashes, exact


def _onehot_counts(adj: np.ndarray, colors: np.ndarray) -> np.ndarray:
    m = int(colors.max()) + 1 if colors.size else 0
    onehot = np.zeros((colors.size, m), dtype=np.int64)
    onehot[np.arange(colors.size), colors] = 1
    return adj @ onehot


def _wl1_step(adj: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    adj = adj.astype(np.int64)

    def step(colors: np.ndarray):
        return np.column_stack([colors, _onehot_counts(adj, colors)]), []

    return step


def refine_node_colors(
    adj: np.ndarray,
    init_labels: Sequence[Hashable] | None = None,
    max_iterations: int | None = None,
    keep_history: bool = False,
) -> tuple[np.ndarray, int, list[str], bytes | None]:
    """1-WL on a raw adjacency matrix; returns (colors, rounds, hashes, exact history)."""
    n = adj.shape[0]
    labels = [b""] * n if init_labels is None else [_label_bytes(x) for x in init_labels]
    if len(labels) != n:
        raise ValueError(f"expected {n} initial colors, got {len(labels)}")
    return _refine(labels, _wl1_step(adj), max_iterations, keep_history)


# -------------------------------------------------------------- tuple methods


def _atomic_types(adj: np.ndarray, k: int) -> np.ndarray:
    """Isomorphism type of each ordered k-tuple as a base-3 code over its position pairs."""
    n = adj.shape[0]
    code = np.zeros((n,) * k, dtype=np.int64)
    idx = np.indices((n,) * k)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = idx[i], idx[j]
            state = np.where(a == b, 2, adj[a, b].astype(np.int64))
            code = code * 3 + state
    return code.reshape(-1)


def _row_ids(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Dense ids of rows plus the sorted table of distinct rows that defines them."""
    table, inv = np.unique(rows, axis=0, return_inverse=True)
    return inv.reshape(-1), table


def _kwl_step(n: int, k: int) -> Callable[[np.ndarray], np.ndarray]:
    shape = (n,) * k

    def step(colors: np.ndarray):
        c = colors.reshape(shape)
        cols = [colors]
        tables = []
        for j in range(k):
            # multiset over w of colors with position j replaced by w; independent of v_j
            moved = np.moveaxis(c, j, -1).reshape(-1, n)
            ms, table = _row_ids(np.sort(moved, axis=1))
            tables.append(table)
            ms = np.expand_dims(ms.reshape((n,) * (k - 1)), j)
            cols.append(np.broadcast_to(ms, shape).reshape(-1))
        return np.column_stack(cols), tables

    return step


def _fwl_step(n: int, k: int) -> Callable[[np.ndarray], np.ndarray]:
    shape = (n,) * k

    def step(colors: np.ndarray):
        c = colors.reshape(shape)
        parts = []
        for j in range(k):
            # x[v..., w] = color of v with position j set to w
            moved = np.moveaxis(c, j, -1)
            parts.append(np.broadcast_to(np.expand_dims(moved, j), shape + (n,)).reshape(-1))
        tup, tup_table = _row_ids(np.column_stack(parts))
        ms, ms_table = _row_ids(np.sort(tup.reshape(-1, n), axis=1))
        return np.column_stack([colors, ms]), [tup_table, ms_table]

    return step


def _check_budget(cfg: WlConfig, n: int) -> None:
    cost = cfg.round_cost(n)
    if cost > cfg.budget:
        raise WlResourceError(
            f"{cfg.label} on {n} nodes needs {cost:.3g} tuple updates per round, "
            f"budget is {cfg.budget:.3g}"
        )


def _tuple_refine(adj: np.ndarray, cfg: WlConfig, keep_history: bool):
    n = adj.shape[0]
    _check_budget(cfg, n)
    init = _atomic_types(adj, cfg.k)
    labels = [int(x).to_bytes(8, "little") for x in np.unique(init)]
    lut = dict(zip(np.unique(init).tolist(), labels))
    step = _kwl_step(n, cfg.k) if cfg.method == "wlk" else _fwl_step(n, cfg.k)
    return _refine([lut[x] for x in init.tolist()], step, cfg.max_iterations, keep_history)


# ------------------------------------------------------------------ public API


def _result(out) -> ColorRefinementResult:
    colors, rounds, hashes, exact = out
    return ColorRefinementResult(hashes[-1], rounds, hashes, colors, exact)


def _keep_history(cfg: WlConfig, n: int) -> bool:
    return cfg.exact_debug and n <= EXACT_DEBUG_MAX_N


def refine_1wl(g: Graph, cfg: WlConfig | None = None) -> ColorRefinementResult:
    cfg = cfg or WlConfig.wl1()
    if cfg.method != "wl1":
        raise ValueError("refine_1wl needs a 1-WL config")
    out = refine_node_colors(g.adjacency(), cfg.initial_colors, cfg.max_iterations, _keep_history(cfg, g.n))
    return _result(out)


def refine_kwl(g: Graph, cfg: WlConfig) -> ColorRefinementResult:
    if cfg.method != "wlk":
        raise ValueError("refine_kwl needs a k-WL config")
    return _result(_tuple_refine(g.adjacency(), cfg, _keep_history(cfg, g.n)))


def refine_kfwl(g: Graph, cfg: WlConfig) -> ColorRefinementResult:
    if cfg.method != "fwlk":
        raise ValueError("refine_kfwl needs a k-FWL config")
    return _result(_tuple_refine(g.adjacency(), cfg, _keep_history(cfg, g.n)))


def refine(g: Graph, cfg: WlConfig) -> ColorRefinementResult:
    return {"wl1": refine_1wl, "wlk": refine_kwl, "fwlk": refine_kfwl}[cfg.method](g, cfg)


def _tuple_mask(n_total: int, k: int, lo: int, hi: int) -> np.ndarray:
    inside = np.zeros(n_total, dtype=bool)
    inside[lo:hi] = True
    mask = inside
    for _ in range(k - 1):
        mask = np.logical_and.outer(mask, inside)
    return mask.reshape(-1)


def union_histograms(
    g: Graph,
    h: Graph,
    cfg: WlConfig,
    g_colors: Sequence[Hashable] | None = None,
    h_colors: Sequence[Hashable] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Refine the disjoint union and return each side's color histogram."""
    u = disjoint_union(g, h)
    if cfg.method == "wl1":
        init = None
        if g_colors is not None or h_colors is not None or cfg.initial_colors is not None:
            if g_colors is None or h_colors is None:
                raise ValueError("initial colors must be given for both graphs")
            init = list(g_colors) + list(h_colors)
        colors = refine_node_colors(u.adjacency(), init, cfg.max_iterations)[0]
        gc, hc = colors[: g.n], colors[g.n :]
    else:
        colors = _tuple_refine(u.adjacency(), cfg, False)[0]
        gc = colors[_tuple_mask(u.n, cfg.k, 0, g.n)]
        hc = colors[_tuple_mask(u.n, cfg.k, g.n, u.n)]
    m = int(colors.max()) + 1 if colors.size else 0
    return np.bincount(gc, minlength=m), np.bincount(hc, minlength=m)


def distinguishes(
    cfg: WlConfig,
    g: Graph,
    h: Graph,
    g_colors: Sequence[Hashable] | None = None,
    h_colors: Sequence[Hashable] | None = None,
) -> bool:
    gh, hh = union_histograms(g, h, cfg, g_colors, h_colors)
    return not np.array_equal(gh, hh)
