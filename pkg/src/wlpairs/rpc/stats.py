"""Hotelling T^2 paired comparisons, the RPC/RAPC decision rules, and the cosine-margin loss."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fdist import f_quantile

RIDGE = 1e-9
RIDGE_FLOOR = 1e-30
MAX_CONDITION = 1e12
_ZERO_TOL = 64 * np.finfo(float).eps

DISTINGUISHED = "distinguished"
NOT_DISTINGUISHED = "not_distinguished"
UNRELIABLE = "unreliable"


@dataclass(frozen=True)
class RpcConfig:
    q: int = 32
    d: int = 16
    alpha: float = 0.95
    manual_threshold: float | None = None
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.d < 1:
            raise ValueError("embedding dimension must be >= 1")
        if self.q <= self.d + 1:
            raise ValueError(
                f"need q >= d + 2 copies for a usable F_(d, q-d) threshold, got q={self.q}, d={self.d}"
            )


@dataclass(frozen=True)
class RapcConfig:
    p: int = 1
    q: int = 32
    d: int = 16
    seed: int = 0

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("need at least one group")
        if self.q <= self.d:
            raise ValueError(f"need q > d, got q={self.q}, d={self.d}")


@dataclass(frozen=True)
class RpcVerdict:
    t2_test: float
    t2_reliability: float
    threshold: float
    outcome: str


def difference_sample(f_g: np.ndarray, f_h: np.ndarray) -> np.ndarray:
    """Row-wise ``f(G_i) - f(H_i)``; both inputs are (q, d)."""
    f_g, f_h = np.asarray(f_g, dtype=float), np.asarray(f_h, dtype=float)
    if f_g.shape != f_h.shape or f_g.ndim != 2:
        raise ValueError(f"embedding blocks must share a (q, d) shape, got {f_g.shape} and {f_h.shape}")
    return f_g - f_h


def hotelling_t2(diffs: np.ndarray) -> float:
    """q * dbar^T S^{-1} dbar for a (q, d) array of paired differences.

    Degenerate covariance: an all-zero S gives 0 when the mean difference is
    zero too and +inf otherwise; a singular or badly conditioned S is ridged
    by ``RIDGE * (trace(S)/d + RIDGE_FLOOR)`` before the Cholesky solve.
    """
    x = np.asarray(diffs, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    q, d = x.shape
    if q < 2:
        raise ValueError("need at least two difference vectors")
    if not np.isfinite(x).all():
        raise ValueError("differences contain NaN or infinite values")
    dbar = x.mean(axis=0)
    s = np.cov(x, rowvar=False, ddof=1).reshape(d, d)
    scale = float(np.abs(x).max())
    if float(np.abs(s).max()) <= (_ZERO_TOL * scale) ** 2:
        return 0.0 if float(np.abs(dbar).max()) <= _ZERO_TOL * scale else math.inf
    chol = None
    try:
        chol = np.linalg.cholesky(s)
        diag = np.diag(chol)
        if (diag.max() / diag.min()) ** 2 > MAX_CONDITION:
            chol = None
    except np.linalg.LinAlgError:
        pass
    if chol is None:
        ridge = RIDGE * (np.trace(s) / d + RIDGE_FLOOR)
        chol = np.linalg.cholesky(s + ridge * np.eye(d))
    z = np.linalg.solve(chol, dbar)
    return max(0.0, float(q * (z @ z)))


def rpc_threshold(cfg: RpcConfig) -> float:
    """(q-1) d / (q-d) * F_{d, q-d}(alpha), or the manual override."""
    if cfg.manual_threshold is not None:
        return float(cfg.manual_threshold)
    q, d = cfg.q, cfg.d
    return (q - 1) * d / (q - d) * f_quantile(d, q - d, cfg.alpha)


def decide(t2_test: float, t2_reliability: float, threshold: float) -> RpcVerdict:
    if t2_reliability >= threshold:
        outcome = UNRELIABLE
    elif t2_test > threshold:
        outcome = DISTINGUISHED
    else:
        outcome = NOT_DISTINGUISHED
    return RpcVerdict(t2_test, t2_reliability, threshold, outcome)


def rpc_decide(f_g: np.ndarray, f_h: np.ndarray, f_gpi: np.ndarray, cfg: RpcConfig) -> RpcVerdict:
    """Major procedure (G vs H) plus reliability check (G vs G^pi) on (q, d) blocks."""
    for name, block in (("G", f_g), ("H", f_h), ("G_pi", f_gpi)):
        if np.shape(block) != (cfg.q, cfg.d):
            raise ValueError(f"role {name}: expected ({cfg.q}, {cfg.d}) embeddings, got {np.shape(block)}")
    t2_test = hotelling_t2(difference_sample(f_g, f_h))
    t2_rel = hotelling_t2(difference_sample(f_g, f_gpi))
    return decide(t2_test, t2_rel, rpc_threshold(cfg))


def rapc_threshold(groups: list[np.ndarray], q: int) -> float:
    """Maximum T^2 over null groups; each group is (2q, d), copy k paired with k+q."""
    stats = []
    for blk in groups:
        blk = np.asarray(blk, dtype=float)
        if blk.shape[0] != 2 * q:
            raise ValueError(f"each group needs {2 * q} copies, got {blk.shape[0]}")
        stats.append(hotelling_t2(blk[:q] - blk[q:]))
    return max(stats)


def rapc_decide(
    f_g: np.ndarray,
    f_h: np.ndarray,
    f_gpi: np.ndarray,
    g_groups: list[np.ndarray],
    h_groups: list[np.ndarray],
    cfg: RapcConfig,
) -> RpcVerdict:
    """RPC with the threshold set to the largest of the 2p within-graph group statistics."""
    if len(g_groups) != cfg.p or len(h_groups) != cfg.p:
        raise ValueError(f"expected {cfg.p} groups per graph, got {len(g_groups)} and {len(h_groups)}")
    for name, block in (("G", f_g), ("H", f_h), ("G_pi", f_gpi)):
        if np.shape(block) != (cfg.q, cfg.d):
            raise ValueError(f"role {name}: expected ({cfg.q}, {cfg.d}) embeddings, got {np.shape(block)}")
    for blk in list(g_groups) + list(h_groups):
        if np.shape(blk) != (2 * cfg.q, cfg.d):
            raise ValueError(f"group blocks must be ({2 * cfg.q}, {cfg.d}), got {np.shape(blk)}")
    threshold = rapc_threshold(list(g_groups) + list(h_groups), cfg.q)
    t2_test = hotelling_t2(difference_sample(f_g, f_h))
    t2_rel = hotelling_t2(difference_sample(f_g, f_gpi))
    return decide(t2_test, t2_rel, threshold)


def cosine_margin_loss(x, y, gamma: float = 0.0) -> float:
    """max(0, cos(x, y) - gamma)."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0 or ny == 0:
        raise ValueError("cosine margin loss is undefined for a zero vector")
    return max(0.0, float(x @ y / (nx * ny)) - gamma)
