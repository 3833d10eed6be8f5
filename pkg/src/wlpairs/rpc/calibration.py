"""Monte-Carlo checks of the paired-comparison procedures on Gaussian embeddings.

Every trial draws from its own ``default_rng([seed, trial])`` stream, so
results do not depend on how trials are batched.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .stats import RapcConfig, RpcConfig, hotelling_t2, rapc_decide, rpc_decide, rpc_threshold


@dataclass(frozen=True)
class TrialSummary:
    trials: int
    outcomes: Counter
    major_rejections: int  # trials with t2_test > threshold, reliability ignored

    def rate(self, outcome: str) -> float:
        return self.outcomes[outcome] / self.trials

    @property
    def major_rate(self) -> float:
        return self.major_rejections / self.trials


def rpc_trials(
    trials: int,
    cfg: RpcConfig,
    h_shift: float = 0.0,
    reliability_shift: float = 0.0,
    seed: int = 0,
) -> TrialSummary:
    """Unit-variance embeddings; H and G_pi means moved by the given number of SDs per coordinate."""
    outcomes: Counter = Counter()
    major = 0
    thr = rpc_threshold(cfg)
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        f_g = rng.standard_normal((cfg.q, cfg.d))
        f_h = rng.standard_normal((cfg.q, cfg.d)) + h_shift
        f_gpi = rng.standard_normal((cfg.q, cfg.d)) + reliability_shift
        v = rpc_decide(f_g, f_h, f_gpi, cfg)
        outcomes[v.outcome] += 1
        major += v.t2_test > thr
    return TrialSummary(trials, outcomes, major)


def rapc_trials(trials: int, cfg: RapcConfig, h_shift: float = 0.0, seed: int = 0) -> TrialSummary:
    outcomes: Counter = Counter()
    major = 0
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        f_g = rng.standard_normal((cfg.q, cfg.d))
        f_h = rng.standard_normal((cfg.q, cfg.d)) + h_shift
        f_gpi = rng.standard_normal((cfg.q, cfg.d))
        g_groups = [rng.standard_normal((2 * cfg.q, cfg.d)) for _ in range(cfg.p)]
        h_groups = [rng.standard_normal((2 * cfg.q, cfg.d)) + h_shift for _ in range(cfg.p)]
        v = rapc_decide(f_g, f_h, f_gpi, g_groups, h_groups, cfg)
        outcomes[v.outcome] += 1
        major += v.t2_test > v.threshold
    return TrialSummary(trials, outcomes, major)


def null_t2_sample(trials: int, q: int, d: int, seed: int = 0) -> np.ndarray:
    """T^2 values for Gaussian differences with zero mean."""
    return np.array(
        [hotelling_t2(np.random.default_rng([seed, t]).standard_normal((q, d))) for t in range(trials)]
    )
