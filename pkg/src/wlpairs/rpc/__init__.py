from .fdist import f_quantile
from .stats import (
    RapcConfig,
    RpcConfig,
    RpcVerdict,
    cosine_margin_loss,
    hotelling_t2,
    rapc_decide,
    rpc_decide,
    rpc_threshold,
)

__all__ = [
    "RapcConfig",
    "RpcConfig",
    "RpcVerdict",
    "cosine_margin_loss",
    "f_quantile",
    "hotelling_t2",
    "rapc_decide",
    "rpc_decide",
    "rpc_threshold",
]
