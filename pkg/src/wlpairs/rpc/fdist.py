"""F-distribution quantiles from the regularized incomplete beta function."""

from __future__ import annotations

import math

_EPS = 1e-16
_TINY = 1e-300


class ConvergenceError(ArithmeticError):
    pass


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for I_x(a, b) (modified Lentz)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c, d = 1.0, 1.0 - qab * x / qap
    d = 1.0 / (d if abs(d) > _TINY else _TINY)
    h = d
    for m in range(1, 10_000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > _TINY else _TINY)
        c = 1.0 + aa / c
        c = c if abs(c) > _TINY else _TINY
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > _TINY else _TINY)
        c = 1.0 + aa / c
        c = c if abs(c) > _TINY else _TINY
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ConvergenceError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def _log_front(a: float, b: float, x: float, y: float) -> float:
    return math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log(y)


def betainc(a: float, b: float, x: float, y: float | None = None) -> float:
    """Regularized incomplete beta I_x(a, b).

    ``y`` may pass ``1 - x`` computed without cancellation.
    """
    y = 1.0 - x if y is None else y
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(_log_front(a, b, x, y)) * _betacf(a, b, x) / a
    return 1.0 - math.exp(_log_front(a, b, x, y)) * _betacf(b, a, y) / b


def f_cdf(x: float, d1: float, d2: float) -> float:
    if x <= 0.0:
        return 0.0
    den = d1 * x + d2
    return betainc(d1 / 2.0, d2 / 2.0, d1 * x / den, d2 / den)


def f_pdf(x: float, d1: float, d2: float) -> float:
    if x <= 0.0:
        return 0.0
    a, b = d1 / 2.0, d2 / 2.0
    den = d1 * x + d2
    log_pdf = _log_front(a, b, d1 * x / den, d2 / den) - math.log(x)
    return math.exp(log_pdf)


def f_quantile(d1: float, d2: float, alpha: float) -> float:
    """The x with CDF_{F(d1, d2)}(x) = alpha.

    Newton steps on log x, safeguarded by a bisection bracket; relative error
    well below 1e-10 for moderate degrees of freedom.
    """
    if d1 < 1 or d2 < 1:
        raise ValueError("degrees of freedom must be >= 1")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    lo, hi = -1.0, 1.0
    while f_cdf(math.exp(lo), d1, d2) > alpha:
        lo *= 2.0
        if lo < -1400:
            raise ConvergenceError("lower bracket not found")
    while f_cdf(math.exp(hi), d1, d2) < alpha:
        hi *= 2.0
        if hi > 1400:
            raise ConvergenceError("upper bracket not found")
    u = 0.5 * (lo + hi)
    for _ in range(400):
        x = math.exp(u)
        g = f_cdf(x, d1, d2) - alpha
        if g > 0:
            hi = u
        else:
            lo = u
        slope = f_pdf(x, d1, d2) * x
        nxt = u - g / slope if slope > 0 else 0.5 * (lo + hi)
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - u) < 1e-15 * max(1.0, abs(u)) or hi - lo < 1e-15:
            return math.exp(nxt)
        u = nxt
    raise ConvergenceError(f"F quantile did not converge (d1={d1}, d2={d2}, alpha={alpha})")
