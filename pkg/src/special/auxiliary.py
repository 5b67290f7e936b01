"""辅助函数 f(u) = u·csc u·exp(-u cot u) 与 g(u) = (1 - u cot u)² + u².

u ∈ [0, π)。f 在该区间上严格递增，f(0⁺) = 1/e，f(π⁻) = ∞；
g 满足 g(u) = u·f'(u)/f(u)。实现以 log f 为主，避免 u → π 时溢出。
"""

from __future__ import annotations

import math

from src.special import SpecialFunctionError
from src.special.roots import monotone_root

# 小于该值时改用 log f 的 Taylor 展开 -1 + u²/2 + u⁴/36
_SMALL_U = 1e-4


def _check_u(u: float) -> float:
    u = float(u)
    if not 0.0 <= u < math.pi:
        raise SpecialFunctionError(f"u 必须在 [0, π) 内，实际 u = {u}")
    return u


def log_f(u: float) -> float:
    """log f(u) = log(u/sin u) - u·cot u；log f(0) = -1."""
    u = _check_u(u)
    if u < _SMALL_U:
        u2 = u * u
        return -1.0 + u2 / 2.0 + u2 * u2 / 36.0
    return math.log(u / math.sin(u)) - u / math.tan(u)


def f_aux(u: float) -> float:
    """f(u)；溢出时返回 inf."""
    try:
        return math.exp(log_f(u))
    except OverflowError:
        return math.inf


def g_aux(u: float) -> float:
    u = _check_u(u)
    if u == 0.0:
        return 0.0
    c = 1.0 - u / math.tan(u)
    return c * c + u * u


def log_f_derivative(u: float) -> float:
    """(log f)'(u) = g(u)/u."""
    u = _check_u(u)
    if u < _SMALL_U:
        return u + u**3 / 9.0
    return g_aux(u) / u


def f_derivative(u: float) -> float:
    """f'(u) = f(u)·g(u)/u."""
    return f_aux(u) * log_f_derivative(u)


def f_inverse(y: float) -> float:
    """f⁻¹(y)，y >= 1/e；f⁻¹(1/e) = 0.

    在 [0, π - δ] 上对 log f(u) - log y 做单调求根，δ 逐步减半直到夹逼成立，
    最后用 (log f)' = g/u 做一步 Newton 修正。

    Raises:
        SpecialFunctionError: y < 1/e 或 y 非有限。
    """
    y = float(y)
    if not math.isfinite(y) or y <= 0:
        raise SpecialFunctionError(f"f⁻¹ 需要有限正数: {y}")
    target = math.log(y)
    if target < -1.0 - 1e-12:
        raise SpecialFunctionError(f"f⁻¹ 要求 y >= 1/e，实际 y = {y}")
    if target <= -1.0 + 1e-15:
        return 0.0

    delta = 0.5
    hi = math.pi - delta
    while log_f(hi) <= target:
        delta /= 2.0
        hi = math.pi - delta
        if hi >= math.pi:
            raise SpecialFunctionError(f"f⁻¹({y}) 超出双精度可表示范围")

    return monotone_root(
        lambda u: log_f(u) - target,
        0.0,
        hi,
        slope=log_f_derivative,
    )
