"""自由加法 ⊞、自由乘法 ⊠、布尔加法 ⊎ 卷积及其（分数）幂与伸缩.

每种卷积都走其线性化变换：⊞ 走 𝓡（自由累积量相加），
⊠ 走 S（S 变换相乘），⊎ 走 η（布尔累积量相加）。
幂运算另有 S / Σ 伸缩的第二条路径（*_via_s / *_via_sigma），
供测试与 verify 做一致性比对。
"""

from __future__ import annotations

import logging
from enum import Enum

from src.free.models import MomentSeq, TransformError
from src.free.transforms import (
    boolean_eta,
    moments_from_eta,
    moments_from_r,
    moments_from_s,
    moments_from_sigma,
    r_from_moments,
    s_from_moments,
    sigma_from_moments,
)
from src.series import TruncSeries, exp_series, mul, pow_series
from src.series.scalar import Backend, Scalar, SeriesError, coerce

logger = logging.getLogger(__name__)


class ConvOp(str, Enum):
    """卷积种类标签."""

    BOXPLUS = "boxplus"
    BOXTIMES = "boxtimes"
    UPLUS = "uplus"


def _require_same_order(a: MomentSeq, b: MomentSeq) -> None:
    if a.order != b.order:
        raise TransformError(f"阶数不一致: {a.order} vs {b.order}")


def _power(a: MomentSeq, t: object) -> Scalar:
    try:
        return coerce(t, a.backend)
    except SeriesError as e:
        raise TransformError(str(e)) from e


def _with_flags(m: MomentSeq, *, boxplus: bool, boxtimes: bool) -> MomentSeq:
    return MomentSeq(m.m, boxplus_divisible=boxplus, boxtimes_divisible=boxtimes)


# ── 二元卷积 ──────────────────────────────────────────────────────


def box_plus(a: MomentSeq, b: MomentSeq) -> MomentSeq:
    """a ⊞ b：𝓡 相加."""
    _require_same_order(a, b)
    result = moments_from_r(r_from_moments(a) + r_from_moments(b))
    return _with_flags(
        result,
        boxplus=a.boxplus_divisible and b.boxplus_divisible,
        boxtimes=False,
    )


def box_times(a: MomentSeq, b: MomentSeq) -> MomentSeq:
    """a ⊠ b：S 相乘，要求两者 m₁ > 0."""
    _require_same_order(a, b)
    s = mul(s_from_moments(a), s_from_moments(b))
    result = moments_from_s(s, a.order)
    return _with_flags(
        result,
        boxplus=False,
        boxtimes=a.boxtimes_divisible and b.boxtimes_divisible,
    )


def uplus(a: MomentSeq, b: MomentSeq) -> MomentSeq:
    """a ⊎ b：η 相加（布尔累积量相加）."""
    _require_same_order(a, b)
    return moments_from_eta(boolean_eta(a) + boolean_eta(b))


def convolve(op: ConvOp, a: MomentSeq, b: MomentSeq) -> MomentSeq:
    """按标签分派到具体卷积."""
    handlers = {
        ConvOp.BOXPLUS: box_plus,
        ConvOp.BOXTIMES: box_times,
        ConvOp.UPLUS: uplus,
    }
    return handlers[ConvOp(op)](a, b)


# ── 幂与伸缩 ──────────────────────────────────────────────────────


def boxplus_power(a: MomentSeq, t: object) -> MomentSeq:
    """a^{⊞t}：κ ↦ tκ.

    一般测度要求 t >= 1；带 ⊞ 无穷可分标记的测度允许任意 t > 0。
    """
    t = _power(a, t)
    if t <= 0 or (t < 1 and not a.boxplus_divisible):
        raise TransformError(
            f"⊞ 幂要求 t >= 1（⊞ 无穷可分测度要求 t > 0），实际 t = {t}"
        )
    result = moments_from_r(r_from_moments(a).scale(t))
    return _with_flags(result, boxplus=a.boxplus_divisible, boxtimes=False)


def boxplus_power_via_s(a: MomentSeq, t: object) -> MomentSeq:
    """a^{⊞t} 的第二条路径：S ↦ (1/t)·S(z/t)，要求 m₁ > 0."""
    t = _power(a, t)
    if t <= 0:
        raise TransformError(f"⊞ 幂要求 t > 0，实际 t = {t}")
    s = s_from_moments(a).scale_arg(1 / t).scale(1 / t)
    return moments_from_s(s, a.order)


def uplus_power(a: MomentSeq, t: object) -> MomentSeq:
    """a^{⊎t}：β ↦ tβ，任意 t >= 0（t = 0 得到 δ₀）."""
    t = _power(a, t)
    if t < 0:
        raise TransformError(f"⊎ 幂要求 t >= 0，实际 t = {t}")
    return moments_from_eta(boolean_eta(a).scale(t))


def uplus_power_via_sigma(a: MomentSeq, t: object) -> MomentSeq:
    """a^{⊎t} 的第二条路径：Σ ↦ (1/t)·Σ(z/t)，要求 m₁ > 0 且 t > 0."""
    t = _power(a, t)
    if t <= 0:
        raise TransformError(f"Σ 路径要求 t > 0，实际 t = {t}")
    sigma = sigma_from_moments(a).scale_arg(1 / t).scale(1 / t)
    return moments_from_sigma(sigma, a.order)


def boxtimes_power(a: MomentSeq, t: object) -> MomentSeq:
    """a^{⊠t}：S ↦ S^t.

    一般测度只允许正整数 t；非整数 t 需要 ⊠ 无穷可分标记。
    精确后端下 s₀^t = m₁^{-t} 必须是有理数。
    """
    t = _power(a, t)
    if t <= 0 or (int(t) != t and not a.boxtimes_divisible):
        raise TransformError(
            f"⊠ 幂要求正整数 t（⊠ 无穷可分测度允许任意 t > 0），实际 t = {t}"
        )
    if t == 1:
        return a
    try:
        s = pow_series(s_from_moments(a), t)
    except SeriesError as e:
        raise TransformError(str(e)) from e
    result = moments_from_s(s, a.order)
    return _with_flags(result, boxplus=False, boxtimes=a.boxtimes_divisible)


def dilate(a: MomentSeq, c: object) -> MomentSeq:
    """伸缩 D_c：m_k ↦ c^k·m_k，要求 c > 0."""
    c = _power(a, c)
    if c <= 0:
        raise TransformError(f"伸缩系数必须 > 0，实际 c = {c}")
    return MomentSeq(
        tuple(mk * c**k for k, mk in enumerate(a.m)),
        boxplus_divisible=a.boxplus_divisible,
        boxtimes_divisible=a.boxtimes_divisible,
    )


# ── 恒等式检查 ────────────────────────────────────────────────────


def _y_law(alpha: Scalar, order: int) -> MomentSeq:
    """S = exp(-αz) 的测度，两类无穷可分标记均打开."""
    s = exp_series(TruncSeries.of([0, -alpha] + [0] * (order - 2)))
    return _with_flags(moments_from_s(s, order), boxplus=True, boxtimes=True)


def power_identity_check(alpha: object, t: object, p: int) -> bool:
    """检查 𝔶_α^{⊞t} = D_t(𝔶_α^{⊠1/t}) 与 𝔶_α^{⊠t} = D_t(𝔶_α^{⊞1/t}).

    两侧都以精确有理数计算到 p 阶，逐项相等才返回 True。
    """
    alpha = coerce(alpha, Backend.EXACT)
    t = coerce(t, Backend.EXACT)
    if alpha <= 0 or t <= 0:
        raise TransformError("α 与 t 都必须 > 0")
    if p < 2:
        raise TransformError("恒等式检查至少需要 2 阶")
    y = _y_law(alpha, p)
    first = boxplus_power(y, t).m == dilate(boxtimes_power(y, 1 / t), t).m
    second = boxtimes_power(y, t).m == dilate(boxplus_power(y, 1 / t), t).m
    logger.debug("power_identity_check α=%s t=%s: %s / %s", alpha, t, first, second)
    return first and second
