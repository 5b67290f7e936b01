"""单调函数求根：brentq 夹逼 + 一步 Newton 修正."""

from __future__ import annotations

import logging
from collections.abc import Callable

from scipy.optimize import brentq

from src.special import SpecialFunctionError

logger = logging.getLogger(__name__)

ROOT_XTOL = 1e-12


def monotone_root(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    slope: Callable[[float], float] | None = None,
    xtol: float = ROOT_XTOL,
) -> float:
    """求 fn 在 [lo, hi] 内的唯一零点.

    Args:
        fn: 在区间上单调的函数，两端异号。
        lo, hi: 夹逼区间。
        slope: fn 的导数；给出时在 brentq 结果上再做一步 Newton 修正。
        xtol: brentq 的绝对容差。

    Raises:
        SpecialFunctionError: 两端同号（区间内无根）。
    """
    f_lo, f_hi = fn(lo), fn(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise SpecialFunctionError(
            f"区间 [{lo}, {hi}] 两端同号 ({f_lo:.3e}, {f_hi:.3e})，无法夹逼"
        )
    root = brentq(fn, lo, hi, xtol=xtol, rtol=4 * 2.220446049250313e-16)
    if slope is not None:
        d = slope(root)
        if d != 0:
            polished = root - fn(root) / d
            if lo <= polished <= hi:
                root = polished
    logger.debug("monotone_root [%g, %g] -> %.17g", lo, hi, root)
    return float(root)
