"""自适应求积：对 scipy.integrate.quad 的薄封装.

QUADPACK 的 Gauss–Kronrod 规则不在端点取值，
cot/csc 在 u ∈ {0, π} 处的可去奇点因此不会被直接求值。
"""

from __future__ import annotations

import logging
import warnings
from collections.abc import Callable
from typing import Any

from scipy.integrate import IntegrationWarning, quad

logger = logging.getLogger(__name__)

DEFAULT_EPSABS = 1e-10
DEFAULT_EPSREL = 1e-12
DEFAULT_LIMIT = 200


def integrate(
    fn: Callable[[float], float],
    a: float,
    b: float,
    *,
    epsabs: float = DEFAULT_EPSABS,
    epsrel: float = DEFAULT_EPSREL,
    limit: int = DEFAULT_LIMIT,
) -> float:
    """∫_a^b fn(u) du；误差估计超出目标时记录 warning 而不抛出."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, error = quad(fn, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit)
    for w in caught:
        logger.warning("求积告警 [%g, %g]: %s", a, b, w.message)
    if error > max(epsabs, epsrel * abs(value)) * 10:
        logger.warning(
            "求积误差估计 %.3e 超出目标 (value=%.17g)", error, value
        )
    logger.debug("integrate [%g, %g] = %.17g ± %.1e", a, b, value, error)
    return float(value)


def integrate_complex(
    fn: Callable[[float], complex],
    a: float,
    b: float,
    **kwargs: Any,
) -> complex:
    """复值被积函数：实部、虚部分别求积."""
    real = integrate(lambda u: fn(u).real, a, b, **kwargs)
    imag = integrate(lambda u: fn(u).imag, a, b, **kwargs)
    return complex(real, imag)
