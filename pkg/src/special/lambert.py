"""Lambert W 函数主分支 W₀：Halley 迭代 + 级数 / 渐近初值.

初值选取：
- 分支点 -1/e 附近：p = √(2(ez+1))，w ≈ -1 + p - p²/3 + 11p³/72
- |z| < 0.3：w ≈ z - z² + 3z³/2
- 原点附近的较大区域：(2,2) 型 Padé 近似
- 右半平面 |z| < 3：log(1 + z)
- 其余：渐近展开 w ≈ L₁ - L₂ + L₂/L₁，L₁ = log z，L₂ = log L₁

复数情形的分支切割为 (-∞, -1/e)；切割线上的点不在定义域内，
取 Im z > 0 的一侧逼近即得到上沿的边界值。
"""

from __future__ import annotations

import cmath
import logging
import math

from src.series import TruncSeries, exp_series, revert
from src.series.scalar import check_order
from src.special import SpecialFunctionError
from src.special.auxiliary import g_aux, log_f
from src.special.quadrature import integrate_complex

logger = logging.getLogger(__name__)

INV_E = math.exp(-1.0)
_MAX_ITER = 64
_STEP_TOL = 2e-15
# 步长停滞在舍入噪声水平时同样视为收敛
_NOISE_TOL = 1e-10


def _branch_point_seed(z: complex) -> complex:
    p = cmath.sqrt(2.0 * (math.e * z + 1.0))
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3


def _pade_seed(z: complex) -> complex:
    num = 12.85106382978723404255 + z * (12.34042553191489361902 + z)
    den = 12.85106382978723404255 + z * (25.19148936170212765957 + 5.0 * z)
    return z * num / den


def _asymptotic_seed(z: complex) -> complex:
    l1 = cmath.log(z)
    l2 = cmath.log(l1)
    return l1 - l2 + l2 / l1


def _seed(z: complex) -> complex:
    if abs(z + INV_E) < 0.3:
        return _branch_point_seed(z)
    if abs(z) < 0.3:
        return z - z * z + 1.5 * z**3
    if -1.0 < z.real < 1.5 and abs(z.imag) < 1.0 and -2.5 * abs(z.imag) - 0.2 < z.real:
        return _pade_seed(z)
    if z.real > 0 and abs(z) < 3.0:
        return cmath.log(1.0 + z)
    return _asymptotic_seed(z)


def _halley(z: complex, w: complex) -> complex:
    """Halley 迭代求 w·e^w = z."""
    last = math.inf
    for step in range(_MAX_ITER):
        ew = cmath.exp(w)
        residual = w * ew - z
        if residual == 0:
            return w
        wp1 = w + 1.0
        if wp1 == 0:
            return w
        dw = residual / (ew * wp1 - (w + 2.0) * residual / (2.0 * wp1))
        w -= dw
        scale = 1.0 + abs(w)
        size = abs(dw)
        if size <= _STEP_TOL * scale or (size >= last and size <= _NOISE_TOL * scale):
            logger.debug("Halley 收敛: z=%s 步数=%d", z, step + 1)
            return w
        last = size
    logger.warning("Halley 未在 %d 步内收敛: z=%s w=%s", _MAX_ITER, z, w)
    return w


def lambert_w0(x: float) -> float:
    """实分支 W₀(x)，x >= -1/e，返回值 >= -1.

    Raises:
        SpecialFunctionError: x < -1/e 或 x 非有限。
    """
    x = float(x)
    if not math.isfinite(x):
        raise SpecialFunctionError(f"W₀ 需要有限实数: {x}")
    if x < -INV_E:
        raise SpecialFunctionError(f"W₀ 的实分支要求 x >= -1/e，实际 x = {x}")
    if x == 0.0:
        return 0.0
    if x + INV_E < 1e-12:
        # 分支点附近 Halley 的分母退化，级数初值已达机器精度
        return _branch_point_seed(complex(x, 0.0)).real
    return _halley(complex(x, 0.0), complex(_seed(complex(x, 0.0)).real, 0.0)).real


def lambert_w0_complex(z: complex) -> complex:
    """复分支 W₀(z)，z 不在分支切割 (-∞, -1/e) 上.

    Raises:
        SpecialFunctionError: z 落在切割线上或非有限。
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise SpecialFunctionError(f"W₀ 需要有限复数: {z}")
    if z.imag == 0.0:
        if z.real < -INV_E:
            raise SpecialFunctionError(
                f"z = {z} 位于分支切割 (-∞, -1/e) 上"
            )
        return complex(lambert_w0(z.real), 0.0)
    return _halley(z, _seed(z))


def lambert_residual(w: complex, z: complex) -> float:
    """|w·e^w - z|."""
    return abs(w * cmath.exp(w) - z)


def w0_series(p: int) -> TruncSeries:
    """-W₀(-z) 的精确系数（z^n 处为 n^{n-1}/n!）.

    -W₀(-z) 是 z·e^{-z} 的复合逆，这里直接用级数复合逆求得。
    """
    check_order(p)
    z_exp_minus_z = exp_series(-TruncSeries.identity(p - 1)).shift()
    return revert(z_exp_minus_z)


def w0_integral_repr(z: complex) -> complex:
    """W₀(z)/z 的积分表示.

        W₀(z)/z = (1/π)∫₀^π g(u)/(z + f(u)) du

    被积函数写成 (g/f)/(1 + z/f)，u → π 时 1/f 以指数速度趋于 0，不会溢出。

    Raises:
        SpecialFunctionError: z 为 <= -1/e 的实数（分母在积分区间内为零）。
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= -INV_E:
        raise SpecialFunctionError(
            f"z = {z} 使被积函数奇异（z 落在 -f 的值域内）"
        )

    def integrand(u: float) -> complex:
        inv_f = math.exp(-log_f(u))
        return g_aux(u) * inv_f / (1.0 + z * inv_f)

    return integrate_complex(integrand, 0.0, math.pi) / math.pi
