"""标量后端：精确有理数（Fraction）与双精度浮点.

所有级数、卷积、极限实验默认走精确后端；
只有在需要超越函数求值（求积、Lambert W）或最终误差报告时才转为浮点。
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from numbers import Rational

# 截断阶的默认值与硬上限（Catalan 规模的组合 oracle 仍可承受）
DEFAULT_ORDER = 8
MAX_ORDER = 24

Scalar = Fraction | float


class SeriesError(ValueError):
    """级数运算的前置条件被违反."""


class Backend(str, Enum):
    """标量后端标签."""

    EXACT = "exact"
    FLOAT = "float"


def backend_of(value: object) -> Backend:
    """判断单个标量所属后端."""
    if isinstance(value, bool):
        raise SeriesError(f"不支持的标量类型: {type(value).__name__}")
    if isinstance(value, Rational):
        return Backend.EXACT
    if isinstance(value, float):
        return Backend.FLOAT
    raise SeriesError(f"不支持的标量类型: {type(value).__name__}")


def coerce(value: object, backend: Backend) -> Scalar:
    """把 int / Fraction / float 规范化到指定后端."""
    if backend is Backend.EXACT:
        if isinstance(value, float):
            raise SeriesError("精确后端不接受浮点标量")
        return Fraction(value)  # type: ignore[arg-type]
    return float(value)  # type: ignore[arg-type]


def check_order(p: int) -> int:
    """校验截断阶 1 <= p <= MAX_ORDER."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise SeriesError(f"截断阶必须是整数: {p!r}")
    if p < 1 or p > MAX_ORDER:
        raise SeriesError(f"截断阶必须在 [1, {MAX_ORDER}] 内: {p}")
    return p


def _integer_root(n: int, k: int) -> int | None:
    """整数 k 次方根；不是完全 k 次方时返回 None."""
    if n < 0:
        return None
    if n < 2:
        return n
    # 整数 Newton 迭代，从上方单调逼近
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x**k == n else None


def rational_power(base: Scalar, t: Scalar) -> Scalar:
    """计算 base**t.

    浮点后端直接求幂；精确后端要求结果仍为有理数，
    即 t 为整数，或 base 的分子分母恰为 t 分母次完全幂。

    Raises:
        SeriesError: base <= 0（非整数 t）或结果不是有理数。
    """
    if isinstance(base, float) or isinstance(t, float):
        if base <= 0:
            raise SeriesError(f"实数幂要求底数为正: {base}")
        return float(base) ** float(t)

    t = Fraction(t)
    base = Fraction(base)
    if t.denominator == 1:
        return base ** int(t)
    if base <= 0:
        raise SeriesError(f"实数幂要求底数为正: {base}")
    num = _integer_root(base.numerator, t.denominator)
    den = _integer_root(base.denominator, t.denominator)
    if num is None or den is None:
        raise SeriesError(
            f"{base}^({t}) 不是有理数，精确后端无法表示"
        )
    return Fraction(num, den) ** t.numerator
