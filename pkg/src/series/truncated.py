"""截断形式幂级数 TruncSeries 及其运算.

一个 TruncSeries 保存 z^0 .. z^p 的系数（p 为截断阶），
所有运算结果的截断阶取操作数的最小值。
对象不可变，所有运算都是纯函数，可在并发任务之间自由共享。

核心运算：
- add / mul / recip：系数运算（Cauchy 乘积、递推求倒数）
- compose：Horner 形式复合，要求内层常数项为 0
- revert：Newton 迭代（每步精度翻倍）求复合逆
- exp_series / log_series / pow_series：由导数递推
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from src.series.scalar import (
    Backend,
    Scalar,
    SeriesError,
    backend_of,
    coerce,
    rational_power,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class TruncSeries:
    """截断到 p 阶的形式幂级数."""

    coeffs: tuple[Scalar, ...]
    backend: Backend

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise SeriesError("级数至少需要常数项")
        for c in self.coeffs:
            if backend_of(c) is not self.backend:
                raise SeriesError(
                    f"系数 {c!r} 与级数后端 {self.backend.value} 不一致"
                )

    # ── 构造 ──────────────────────────────────────────────────

    @classmethod
    def of(
        cls, coeffs: Iterable[object], backend: Backend | None = None
    ) -> TruncSeries:
        """从任意数值序列构造；未指定后端时按首个系数推断."""
        values = list(coeffs)
        if not values:
            raise SeriesError("级数至少需要常数项")
        if backend is None:
            backend = (
                Backend.FLOAT
                if any(isinstance(v, float) for v in values)
                else Backend.EXACT
            )
        return cls(tuple(coerce(v, backend) for v in values), backend)

    @classmethod
    def constant(
        cls, value: object, order: int, backend: Backend = Backend.EXACT
    ) -> TruncSeries:
        return cls.of([value] + [0] * order, backend)

    @classmethod
    def identity(
        cls, order: int, backend: Backend = Backend.EXACT
    ) -> TruncSeries:
        """级数 z."""
        return cls.of([0, 1] + [0] * (order - 1), backend).truncate(order)

    @classmethod
    def geometric(
        cls, ratio: object, order: int, backend: Backend = Backend.EXACT
    ) -> TruncSeries:
        """1/(1 - r z) = Σ r^k z^k."""
        r = coerce(ratio, backend)
        return cls(tuple(r**k for k in range(order + 1)), backend)

    # ── 基本属性 ──────────────────────────────────────────────

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return self.backend is Backend.EXACT

    def __getitem__(self, k: int) -> Scalar:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _zero(self) -> Scalar:
        return Fraction(0) if self.exact else 0.0

    def _one(self) -> Scalar:
        return Fraction(1) if self.exact else 1.0

    def truncate(self, order: int) -> TruncSeries:
        if order < 0:
            raise SeriesError(f"截断阶不能为负: {order}")
        if order > self.order:
            raise SeriesError(
                f"无法把 {self.order} 阶级数延拓到 {order} 阶"
            )
        return TruncSeries(self.coeffs[: order + 1], self.backend)

    def to_float(self) -> TruncSeries:
        return TruncSeries(tuple(float(c) for c in self.coeffs), Backend.FLOAT)

    def is_identity(self) -> bool:
        """是否恰为级数 z（截断意义下）."""
        return all(
            c == (1 if k == 1 else 0) for k, c in enumerate(self.coeffs)
        )

    # ── 线性运算 ──────────────────────────────────────────────

    def scale(self, c: object) -> TruncSeries:
        """标量乘 c·f."""
        c = coerce(c, self.backend)
        return TruncSeries(tuple(c * a for a in self.coeffs), self.backend)

    def scale_arg(self, c: object) -> TruncSeries:
        """自变量伸缩 f(c z)."""
        c = coerce(c, self.backend)
        return TruncSeries(
            tuple(a * c**k for k, a in enumerate(self.coeffs)), self.backend
        )

    def shift(self) -> TruncSeries:
        """乘以 z，阶数加一."""
        return TruncSeries((self._zero(), *self.coeffs), self.backend)

    def unshift(self) -> TruncSeries:
        """除以 z，要求常数项为 0，阶数减一."""
        if self.coeffs[0] != 0:
            raise SeriesError("常数项非零的级数不能除以 z")
        if self.order < 1:
            raise SeriesError("0 阶级数不能除以 z")
        return TruncSeries(self.coeffs[1:], self.backend)

    def derivative(self) -> TruncSeries:
        if self.order < 1:
            raise SeriesError("0 阶级数没有可用的导数系数")
        return TruncSeries(
            tuple(k * a for k, a in enumerate(self.coeffs) if k > 0),
            self.backend,
        )

    # ── 运算符 ────────────────────────────────────────────────

    def __add__(self, other: object) -> TruncSeries:
        if isinstance(other, TruncSeries):
            return add(self, other)
        return self._add_scalar(other)

    __radd__ = __add__

    def __neg__(self) -> TruncSeries:
        return TruncSeries(tuple(-a for a in self.coeffs), self.backend)

    def __sub__(self, other: object) -> TruncSeries:
        if isinstance(other, TruncSeries):
            return add(self, -other)
        return self._add_scalar(-coerce(other, self.backend))

    def __rsub__(self, other: object) -> TruncSeries:
        return (-self)._add_scalar(other)

    def __mul__(self, other: object) -> TruncSeries:
        if isinstance(other, TruncSeries):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> TruncSeries:
        if isinstance(other, TruncSeries):
            return mul(self, recip(other))
        c = coerce(other, self.backend)
        if c == 0:
            raise SeriesError("除数为 0")
        return self.scale(1 / c)

    def _add_scalar(self, c: object) -> TruncSeries:
        c = coerce(c, self.backend)
        return TruncSeries((self.coeffs[0] + c, *self.coeffs[1:]), self.backend)


def _check_backends(a: TruncSeries, b: TruncSeries) -> None:
    if a.backend is not b.backend:
        raise SeriesError(
            f"后端不一致: {a.backend.value} vs {b.backend.value}"
        )


def _convolve(a: Sequence[Scalar], b: Sequence[Scalar], order: int) -> list[Scalar]:
    return [
        sum((a[i] * b[n - i] for i in range(n + 1)), start=a[0] * 0)
        for n in range(order + 1)
    ]


# ── 运算 ────────────────────────────────────────────────────────


def add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """系数相加，阶数取较小者."""
    _check_backends(a, b)
    order = min(a.order, b.order)
    return TruncSeries(
        tuple(a[k] + b[k] for k in range(order + 1)), a.backend
    )


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy 乘积，截断到较小的阶."""
    _check_backends(a, b)
    order = min(a.order, b.order)
    return TruncSeries(tuple(_convolve(a.coeffs, b.coeffs, order)), a.backend)


def recip(a: TruncSeries) -> TruncSeries:
    """乘法逆 1/a，要求 a₀ ≠ 0.

    递推 b₀ = 1/a₀，b_n = -(1/a₀)·Σ_{k=1..n} a_k b_{n-k}。
    """
    a0 = a[0]
    if a0 == 0:
        raise SeriesError("常数项为 0 的级数不可求倒数")
    inv0 = 1 / a0
    b: list[Scalar] = [inv0]
    for n in range(1, a.order + 1):
        acc = sum((a[k] * b[n - k] for k in range(1, n + 1)), start=a0 * 0)
        b.append(-inv0 * acc)
    return TruncSeries(tuple(b), a.backend)


def compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """复合 f∘g，要求 g₀ = 0；Horner 形式 f₀ + g(f₁ + g(f₂ + …))."""
    _check_backends(f, g)
    if g[0] != 0:
        raise SeriesError("内层级数的常数项必须为 0")
    order = min(f.order, g.order)
    g = g.truncate(order)
    result = TruncSeries.constant(f[order], order, f.backend)
    for k in range(order - 1, -1, -1):
        result = mul(result, g)._add_scalar(f[k])
    return result


def revert(f: TruncSeries) -> TruncSeries:
    """复合逆 g，使 f∘g = g∘f = z（截断意义下）.

    Newton 迭代 g ← g - (f∘g - z)/(f'∘g)，每步正确阶数翻倍。
    要求 f₀ = 0 且 f₁ ≠ 0。
    """
    if f[0] != 0:
        raise SeriesError("求复合逆要求常数项为 0")
    if f.order < 1 or f[1] == 0:
        raise SeriesError("求复合逆要求一次项系数非零")

    p = f.order
    zero = f._zero()
    # f' 的 z^p 系数未知；补 0 不影响结果，因为残差至少从 z² 开始
    slope_base = TruncSeries(f.derivative().coeffs + (zero,), f.backend)
    # g = z/f₁ 已经在 mod z² 意义下正确
    g = TruncSeries((zero, f._one() / f[1]), f.backend)
    correct = 2
    while correct < p + 1:
        correct = min(2 * correct, p + 1)
        n = correct - 1
        g = TruncSeries(g.coeffs + (zero,) * (n - g.order), f.backend)
        residual = compose(f.truncate(n), g) - TruncSeries.identity(n, f.backend)
        slope = compose(slope_base.truncate(n), g)
        g = g - mul(residual, recip(slope))
        logger.debug("revert: Newton 步完成，正确阶数 %d/%d", correct, p + 1)
    return g


def exp_series(f: TruncSeries) -> TruncSeries:
    """exp(f)，要求 f₀ = 0；由 e' = f'·e 递推."""
    if f[0] != 0:
        raise SeriesError("exp_series 要求常数项为 0")
    e: list[Scalar] = [f._one()]
    for n in range(1, f.order + 1):
        acc = sum((k * f[k] * e[n - k] for k in range(1, n + 1)), start=f._zero())
        e.append(acc / n)
    return TruncSeries(tuple(e), f.backend)


def log_series(f: TruncSeries) -> TruncSeries:
    """log(f).

    精确后端要求 f₀ = 1（保证系数仍为有理数）；浮点后端要求 f₀ > 0。
    由 f·l' = f' 递推。
    """
    f0 = f[0]
    if f.exact:
        if f0 != 1:
            raise SeriesError("精确后端的 log_series 要求常数项为 1")
        l0: Scalar = Fraction(0)
    else:
        if f0 <= 0:
            raise SeriesError("log_series 要求常数项为正")
        l0 = math.log(f0)
    logs: list[Scalar] = [l0]
    for n in range(1, f.order + 1):
        acc = sum((k * logs[k] * f[n - k] for k in range(1, n)), start=f._zero())
        logs.append((n * f[n] - acc) / (n * f0))
    return TruncSeries(tuple(logs), f.backend)


def pow_series(f: TruncSeries, t: object) -> TruncSeries:
    """实数幂 f^t = f₀^t · exp(t·log(f/f₀))，要求 f₀ > 0."""
    f0 = f[0]
    if f0 <= 0:
        raise SeriesError("pow_series 要求常数项为正")
    t = coerce(t, f.backend)
    lead = rational_power(f0, t)
    return exp_series(log_series(f.scale(1 / f0)).scale(t)).scale(lead)


def lagrange_revert(f: TruncSeries) -> TruncSeries:
    """按 Lagrange 留数公式逐项求复合逆，仅作 revert 的交叉校验.

    第 k 个系数为 [z^{k-1}] (z/f(z))^k / k。逐项做 k 次乘法，复杂度远高于 Newton 迭代。
    """
    if f[0] != 0 or f.order < 1 or f[1] == 0:
        raise SeriesError("Lagrange 反演要求 f₀ = 0 且 f₁ ≠ 0")
    ratio = recip(f.unshift())  # z/f(z)，阶数 p-1
    coeffs: list[Scalar] = [f._zero()]
    power = TruncSeries.constant(1, ratio.order, f.backend)
    for k in range(1, f.order + 1):
        power = mul(power, ratio)
        coeffs.append(power[k - 1] / k)
    return TruncSeries(tuple(coeffs), f.backend)
