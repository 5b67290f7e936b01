"""数据模型：矩序列与累积量序列."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from src.series.scalar import (
    MAX_ORDER,
    Backend,
    Scalar,
    SeriesError,
    backend_of,
    coerce,
)


class TransformError(ValueError):
    """变换 / 卷积的定义域条件被违反."""


class CumulantKind(str, Enum):
    """累积量种类."""

    FREE = "free"  # 𝓡 在 0 处的展开系数
    BOOLEAN = "boolean"  # η 在 0 处的展开系数


@dataclass(frozen=True, slots=True)
class MomentSeq:
    """半直线上规范化测度的矩 m₀ = 1, m₁, …, m_p."""

    m: tuple[Scalar, ...]
    # ⊞ / ⊠ 无穷可分标记：允许 t < 1 的 ⊞ 幂与非整数 ⊠ 幂
    boxplus_divisible: bool = field(default=False, compare=False)
    boxtimes_divisible: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.m) < 2:
            raise TransformError("矩序列至少需要 m₀ 与 m₁")
        if len(self.m) - 1 > MAX_ORDER:
            raise TransformError(f"矩序列阶数超过上限 {MAX_ORDER}")
        try:
            backends = {backend_of(v) for v in self.m}
        except SeriesError as e:
            raise TransformError(str(e)) from e
        if len(backends) != 1:
            raise TransformError("矩序列的所有分量必须属于同一后端")
        if self.m[0] != 1:
            raise TransformError(f"m₀ 必须为 1，实际为 {self.m[0]}")

    @classmethod
    def of(
        cls,
        values: list[object] | tuple[object, ...],
        *,
        boxplus_divisible: bool = False,
        boxtimes_divisible: bool = False,
    ) -> MomentSeq:
        """从 (m₀, m₁, …) 构造，int / Fraction 走精确后端."""
        backend = (
            Backend.FLOAT
            if any(isinstance(v, float) for v in values)
            else Backend.EXACT
        )
        return cls(
            tuple(coerce(v, backend) for v in values),
            boxplus_divisible=boxplus_divisible,
            boxtimes_divisible=boxtimes_divisible,
        )

    @property
    def order(self) -> int:
        return len(self.m) - 1

    @property
    def backend(self) -> Backend:
        return backend_of(self.m[0])

    @property
    def mean(self) -> Scalar:
        return self.m[1]

    def __getitem__(self, k: int) -> Scalar:
        return self.m[k]

    def truncate(self, order: int) -> MomentSeq:
        if order > self.order:
            raise TransformError(
                f"矩序列只有 {self.order} 阶，无法取到 {order} 阶"
            )
        return MomentSeq(
            self.m[: order + 1],
            boxplus_divisible=self.boxplus_divisible,
            boxtimes_divisible=self.boxtimes_divisible,
        )

    def require_positive_mean(self) -> None:
        """乘法类运算要求 m₁ > 0（排除 δ₀）."""
        if self.m[1] <= 0:
            raise TransformError(f"m₁ must be > 0（实际 m₁ = {self.m[1]}）")


@dataclass(frozen=True, slots=True)
class CumulantSeq:
    """自由累积量 κ₁..κ_p 或布尔累积量 β₁..β_p."""

    kind: CumulantKind
    values: tuple[Scalar, ...]

    @property
    def order(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> Scalar:
        """按数学下标取值：self[1] 为 κ₁."""
        if n < 1 or n > len(self.values):
            raise IndexError(f"累积量下标越界: {n}")
        return self.values[n - 1]
