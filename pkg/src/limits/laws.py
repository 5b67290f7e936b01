"""极限实验的输入测度：Strategy 模式的 LawSpec.

每种测度只需给出任意阶的精确矩序列与可回读的文本表示；
带显式密度的测度（自由 Poisson、α = 1 的 𝔰）另外提供 density(x)。
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction

from src.free.models import MomentSeq, TransformError
from src.free.transforms import moments_from_free_cumulants, moments_from_sigma
from src.series import TruncSeries, exp_series
from src.series.scalar import check_order
from src.special.densities import free_poisson_density, s_density_at


class LimitError(ValueError):
    """极限实验的前提不满足（退化测度、阶数不足、参数越界）."""


def _positive(name: str, value: Fraction) -> Fraction:
    if value <= 0:
        raise LimitError(f"{name} 必须 > 0，实际 {name} = {value}")
    return value


def _fmt(value: Fraction) -> str:
    return str(value)


class LawSpec(ABC):
    """测度策略接口."""

    kind: str = ""

    @abstractmethod
    def moments(self, p: int) -> MomentSeq:
        """m₀..m_p（精确有理数）."""

    @abstractmethod
    def to_expr(self) -> str:
        """可被 cli.lawexpr 重新解析的文本表示."""

    @property
    def has_density(self) -> bool:
        return False

    def density(self, x: float) -> float:
        raise LimitError(f"{self.to_expr()} 没有可用的密度表达式")


@dataclass(frozen=True, slots=True)
class FreePoisson(LawSpec):
    """π_t：所有自由累积量都等于 t."""

    t: Fraction
    kind = "free-poisson"

    def __post_init__(self) -> None:
        _positive("t", self.t)

    def moments(self, p: int) -> MomentSeq:
        check_order(p)
        m = moments_from_free_cumulants([self.t] * p)
        # ⊠ 无穷可分性只对 t >= 1 标记
        return MomentSeq(m.m, boxplus_divisible=True, boxtimes_divisible=self.t >= 1)

    def to_expr(self) -> str:
        return f"free-poisson:t={_fmt(self.t)}"

    @property
    def has_density(self) -> bool:
        return True

    def density(self, x: float) -> float:
        return free_poisson_density(float(self.t), x)


@dataclass(frozen=True, slots=True)
class Dirac(LawSpec):
    """δ_c：m_k = c^k."""

    c: Fraction
    kind = "dirac"

    def __post_init__(self) -> None:
        _positive("c", self.c)

    def moments(self, p: int) -> MomentSeq:
        check_order(p)
        return MomentSeq(
            tuple(self.c**k for k in range(p + 1)),
            boxplus_divisible=True,
            boxtimes_divisible=True,
        )

    def to_expr(self) -> str:
        return f"dirac:c={_fmt(self.c)}"


@dataclass(frozen=True, slots=True)
class RawMoments(LawSpec):
    """显式给出的 m₁, m₂, …（不含 m₀）."""

    values: tuple[Fraction, ...]
    kind = "moments"

    def __post_init__(self) -> None:
        if not self.values:
            raise LimitError("moments 至少需要给出 m₁")

    def moments(self, p: int) -> MomentSeq:
        check_order(p)
        if p > len(self.values):
            raise LimitError(
                f"只给出了 {len(self.values)} 阶矩，无法提供 {p} 阶"
            )
        try:
            return MomentSeq((Fraction(1), *self.values[:p]))
        except TransformError as e:
            raise LimitError(str(e)) from e

    def to_expr(self) -> str:
        return "moments:" + ",".join(_fmt(v) for v in self.values)


@dataclass(frozen=True, slots=True)
class YLimit(LawSpec):
    """自由极限律 𝔶_α."""

    alpha: Fraction
    kind = "y-limit"

    def __post_init__(self) -> None:
        _positive("alpha", self.alpha)

    def moments(self, p: int) -> MomentSeq:
        return y_moments(self.alpha, p)

    def to_expr(self) -> str:
        return f"y-limit:alpha={_fmt(self.alpha)}"


@dataclass(frozen=True, slots=True)
class SLimit(LawSpec):
    """布尔极限律 𝔰_α；α = 1 时有参数化密度."""

    alpha: Fraction
    kind = "s-limit"

    def __post_init__(self) -> None:
        _positive("alpha", self.alpha)

    def moments(self, p: int) -> MomentSeq:
        return s_moments(self.alpha, p)

    def to_expr(self) -> str:
        return f"s-limit:alpha={_fmt(self.alpha)}"

    @property
    def has_density(self) -> bool:
        return self.alpha == 1

    def density(self, x: float) -> float:
        if self.alpha != 1:
            return LawSpec.density(self, x)
        if not 0 < x < math.e:
            return 0.0
        return s_density_at(x)


# ── 参数与极限矩 ──────────────────────────────────────────────────


def alpha_of(m: MomentSeq) -> Fraction:
    """α = Var/m₁² = (m₂ - m₁²)/m₁²."""
    if m.order < 2:
        raise LimitError("计算 α 至少需要 2 阶矩")
    if m.mean <= 0:
        raise LimitError(f"m₁ 必须 > 0，实际 m₁ = {m.mean}")
    return (m[2] - m.mean**2) / m.mean**2


def s0_of(m: MomentSeq) -> Fraction:
    """s₀ = 1/m₁."""
    if m.mean <= 0:
        raise LimitError(f"m₁ 必须 > 0，实际 m₁ = {m.mean}")
    return 1 / m.mean


def y_cumulants(alpha: Fraction, p: int) -> list[Fraction]:
    """κ_n(𝔶_α) = (αn)^{n-1}/n!，n = 1..p."""
    return [
        (alpha * n) ** (n - 1) / math.factorial(n) for n in range(1, p + 1)
    ]


def y_moments(alpha: Fraction | int | str, p: int) -> MomentSeq:
    """𝔶_α 的矩，经自由累积量求得；两类无穷可分标记均打开."""
    alpha = _positive("alpha", Fraction(alpha))
    check_order(p)
    m = moments_from_free_cumulants(y_cumulants(alpha, p))
    return MomentSeq(m.m, boxplus_divisible=True, boxtimes_divisible=True)


def s_moments(alpha: Fraction | int | str, p: int) -> MomentSeq:
    """𝔰_α 的矩：由 Σ = exp(-αz) 经 S、Ψ 换算."""
    alpha = _positive("alpha", Fraction(alpha))
    check_order(p)
    sigma = exp_series(TruncSeries.identity(p - 1).scale(-alpha))
    return moments_from_sigma(sigma, p)


def s_moments_closed_form(p: int) -> MomentSeq:
    """α = 1 时的闭式 m_n = nⁿ/n!."""
    check_order(p)
    return MomentSeq(
        (Fraction(1),)
        + tuple(Fraction(n**n, math.factorial(n)) for n in range(1, p + 1))
    )
