"""有限 n 收敛实验：自由 / 布尔极限定理及交换次序的推论.

四种模式（ρ 的 s₀ = 1/m₁，D_c 为伸缩）：
- free:              D_{s₀ⁿ/n}((ρ^{⊠n})^{⊞n})          → 𝔶_α
- boolean:           D_{s₀ⁿ⁻¹/n}((ρ^{⊠n-1})^{⊎n})      → 𝔰_α
- exchanged-free:    D_{s₀ⁿ/nⁿ}((ρ^{⊞n})^{⊠n})         → 𝔶_α
- exchanged-boolean: D_{s₀ⁿ/(n-1)ⁿ}((ρ^{⊎n-1})^{⊠n})   → 𝔰_α

所有有限 n 的矩都以精确有理数计算，误差是精确差值的浮点渲染。
布尔模式的伸缩常数保持一阶矩为 1（m₁ = 1 时与 s₀ⁿ/n 一致）；
n = 1 行按 ρ^{⊠0} = δ₁ 处理，交换次序的布尔模式要求 n >= 2。
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from src.free.convolution import boxplus_power, boxtimes_power, dilate, uplus_power
from src.free.models import MomentSeq
from src.limits.cache import MomentCache
from src.limits.laws import LawSpec, LimitError, SLimit, YLimit, alpha_of, s0_of
from src.series.scalar import check_order

logger = logging.getLogger(__name__)

DEFAULT_NS = (1, 2, 4, 8, 16, 32, 64, 128, 256)
DEFAULT_EXPERIMENT_ORDER = 4


class ExperimentMode(str, Enum):
    FREE = "free"
    BOOLEAN = "boolean"
    EXCHANGED_FREE = "exchanged-free"
    EXCHANGED_BOOLEAN = "exchanged-boolean"

    @property
    def is_free(self) -> bool:
        return self in (ExperimentMode.FREE, ExperimentMode.EXCHANGED_FREE)


@dataclass(frozen=True, slots=True)
class ExperimentRow:
    """第 n 步的第 k 阶矩与极限矩的比较."""

    n: int
    k: int
    moment: Fraction
    limit: Fraction
    abs_error: float
    rel_error: float

    @property
    def exact_error(self) -> Fraction:
        return self.moment - self.limit


@dataclass(slots=True)
class ExperimentReport:
    """一次实验的全部行（按 (n, k) 排序）与元数据."""

    mode: ExperimentMode
    law: str
    alpha: Fraction
    s0: Fraction
    order: int
    rows: list[ExperimentRow] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)

    def column(self, k: int) -> list[ExperimentRow]:
        """第 k 阶矩的所有行，按 n 递增."""
        return [row for row in self.rows if row.k == k]

    def abs_errors(self, k: int) -> list[float]:
        return [row.abs_error for row in self.column(k)]


# ── 单个 n 的精确计算 ─────────────────────────────────────────────


def dilation_constant(mode: ExperimentMode, s0: Fraction, n: int) -> Fraction:
    """各模式第 n 步的伸缩常数."""
    if mode is ExperimentMode.FREE:
        return s0**n / n
    if mode is ExperimentMode.BOOLEAN:
        return s0 ** (n - 1) / n
    if mode is ExperimentMode.EXCHANGED_FREE:
        return s0**n / Fraction(n) ** n
    if n < 2:
        raise LimitError("exchanged-boolean 模式要求 n >= 2（ρ^{⊎0} = δ₀ 没有 S 变换）")
    return s0**n / Fraction(n - 1) ** n


def _delta_one(p: int) -> MomentSeq:
    return MomentSeq((Fraction(1),) * (p + 1))


def _inner_power(
    mode: ExperimentMode,
    rho: MomentSeq,
    n: int,
    cache: MomentCache | None,
    law_key: str,
) -> MomentSeq:
    """内层幂：ρ^{⊠n}、ρ^{⊠n-1}、ρ^{⊞n} 或 ρ^{⊎n-1}."""
    if mode is ExperimentMode.FREE:
        stage, power, compute = "boxtimes", n, lambda: boxtimes_power(rho, n)
    elif mode is ExperimentMode.BOOLEAN:
        if n == 1:
            return _delta_one(rho.order)
        stage, power, compute = "boxtimes", n - 1, lambda: boxtimes_power(rho, n - 1)
    elif mode is ExperimentMode.EXCHANGED_FREE:
        stage, power, compute = "boxplus", n, lambda: boxplus_power(rho, n)
    else:
        stage, power, compute = "uplus", n - 1, lambda: uplus_power(rho, n - 1)
    if cache is None:
        return compute()
    return cache.get_or_compute((law_key, stage, power, rho.order), compute)


def finite_n_moments(
    mode: ExperimentMode,
    rho: MomentSeq,
    n: int,
    *,
    cache: MomentCache | None = None,
    law_key: str = "",
) -> tuple[MomentSeq, Fraction]:
    """第 n 步的精确矩序列及所用伸缩常数."""
    if n < 1:
        raise LimitError(f"n 必须 >= 1: {n}")
    s0 = s0_of(rho)
    c = dilation_constant(mode, s0, n)
    inner = _inner_power(mode, rho, n, cache, law_key)
    if mode is ExperimentMode.FREE:
        outer = boxplus_power(inner, n)
    elif mode is ExperimentMode.BOOLEAN:
        outer = uplus_power(inner, n)
    else:
        outer = boxtimes_power(inner, n)
    return dilate(outer, c), c


def _finite_n_job(
    mode: ExperimentMode, rho: MomentSeq, n: int
) -> tuple[int, MomentSeq, Fraction]:
    """进程池任务（模块级函数，可被 pickle）."""
    moments, c = finite_n_moments(mode, rho, n)
    return n, moments, c


# ── 实验 ──────────────────────────────────────────────────────────


def _check_ns(ns: Sequence[int]) -> list[int]:
    values = list(ns)
    if not values:
        raise LimitError("n 列表不能为空")
    for n in values:
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise LimitError(f"n 必须是正整数: {n!r}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise LimitError(f"n 列表必须严格递增: {values}")
    return values


def _build_rows(
    n: int, moments: MomentSeq, limit: MomentSeq, p: int
) -> list[ExperimentRow]:
    rows = []
    for k in range(1, p + 1):
        diff = moments[k] - limit[k]
        rows.append(
            ExperimentRow(
                n=n,
                k=k,
                moment=moments[k],
                limit=limit[k],
                abs_error=float(abs(diff)),
                rel_error=float(abs(diff) / abs(limit[k])),
            )
        )
    return rows


def run_experiment(
    mode: ExperimentMode | str,
    law: LawSpec,
    ns: Sequence[int] = DEFAULT_NS,
    p: int = DEFAULT_EXPERIMENT_ORDER,
    *,
    max_workers: int = 1,
    cache: MomentCache | None = None,
) -> ExperimentReport:
    """对 ns 中每个 n 计算有限 n 矩并与极限矩比较.

    Args:
        mode: 实验模式。
        law: 输入测度 ρ。
        ns: 严格递增的正整数列表。
        p: 比较的最高阶矩。
        max_workers: > 1 时用进程池并行计算各 n（此时不使用缓存）。
        cache: 中间幂缓存，仅串行模式使用。

    Raises:
        LimitError: 测度退化（α = 0）、n 列表非法或阶数不足。
    """
    mode = ExperimentMode(mode)
    check_order(p)
    values = _check_ns(ns)
    if mode is ExperimentMode.EXCHANGED_BOOLEAN and values[0] < 2:
        raise LimitError("exchanged-boolean 模式要求所有 n >= 2")

    base = law.moments(max(p, 2))
    alpha = alpha_of(base)
    if alpha <= 0:
        raise LimitError(
            f"{law.to_expr()} 是退化测度（α = Var/m₁² = {alpha}）："
            "极限定理要求非退化（nondegenerate）且二阶矩有限（finite second moment）"
        )
    s0 = s0_of(base)
    rho = base.truncate(p) if base.order > p else base
    limit_law = YLimit(alpha) if mode.is_free else SLimit(alpha)
    limit = limit_law.moments(p)
    logger.info(
        "实验 %s: law=%s α=%s s₀=%s p=%d ns=%s",
        mode.value, law.to_expr(), alpha, s0, p, values,
    )

    results: list[tuple[int, MomentSeq, Fraction]]
    if max_workers > 1 and len(values) > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            futures = [pool.submit(_finite_n_job, mode, rho, n) for n in values]
            results = [f.result() for f in futures]
    else:
        results = []
        for n in values:
            moments, c = finite_n_moments(
                mode, rho, n, cache=cache, law_key=law.to_expr()
            )
            results.append((n, moments, c))
            logger.debug("n=%d 完成", n)

    rows: list[ExperimentRow] = []
    dilations: dict[str, str] = {}
    for n, moments, c in results:
        rows.extend(_build_rows(n, moments, limit, p))
        dilations[str(n)] = str(c)
    rows.sort(key=lambda row: (row.n, row.k))

    metadata: dict[str, Any] = {
        "law": law.to_expr(),
        "mode": mode.value,
        "alpha": str(alpha),
        "s0": str(s0),
        "order": p,
        "limit_law": limit_law.to_expr(),
        "dilation": dilations,
        "convention": "sigma0 = s0 = 1/m1",
    }
    if mode is ExperimentMode.BOOLEAN:
        metadata["n1_convention"] = "rho^(boxtimes 0) = delta_1"
    if cache is not None:
        logger.debug("缓存统计: %s", cache.stats)
    return ExperimentReport(
        mode=mode,
        law=law.to_expr(),
        alpha=alpha,
        s0=s0,
        order=p,
        rows=rows,
        metadata=metadata,
    )


def free_limit_experiment(
    law: LawSpec, ns: Sequence[int] = DEFAULT_NS, p: int = DEFAULT_EXPERIMENT_ORDER, **kwargs: Any
) -> ExperimentReport:
    return run_experiment(ExperimentMode.FREE, law, ns, p, **kwargs)


def boolean_limit_experiment(
    law: LawSpec, ns: Sequence[int] = DEFAULT_NS, p: int = DEFAULT_EXPERIMENT_ORDER, **kwargs: Any
) -> ExperimentReport:
    return run_experiment(ExperimentMode.BOOLEAN, law, ns, p, **kwargs)


def exchanged_experiment(
    law: LawSpec,
    mode: str,
    ns: Sequence[int] | None = None,
    p: int = DEFAULT_EXPERIMENT_ORDER,
    **kwargs: Any,
) -> ExperimentReport:
    """交换次序的推论；mode 为 "free" 或 "boolean"（后者默认从 n = 2 开始）."""
    modes = {
        "free": ExperimentMode.EXCHANGED_FREE,
        "boolean": ExperimentMode.EXCHANGED_BOOLEAN,
    }
    if mode not in modes:
        raise LimitError(f"exchanged 模式只能是 free 或 boolean: {mode!r}")
    if ns is None:
        ns = DEFAULT_NS if mode == "free" else tuple(n for n in DEFAULT_NS if n >= 2)
    return run_experiment(modes[mode], law, ns, p, **kwargs)
