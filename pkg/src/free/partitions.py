"""组合 oracle：非交叉划分与区间划分的显式枚举.

自由累积量与矩的关系：m_n = Σ_{π∈NC(n)} Π_{B∈π} κ_{|B|}；
布尔累积量与矩的关系：m_n = Σ_{π∈Int(n)} Π_{B∈π} β_{|B|}。

这里只用于测试与 verify 的交叉校验（枚举规模为 Catalan 数 / 2^{n-1}），
级数路径才是主路径。
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator, Sequence
from functools import lru_cache
from itertools import combinations

from src.free.models import MomentSeq
from src.series.scalar import Scalar

Block = tuple[int, ...]
BlockType = tuple[int, ...]  # 块大小的降序多重集


def noncrossing_partitions(elements: Sequence[int]) -> Iterator[list[Block]]:
    """枚举有序元素列表上的全部非交叉划分.

    包含首元素的块 {a₁ < a₂ < … < a_k} 把其余元素切成若干段，
    各段内部独立地做非交叉划分，段与段之间不能相连。
    """
    if not elements:
        yield []
        return
    first, rest = elements[0], tuple(elements[1:])
    for size in range(len(rest) + 1):
        for chosen in combinations(range(len(rest)), size):
            block = (first, *(rest[i] for i in chosen))
            cuts = (-1, *chosen, len(rest))
            segments = [rest[cuts[j] + 1 : cuts[j + 1]] for j in range(len(cuts) - 1)]
            for parts in _product_of_partitions(segments):
                yield [block, *parts]


def _product_of_partitions(segments: list[tuple[int, ...]]) -> Iterator[list[Block]]:
    if not segments:
        yield []
        return
    for head in noncrossing_partitions(segments[0]):
        for tail in _product_of_partitions(segments[1:]):
            yield head + tail


def interval_partitions(n: int) -> Iterator[list[Block]]:
    """枚举 {1..n} 的区间划分（即 n 的有序拆分）."""
    for cut_count in range(n):
        for cuts in combinations(range(1, n), cut_count):
            bounds = (0, *cuts, n)
            yield [
                tuple(range(bounds[j] + 1, bounds[j + 1] + 1))
                for j in range(len(bounds) - 1)
            ]


def _block_type(partition: list[Block]) -> BlockType:
    return tuple(sorted((len(b) for b in partition), reverse=True))


@lru_cache(maxsize=None)
def noncrossing_type_counts(n: int) -> dict[BlockType, int]:
    """按块型统计 NC(n)；计数总和为第 n 个 Catalan 数."""
    return dict(Counter(_block_type(p) for p in noncrossing_partitions(range(1, n + 1))))


@lru_cache(maxsize=None)
def interval_type_counts(n: int) -> dict[BlockType, int]:
    """按块型统计区间划分；计数总和为 2^{n-1}."""
    return dict(Counter(_block_type(p) for p in interval_partitions(n)))


def _moment_sum(counts: dict[BlockType, int], cumulants: Sequence[Scalar]) -> Scalar:
    total = cumulants[0] * 0
    for block_type, count in counts.items():
        term = cumulants[0] * 0 + count
        for size in block_type:
            term *= cumulants[size - 1]
        total += term
    return total


def moments_via_noncrossing(kappa: Sequence[Scalar]) -> MomentSeq:
    """自由累积量 κ₁..κ_p → 矩，按非交叉划分求和."""
    return MomentSeq.of(
        [1] + [_moment_sum(noncrossing_type_counts(n), kappa) for n in range(1, len(kappa) + 1)]
    )


def moments_via_intervals(beta: Sequence[Scalar]) -> MomentSeq:
    """布尔累积量 β₁..β_p → 矩，按区间划分求和."""
    return MomentSeq.of(
        [1] + [_moment_sum(interval_type_counts(n), beta) for n in range(1, len(beta) + 1)]
    )
