"""中间幂的缓存：Proxy 模式.

同一测度在不同实验模式之间会重复用到 ρ^{⊠n}、ρ^{⊞n} 等中间结果，
缓存层对相同的 (测度, 运算, 幂次, 阶数) 直接返回已算出的精确矩序列。
LRU 淘汰策略控制内存占用（高阶精确有理数的分子分母可能很长）。
"""

from __future__ import annotations

import logging
from collections import OrderedDict
from collections.abc import Callable

from src.free.models import MomentSeq

logger = logging.getLogger(__name__)

CacheKey = tuple[str, str, int, int]


class MomentCache:
    """精确矩序列缓存（LRU）."""

    def __init__(self, max_size: int = 256) -> None:
        """初始化缓存.

        Args:
            max_size: 最大缓存条数。
        """
        if max_size < 1:
            raise ValueError(f"缓存容量必须 >= 1: {max_size}")
        self._max_size = max_size
        self._cache: OrderedDict[CacheKey, MomentSeq] = OrderedDict()
        self._hits = 0
        self._misses = 0

    def get(self, key: CacheKey) -> MomentSeq | None:
        entry = self._cache.get(key)
        if entry is None:
            self._misses += 1
            return None
        # 命中，移到末尾（最近使用）
        self._cache.move_to_end(key)
        self._hits += 1
        logger.debug("缓存命中: %s (hits=%d)", key, self._hits)
        return entry

    def put(self, key: CacheKey, value: MomentSeq) -> None:
        while len(self._cache) >= self._max_size:
            evicted_key, _ = self._cache.popitem(last=False)
            logger.debug("缓存淘汰: %s", evicted_key)
        self._cache[key] = value
        self._cache.move_to_end(key)

    def get_or_compute(
        self, key: CacheKey, compute: Callable[[], MomentSeq]
    ) -> MomentSeq:
        """命中则返回缓存值，否则计算并写入."""
        cached = self.get(key)
        if cached is not None:
            return cached
        value = compute()
        self.put(key, value)
        return value

    @property
    def stats(self) -> dict[str, int]:
        """返回缓存统计信息."""
        return {
            "size": len(self._cache),
            "hits": self._hits,
            "misses": self._misses,
            "max_size": self._max_size,
        }
