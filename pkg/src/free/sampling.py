"""带种子的随机矩序列：有限原子测度的精确矩.

原子位置与权重都取小分母有理数，因而生成的序列一定是
半直线上某个概率测度的矩（Hankel 矩阵自动半正定），且 m₁ > 0。
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from src.free.models import MomentSeq


def random_moment_seq(
    rng: np.random.Generator, order: int, *, max_atoms: int = 4
) -> MomentSeq:
    """随机有限原子测度的矩 m₀..m_order."""
    atom_count = int(rng.integers(1, max_atoms + 1))
    atoms = [
        Fraction(int(rng.integers(1, 13)), int(rng.integers(1, 5)))
        for _ in range(atom_count)
    ]
    raw_weights = [int(rng.integers(1, 7)) for _ in range(atom_count)]
    total = sum(raw_weights)
    weights = [Fraction(w, total) for w in raw_weights]
    moments = [
        sum((w * x**k for w, x in zip(weights, atoms)), start=Fraction(0))
        for k in range(order + 1)
    ]
    return MomentSeq(tuple(moments))


def random_moment_seqs(seed: int, count: int, order: int) -> list[MomentSeq]:
    """同一种子下可复现的一批矩序列."""
    rng = np.random.default_rng(seed)
    return [random_moment_seq(rng, order) for _ in range(count)]


def random_rational_series_coeffs(
    rng: np.random.Generator, order: int
) -> list[Fraction]:
    """f₀ = 0、f₁ ≠ 0 的随机有理系数，用于复合逆的交叉校验."""
    coeffs = [Fraction(0)]
    first = 0
    while first == 0:
        first = int(rng.integers(-5, 6))
    coeffs.append(Fraction(first, int(rng.integers(1, 4))))
    coeffs.extend(
        Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5)))
        for _ in range(order - 1)
    )
    return coeffs
