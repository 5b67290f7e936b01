"""共享 fixture：带种子的随机矩序列与常用测度."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from src.free.models import MomentSeq
from src.free.sampling import random_moment_seqs


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def random_seqs() -> list[MomentSeq]:
    """20 个 8 阶随机矩序列（有限原子测度，m₁ > 0）."""
    return random_moment_seqs(seed=7, count=20, order=8)


@pytest.fixture
def catalan() -> MomentSeq:
    """π = π₁ 的矩 1, 1, 2, 5, 14, 42."""
    return MomentSeq.of([1, 1, 2, 5, 14, 42])


@pytest.fixture
def dirac_two() -> MomentSeq:
    return MomentSeq.of([Fraction(2) ** k for k in range(6)])
