"""恒等式与无穷可分性的有限阶证据."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from src.free.convolution import dilate
from src.free.models import MomentSeq
from src.free.transforms import (
    HANKEL_TOLERANCE,
    free_cumulants,
    hankel_min_eigenvalue,
    moments_from_free_cumulants,
    s_from_moments,
)
from src.limits.laws import LimitError, y_cumulants
from src.series.scalar import check_order

logger = logging.getLogger(__name__)


def shifted_cumulant_check(p: int) -> bool:
    """由平移后的累积量 κ_n = (n+1)ⁿ/(n+1)! 精确重现 m_n = (2n+1)^{n-1}/n!.

    平移累积量即 𝔶₁ 的 κ_{n+1}，对应 𝓡_ρ(z) = (𝓡_𝔶(z) - 1)/z。
    """
    check_order(p)
    kappa = y_cumulants(Fraction(1), p + 1)[1:]
    moments = moments_from_free_cumulants(kappa)
    expected = [
        Fraction((2 * n + 1) ** (n - 1), math.factorial(n)) for n in range(1, p + 1)
    ]
    ok = list(moments.m[1:]) == expected
    logger.debug("shifted_cumulant_check p=%d: %s", p, ok)
    return ok


def dilation_identity_check(m: MomentSeq, c: Fraction | int) -> bool:
    """S_{D_c ρ} = S_ρ/c（精确逐项比较）."""
    c = Fraction(c)
    lhs = s_from_moments(dilate(m, c))
    rhs = s_from_moments(m).scale(1 / c)
    return lhs.coeffs == rhs.coeffs


@dataclass(frozen=True, slots=True)
class IdEvidence:
    """平移自由累积量 (κ₂, κ₃, …) 的 Hankel 检查结果."""

    depth: int
    sizes: tuple[int, ...]
    min_eigenvalues: tuple[float, ...]
    tolerance: float

    @property
    def min_eigenvalue(self) -> float:
        return min(self.min_eigenvalues)

    @property
    def passed(self) -> bool:
        """所有尺寸的最小特征值都不低于 -tolerance."""
        return self.min_eigenvalue >= -self.tolerance


def id_evidence(
    m: MomentSeq, depth: int, *, tol: float = HANKEL_TOLERANCE
) -> IdEvidence:
    """⊞ 无穷可分性的有限阶证据.

    若 ρ 是 ⊞ 无穷可分的，κ_{n+2} 是 Lévy 测度的矩，
    因此 (κ₂, κ₃, …) 的 Hankel 矩阵半正定。尺寸 s 需要 κ 到 2s 阶，
    只检查阶数允许的尺寸 1..min(depth, p/2)。

    Raises:
        LimitError: depth < 1 或阶数 < depth + 2。
    """
    if depth < 1:
        raise LimitError(f"depth 必须 >= 1: {depth}")
    if m.order < depth + 2:
        raise LimitError(
            f"id_evidence 要求阶数 >= depth + 2 = {depth + 2}，实际 {m.order}"
        )
    shifted = free_cumulants(m).values[1:]
    sizes = tuple(range(1, min(depth, m.order // 2) + 1))
    eigenvalues = tuple(hankel_min_eigenvalue(shifted, size) for size in sizes)
    logger.debug("id_evidence: sizes=%s λ_min=%s", sizes, eigenvalues)
    return IdEvidence(
        depth=depth, sizes=sizes, min_eigenvalues=eigenvalues, tolerance=tol
    )
