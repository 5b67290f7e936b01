"""矩序列与各类变换之间的换算（全部以截断级数表示）.

约定（z 为形式变量）：
- Ψ(z) = Σ_{k≥1} m_k z^k，M(z) = 1 + Ψ(z)
- S(z) = (1+z)Ψ⁻¹(z)/z，Σ(z) = S(z/(1-z))
- G(1/w) = w·M(w)，R(z) = zG⁻¹(z) - 1 = z𝓡(z)，𝓡 的系数即自由累积量
- η(z) = Ψ/(1+Ψ)，其系数即布尔累积量

G 只以 G(1/w) = w·M(w) 这一形式级数出现，本模块不做复平面求值，
从而保持精确后端；复值计算放在 special 模块。
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from src.free.models import CumulantKind, CumulantSeq, MomentSeq, TransformError
from src.series import TruncSeries, compose, mul, recip, revert
from src.series.scalar import Backend, Scalar

logger = logging.getLogger(__name__)

# Hankel 半正定判定的特征值阈值
HANKEL_TOLERANCE = 1e-9


def _z_over_one_minus_z(order: int, backend: Backend) -> TruncSeries:
    """z/(1-z) = z + z² + …，order >= 1."""
    return TruncSeries.geometric(1, order - 1, backend).shift()


def _z_over_one_plus_z(order: int, backend: Backend) -> TruncSeries:
    """z/(1+z) = z - z² + …，order >= 1."""
    return TruncSeries.geometric(-1, order - 1, backend).shift()


def _moments_from_psi(psi: TruncSeries, order: int) -> MomentSeq:
    return MomentSeq((psi._one(), *psi.coeffs[1 : order + 1]))


# ── Ψ 与 Ψ⁻¹ ─────────────────────────────────────────────────────


def psi_from_moments(m: MomentSeq) -> TruncSeries:
    """Ψ(z) = m₁z + … + m_p z^p."""
    return TruncSeries((m[0] * 0, *m.m[1:]), m.backend)


def psi_inverse(m: MomentSeq) -> TruncSeries:
    """Ψ⁻¹ 的截断级数；b₁ = 1/m₁，b₂ = -m₂/m₁³.

    Raises:
        TransformError: m₁ <= 0。
    """
    m.require_positive_mean()
    return revert(psi_from_moments(m))


# ── S 与 Σ ───────────────────────────────────────────────────────


def s_from_moments(m: MomentSeq) -> TruncSeries:
    """S(z) = (1+z)Ψ⁻¹(z)/z，阶数 p-1.

    常数项 s₀ = 1/m₁，一次项 s₁ = -Var/m₁³。
    """
    h = psi_inverse(m).unshift()
    if h.order == 0:
        return h
    return h + h.shift().truncate(h.order)


def sigma_from_moments(m: MomentSeq) -> TruncSeries:
    """Σ(z) = S(z/(1-z))，σ₀ = s₀，σ₁ = s₁."""
    s = s_from_moments(m)
    if s.order == 0:
        return s
    return compose(s, _z_over_one_minus_z(s.order, s.backend))


def moments_from_s(s: TruncSeries, p: int | None = None) -> MomentSeq:
    """由 S 级数反推矩：Ψ⁻¹(z) = z·S(z)/(1+z)，再求复合逆.

    Args:
        s: S 变换的截断级数（阶数 q）。
        p: 需要的矩阶数，默认 q+1，不能超过 q+1。

    Raises:
        TransformError: s₀ <= 0 或 p 超出可恢复范围。
    """
    if s[0] <= 0:
        raise TransformError(f"S 变换要求 s₀ > 0（实际 {s[0]}）")
    p = s.order + 1 if p is None else p
    if p < 1 or p > s.order + 1:
        raise TransformError(f"{s.order} 阶 S 级数最多恢复 {s.order + 1} 阶矩")
    one_plus_z = TruncSeries.of([1, 1] + [0] * (s.order - 1), s.backend)
    h = mul(s, recip(one_plus_z.truncate(s.order)))
    psi = revert(h.shift().truncate(p))
    return _moments_from_psi(psi, p)


def moments_from_sigma(sigma: TruncSeries, p: int | None = None) -> MomentSeq:
    """由 Σ 级数反推矩：S(z) = Σ(z/(1+z))."""
    if sigma.order == 0:
        return moments_from_s(sigma, p)
    s = compose(sigma, _z_over_one_plus_z(sigma.order, sigma.backend))
    return moments_from_s(s, p)


# ── 𝓡 与自由累积量 ───────────────────────────────────────────────


def r_from_moments(m: MomentSeq) -> TruncSeries:
    """𝓡 级数（z⁰..z^{p-1} 处为 κ₁..κ_p）.

    经由 G(1/w) = w·M(w) 的复合逆：z/[G(1/·)]⁻¹(z) = 1 + z𝓡(z)。
    """
    h = psi_from_moments(m)._add_scalar(1).shift()  # w·M(w)，阶数 p+1
    k = recip(revert(h).unshift())  # 1 + z𝓡(z)，阶数 p
    return (k - 1).unshift()


def r_transform(m: MomentSeq) -> TruncSeries:
    """R(z) = z𝓡(z)."""
    return r_from_moments(m).shift()


def moments_from_r(r: TruncSeries) -> MomentSeq:
    """由 𝓡 级数（阶数 q）恢复 q+1 阶矩."""
    k = r.shift()._add_scalar(1)  # 1 + z𝓡(z)
    g_inverse = recip(k).shift()  # [G(1/·)]⁻¹(z) = z/(1 + z𝓡(z))
    h = revert(g_inverse)  # w·M(w)
    return MomentSeq((h._one(), *h.coeffs[2:]))


def free_cumulants(m: MomentSeq) -> CumulantSeq:
    """自由累积量 κ_k = 𝓡 的第 k-1 个系数."""
    return CumulantSeq(CumulantKind.FREE, r_from_moments(m).coeffs)


def moments_from_free_cumulants(
    kappa: CumulantSeq | Sequence[object],
) -> MomentSeq:
    """自由累积量 → 矩（级数主路径；非交叉划分求和仅作测试 oracle）."""
    values = _cumulant_values(kappa, CumulantKind.FREE)
    return moments_from_r(TruncSeries.of(values))


# ── η 与布尔累积量 ───────────────────────────────────────────────


def boolean_eta(m: MomentSeq) -> TruncSeries:
    """η = Ψ/(1+Ψ)，η(0) = 0."""
    psi = psi_from_moments(m)
    return mul(psi, recip(psi._add_scalar(1)))


def moments_from_eta(eta: TruncSeries) -> MomentSeq:
    """由 η 恢复矩：M = 1/(1-η)."""
    if eta[0] != 0:
        raise TransformError("η 级数的常数项必须为 0")
    moments = recip(1 - eta)
    return MomentSeq(moments.coeffs)


def boolean_cumulants(m: MomentSeq) -> CumulantSeq:
    return CumulantSeq(CumulantKind.BOOLEAN, boolean_eta(m).coeffs[1:])


def moments_from_boolean_cumulants(
    beta: CumulantSeq | Sequence[object],
) -> MomentSeq:
    values = _cumulant_values(beta, CumulantKind.BOOLEAN)
    return moments_from_eta(TruncSeries.of([0, *values]))


def _cumulant_values(
    seq: CumulantSeq | Sequence[object], kind: CumulantKind
) -> list[object]:
    if isinstance(seq, CumulantSeq):
        if seq.kind is not kind:
            raise TransformError(
                f"需要 {kind.value} 累积量，得到 {seq.kind.value}"
            )
        return list(seq.values)
    values = list(seq)
    if not values:
        raise TransformError("累积量序列不能为空")
    return values


# ── 校验 ──────────────────────────────────────────────────────────


def s_r_functional_check(m: MomentSeq, *, tol: float = 1e-9) -> bool:
    """检查 z = R(z·S(z))（截断级数意义下）.

    精确后端做逐系数相等比较；浮点后端允许 tol 的绝对误差。
    """
    lhs = compose(r_transform(m), s_from_moments(m).shift())
    if lhs.exact:
        return lhs.is_identity()
    target = TruncSeries.identity(lhs.order, Backend.FLOAT)
    return all(abs(a - b) <= tol for a, b in zip(lhs.coeffs, target.coeffs))


def hankel_min_eigenvalue(values: Sequence[Scalar], size: int) -> float:
    """Hankel 矩阵 [values_{i+j}]_{i,j<size} 的最小特征值（浮点）."""
    if size < 1 or 2 * size - 1 > len(values):
        raise TransformError(
            f"{len(values)} 个分量不足以构成 {size} 阶 Hankel 矩阵"
        )
    matrix = np.array(
        [[float(values[i + j]) for j in range(size)] for i in range(size)]
    )
    return float(np.linalg.eigvalsh(matrix)[0])


def is_measure_like(m: MomentSeq, *, tol: float = HANKEL_TOLERANCE) -> bool:
    """可选的测度有效性检查：所有可行尺寸的 Hankel 矩阵半正定."""
    for size in range(1, m.order // 2 + 2):
        eigenvalue = hankel_min_eigenvalue(m.m, size)
        if eigenvalue < -tol:
            logger.debug("Hankel 检查失败: size=%d λ_min=%.3e", size, eigenvalue)
            return False
    return True
