"""verify 子命令的不变量检查集.

每项检查返回 (是否通过, 说明)。检查之间互不依赖，
单项抛出的任何异常都记为失败而不会中断整个检查集。
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.free.convolution import power_identity_check
from src.free.partitions import moments_via_intervals, moments_via_noncrossing
from src.free.sampling import random_moment_seqs, random_rational_series_coeffs
from src.free.transforms import (
    boolean_cumulants,
    free_cumulants,
    moments_from_free_cumulants,
    moments_from_s,
    s_from_moments,
    s_r_functional_check,
    sigma_from_moments,
)
from src.limits.evidence import dilation_identity_check, id_evidence, shifted_cumulant_check
from src.limits.experiments import ExperimentMode, run_experiment
from src.limits.laws import FreePoisson, s_moments, s_moments_closed_form, y_moments
from src.series import TruncSeries, exp_series, lagrange_revert, revert
from src.special.densities import (
    count_local_maxima,
    free_poisson_moment,
    levy_constant,
    levy_moment,
    levy_moment_exact,
    s_density,
    s_density_at,
    s_density_f_form,
    s_density_samples,
    s_moment,
    stieltjes_density,
)
from src.special.lambert import (
    INV_E,
    lambert_residual,
    lambert_w0,
    lambert_w0_complex,
    w0_integral_repr,
    w0_series,
)

logger = logging.getLogger(__name__)

# 划分枚举 oracle 的最高阶（Catalan(10) = 16796）
ORACLE_MAX_ORDER = 10

CheckResult = tuple[bool, str]


@dataclass(frozen=True, slots=True)
class VerifyOptions:
    order: int = 8
    seed: int = 0
    samples: int = 20
    oracle_samples: int = 50
    endpoint_guard: float = 1e-3
    hankel_tolerance: float = 1e-9
    inject_fault: bool = False


@dataclass(frozen=True, slots=True)
class Check:
    name: str
    run: Callable[[VerifyOptions], CheckResult]


# ── 级数与变换 ────────────────────────────────────────────────────


def _check_taylor(opts: VerifyOptions) -> CheckResult:
    seqs = random_moment_seqs(opts.seed, opts.samples, max(opts.order, 2))
    for i, m in enumerate(seqs):
        s = s_from_moments(m)
        if opts.inject_fault and i == 0:
            s = TruncSeries((s[0] + 1, *s.coeffs[1:]), s.backend)
        sigma = sigma_from_moments(m)
        var = m[2] - m[1] ** 2
        s0, s1 = 1 / m[1], -var / m[1] ** 3
        if not (s[0] == sigma[0] == s0 and s[1] == sigma[1] == s1):
            return False, f"样本 {i}: s₀={s[0]} σ₀={sigma[0]} s₁={s[1]} σ₁={sigma[1]}"
    return True, f"{len(seqs)} 个样本 s₀ = σ₀ = 1/m₁, s₁ = σ₁ = -Var/m₁³"


def _check_functional_equation(opts: VerifyOptions) -> CheckResult:
    seqs = random_moment_seqs(opts.seed + 1, opts.samples, opts.order)
    failed = [i for i, m in enumerate(seqs) if not s_r_functional_check(m)]
    if failed:
        return False, f"z = R(zS(z)) 在样本 {failed} 上不成立"
    return True, f"z = R(zS(z)) 精确成立（{len(seqs)} 个样本，p = {opts.order}）"


def _check_revert(opts: VerifyOptions) -> CheckResult:
    rng = np.random.default_rng(opts.seed + 2)
    for i in range(opts.samples):
        f = TruncSeries.of(random_rational_series_coeffs(rng, opts.order))
        if revert(f) != lagrange_revert(f):
            return False, f"样本 {i}: Newton 复合逆与 Lagrange 公式不一致"
    return True, "Newton 复合逆与 Lagrange 公式一致"


def _check_partition_oracles(opts: VerifyOptions) -> CheckResult:
    p = min(opts.order, ORACLE_MAX_ORDER)
    seqs = random_moment_seqs(opts.seed + 3, opts.oracle_samples, p)
    for i, m in enumerate(seqs):
        if moments_via_noncrossing(free_cumulants(m).values) != m:
            return False, f"样本 {i}: 非交叉划分求和与级数路径不一致"
        if moments_via_intervals(boolean_cumulants(m).values) != m:
            return False, f"样本 {i}: 区间划分求和与级数路径不一致"
    return True, f"NC / 区间划分 oracle 一致（p = {p}，{len(seqs)} 个样本）"


def _check_identities(opts: VerifyOptions) -> CheckResult:
    p = max(opts.order, 2)
    for alpha, t in ((Fraction(1), Fraction(2)), (Fraction(3, 2), Fraction(1, 3))):
        if not power_identity_check(alpha, t, p):
            return False, f"幂恒等式在 (α, t) = ({alpha}, {t}) 不成立"
    if not shifted_cumulant_check(opts.order):
        return False, "平移累积量未重现 (2n+1)^{n-1}/n!"
    for m in random_moment_seqs(opts.seed + 4, 5, p):
        for c in (Fraction(2), Fraction(1, 3)):
            if not dilation_identity_check(m, c):
                return False, f"S_{{D_c}} = S/c 在 c = {c} 不成立"
    return True, "幂恒等式、平移累积量、伸缩恒等式均精确成立"


def _check_limit_laws(opts: VerifyOptions) -> CheckResult:
    p = opts.order
    for alpha in (Fraction(1), Fraction(1, 2), Fraction(3)):
        s = exp_series(TruncSeries.identity(p - 1).scale(-alpha))
        if y_moments(alpha, p) != moments_from_s(s, p):
            return False, f"α = {alpha}: 累积量路径与 S = exp(-αz) 路径不一致"
    if s_moments(1, p) != s_moments_closed_form(p):
        return False, "s_moments(1) 与 nⁿ/n! 不一致"
    series = w0_series(p)
    expected = [Fraction(n ** (n - 1), math.factorial(n)) for n in range(1, p + 1)]
    if list(series.coeffs[1:]) != expected:
        return False, "-W₀(-z) 系数不等于 n^{n-1}/n!"
    if list(free_cumulants(y_moments(1, p)).values) != expected:
        return False, "𝔶₁ 的自由累积量不等于 -W₀(-z)/z 的系数"
    return True, "𝔶_α / 𝔰_α 的矩与 W₀ 级数一致"


def _check_experiments(opts: VerifyOptions) -> CheckResult:
    law = FreePoisson(Fraction(1))
    p = min(opts.order, 4)
    for mode in ExperimentMode:
        ns = (2, 4, 8) if mode is ExperimentMode.EXCHANGED_BOOLEAN else (1, 2, 4, 8)
        report = run_experiment(mode, law, ns, p)
        if any(row.exact_error != 0 for row in report.column(1)):
            return False, f"{mode.value}: 一阶矩误差不为 0"
    return True, "四种模式的一阶矩误差恒为 0"


def _check_id_evidence(opts: VerifyOptions) -> CheckResult:
    p = max(opts.order, 5)
    evidence = id_evidence(y_moments(1, p), 3, tol=opts.hankel_tolerance)
    if not evidence.passed:
        return False, f"𝔶₁ 的 Hankel 最小特征值 {evidence.min_eigenvalue:.3e}"
    bad = moments_from_free_cumulants([1, 1, 0, -1])
    if id_evidence(bad, 2, tol=opts.hankel_tolerance).passed:
        return False, "非无穷可分序列未被识别"
    return True, f"𝔶₁ Hankel λ_min = {evidence.min_eigenvalue:.3e}"


# ── 特殊函数 ──────────────────────────────────────────────────────


def _lambert_points(rng: np.random.Generator) -> list[complex]:
    """10⁴ 个取样点：实轴、复平面、切割线两侧与分支点附近."""
    points = [complex(x, 0.0) for x in rng.uniform(-INV_E, 100.0, 4000)]
    points += [complex(re, im) for re, im in rng.uniform(-100.0, 100.0, (4000, 2))]
    for re in rng.uniform(-100.0, -INV_E - 1e-3, 500):
        points += [complex(re, 1e-6), complex(re, -1e-6)]
    radii = 10.0 ** rng.uniform(-10.0, -2.0, 1000)
    angles = rng.uniform(0.0, math.pi, 1000)
    points += [complex(-INV_E + r * math.cos(a), r * math.sin(a)) for r, a in zip(radii, angles)]
    return points


def _check_lambert(opts: VerifyOptions) -> CheckResult:
    rng = np.random.default_rng(opts.seed + 5)
    points = _lambert_points(rng)
    worst = 0.0
    for z in points:
        w = complex(lambert_w0(z.real), 0.0) if z.imag == 0.0 else lambert_w0_complex(z)
        worst = max(worst, lambert_residual(w, z) / max(1.0, abs(z)))
    if worst > 1e-14:
        return False, f"最大相对残差 {worst:.3e}（{len(points)} 个点）"
    return True, f"最大相对残差 {worst:.3e}（{len(points)} 个点）"


def _check_integral_repr(opts: VerifyOptions) -> CheckResult:
    rng = np.random.default_rng(opts.seed + 6)
    points = [complex(x, 0.0) for x in rng.uniform(0.0, 10.0, 10)]
    points += [complex(re, im) for re, im in rng.uniform((-3.0, 0.1), (3.0, 3.0), (10, 2))]
    worst = 0.0
    for z in points:
        direct = lambert_w0_complex(z) / z
        worst = max(worst, abs(w0_integral_repr(z) - direct))
    if worst > 1e-8:
        return False, f"积分表示最大偏差 {worst:.3e}"
    return True, f"积分表示最大偏差 {worst:.3e}（{len(points)} 个点）"


def _check_levy(opts: VerifyOptions) -> CheckResult:
    for alpha in (1.0, 2.0):
        for k in range(5):
            got, want = levy_moment(alpha, k), levy_moment_exact(alpha, k)
            if abs(got - want) > 1e-6 * want:
                return False, f"α={alpha} k={k}: {got} vs {want}"
    b = levy_constant(1.0), levy_constant(2.0)
    if any(abs(v - 1.0) > 1e-6 for v in b):
        return False, f"L-K 常数 b = {b}，与 κ₁ = 1 不符"
    return True, f"Lévy 矩一致；L-K 常数 b(1) = {b[0]:.12f}, b(2) = {b[1]:.12f}"


def _check_s_density(opts: VerifyOptions) -> CheckResult:
    for v in np.linspace(0.05, math.pi - 0.05, 200):
        _, phi = s_density(float(v))
        if abs(phi - s_density_f_form(float(v))) > 1e-10 * max(1.0, phi):
            return False, f"v={v}: 参数形式与 f 形式不一致"
    for k, want in ((0, 1.0), (1, 1.0), (2, 2.0), (3, 4.5)):
        if abs(s_moment(k) - want) > 1e-6:
            return False, f"m_{k}(𝔰) = {s_moment(k)}，期望 {want}"
    guard = opts.endpoint_guard
    for t in np.linspace(0.05, math.e - 0.05, 50):
        got = stieltjes_density(float(t), 1e-7, endpoint_guard=guard)
        if abs(got - s_density_at(float(t))) > 1e-4:
            return False, f"t={t}: Stieltjes 反演 {got} 与参数形式不一致"
    peaks = count_local_maxima([phi for _, phi in s_density_samples(10_000)])
    if peaks < 2:
        return False, f"只找到 {peaks} 个局部极大值"
    return True, f"𝔰 密度一致，质量与矩正确，{peaks} 个局部极大值"


def _check_free_poisson(opts: VerifyOptions) -> CheckResult:
    for t in (0.5, 1.0, 2.0):
        mass = free_poisson_moment(t, 0)
        if abs(mass - 1.0) > 1e-8:
            return False, f"t={t}: 总质量 {mass}"
    for k, catalan in ((1, 1), (2, 2), (3, 5), (4, 14)):
        if abs(free_poisson_moment(1.0, k) - catalan) > 1e-8:
            return False, f"π₁ 的第 {k} 阶矩不是 Catalan 数 {catalan}"
    return True, "自由 Poisson 质量与 Catalan 矩一致"


CHECKS: tuple[Check, ...] = (
    Check("taylor_coefficients", _check_taylor),
    Check("functional_equation", _check_functional_equation),
    Check("revert_vs_lagrange", _check_revert),
    Check("partition_oracles", _check_partition_oracles),
    Check("identities", _check_identities),
    Check("limit_laws", _check_limit_laws),
    Check("experiments_first_moment", _check_experiments),
    Check("id_evidence", _check_id_evidence),
    Check("lambert_residual", _check_lambert),
    Check("lambert_integral", _check_integral_repr),
    Check("levy_measure", _check_levy),
    Check("s_density", _check_s_density),
    Check("free_poisson", _check_free_poisson),
)


def run_checks(opts: VerifyOptions) -> list[tuple[str, bool, str]]:
    """依次运行全部检查，返回 (名称, 是否通过, 说明)."""
    results = []
    for check in CHECKS:
        try:
            passed, detail = check.run(opts)
        except Exception as e:
            logger.warning("检查 %s 抛出异常: %r", check.name, e)
            passed, detail = False, f"{type(e).__name__}: {e}"
        logger.info("%s: %s", check.name, "PASS" if passed else "FAIL")
        results.append((check.name, passed, detail))
    return results
