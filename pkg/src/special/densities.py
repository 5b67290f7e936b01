"""密度与 Lévy 测度：𝔶_α 的 Lévy 测度、布尔极限律 𝔰 的参数化密度、
自由 Poisson（Marchenko–Pastur）密度，以及 η 的边界值与 Stieltjes 反演.

积分一律在参数变量（u、v 或 θ）中进行：参数形式的被积函数光滑，
而 x 变量下的密度在支撑端点处（可积地）发散。
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np

from src.special import SpecialFunctionError
from src.special.auxiliary import f_inverse, g_aux, log_f
from src.special.lambert import lambert_w0_complex
from src.special.quadrature import integrate

logger = logging.getLogger(__name__)

# Stieltjes 反演在 0 与 e 附近的保护距离
ENDPOINT_GUARD = 1e-3


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha > 0:
        raise SpecialFunctionError(f"α 必须 > 0，实际 α = {alpha}")
    return alpha


# ── 𝔶_α 的 Lévy 测度 ──────────────────────────────────────────────


def levy_density_y(alpha: float, s: float) -> float:
    """ν(ds)/ds = s·f⁻¹(α/s)/(απ)，s ∈ (0, αe]."""
    alpha = _check_alpha(alpha)
    s = float(s)
    if not 0 < s <= alpha * math.e * (1 + 1e-15):
        raise SpecialFunctionError(f"s 必须在 (0, αe] 内，实际 s = {s}")
    y = max(alpha / s, math.exp(-1.0))
    return s * f_inverse(y) / (alpha * math.pi)


def levy_moment(alpha: float, k: int) -> float:
    """∫ s^k ν(ds)，换元 s = α/f(u) 后在 u ∈ (0, π) 上求积.

    (α^{k+1}/π)·∫₀^π g(u)/f(u)^{k+2} du，理论值 α^{k+1}(k+2)^{k+1}/(k+2)!。
    """
    alpha = _check_alpha(alpha)
    if k < 0:
        raise SpecialFunctionError(f"矩的阶数必须 >= 0: {k}")
    power = k + 2
    value = integrate(lambda u: g_aux(u) * math.exp(-power * log_f(u)), 0.0, math.pi)
    return alpha ** (k + 1) * value / math.pi


def levy_moment_exact(alpha: float, k: int) -> float:
    return alpha ** (k + 1) * (k + 2) ** (k + 1) / math.factorial(k + 2)


def levy_constant(alpha: float) -> float:
    """Lévy–Khintchine 常数 b = ∫ ν(ds)/s = (1/(απ))∫₀^{αe} f⁻¹(α/s) ds.

    直接在 s 变量中求积，α 不被解析地消去；理论值 b = κ₁ = 1，与 α 无关。
    """
    alpha = _check_alpha(alpha)
    top = alpha * math.e

    def integrand(s: float) -> float:
        return f_inverse(max(alpha / s, math.exp(-1.0)))

    return integrate(integrand, 0.0, top, epsabs=1e-11) / (alpha * math.pi)


def levy_samples(alpha: float, grid: int) -> list[tuple[float, float]]:
    """u ∈ [0, π) 上等距取 grid 个点，输出 (s, ν 密度)；u = 0 对应端点 (αe, 0)."""
    alpha = _check_alpha(alpha)
    _check_grid(grid)
    rows = []
    for u in np.linspace(0.0, math.pi, grid, endpoint=False):
        s = alpha * math.exp(-log_f(float(u)))
        rows.append((s, s * float(u) / (alpha * math.pi)))
    return rows


# ── 自由 Poisson ──────────────────────────────────────────────────


def _check_rate(t: float) -> float:
    t = float(t)
    if not t > 0:
        raise SpecialFunctionError(f"自由 Poisson 参数 t 必须 > 0，实际 t = {t}")
    return t


def free_poisson_support(t: float) -> tuple[float, float]:
    t = _check_rate(t)
    root = math.sqrt(t)
    return (1 - root) ** 2, (1 + root) ** 2


def free_poisson_density(t: float, x: float) -> float:
    """绝对连续部分 √(4t - (x-1-t)²)/(2πx)，支撑外为 0."""
    t = _check_rate(t)
    x = float(x)
    if x <= 0:
        return 0.0
    radicand = 4 * t - (x - 1 - t) ** 2
    if radicand <= 0:
        return 0.0
    return math.sqrt(radicand) / (2 * math.pi * x)


def free_poisson_atom(t: float) -> float:
    """x = 0 处的原子质量 max(0, 1 - t)."""
    return max(0.0, 1.0 - _check_rate(t))


def free_poisson_moment(t: float, k: int) -> float:
    """∫ x^k π_t(dx)（k = 0 时含原子）.

    换元 x = 1 + t + 2√t·cos θ：绝对连续部分为 (2t/π)∫₀^π x^{k-1} sin²θ dθ。
    """
    t = _check_rate(t)
    if k < 0:
        raise SpecialFunctionError(f"矩的阶数必须 >= 0: {k}")
    root = math.sqrt(t)

    def integrand(theta: float) -> float:
        x = 1 + t + 2 * root * math.cos(theta)
        return x ** (k - 1) * math.sin(theta) ** 2

    value = 2 * t * integrate(integrand, 0.0, math.pi) / math.pi
    return value + free_poisson_atom(t) if k == 0 else value


def free_poisson_samples(t: float, grid: int) -> list[tuple[float, float]]:
    """θ 等距（中点）取样，输出 (x, 密度)，x 必在支撑内."""
    t = _check_rate(t)
    _check_grid(grid)
    root = math.sqrt(t)
    thetas = (np.arange(grid) + 0.5) * math.pi / grid
    rows = []
    for theta in thetas:
        x = 1 + t + 2 * root * math.cos(float(theta))
        rows.append((x, free_poisson_density(t, x)))
    return rows


# ── 布尔极限律 𝔰 ──────────────────────────────────────────────────


def _check_v(v: float) -> float:
    v = float(v)
    if not 0 < v < math.pi:
        raise SpecialFunctionError(f"参数 v 必须在 (0, π) 内，实际 v = {v}")
    return v


def _exp_or_inf(value: float) -> float:
    try:
        return math.exp(value)
    except OverflowError:
        return math.inf


def log_s_density(v: float) -> float:
    """log φ(v) = 2 log v - v cot v - log π - log sin v - log g(v).

    v → π 时 φ 超出双精度范围，对数仍有限。
    """
    v = _check_v(v)
    return (
        2.0 * math.log(v)
        - v / math.tan(v)
        - math.log(math.pi)
        - math.log(math.sin(v))
        - math.log(g_aux(v))
    )


def s_density(v: float) -> tuple[float, float]:
    """参数形式 (x(v), φ(v))：x = (sin v/v)·e^{v cot v} = 1/f(v),
    φ = (1/π)·v²·e^{-v cot v}/(sin v·g(v))；φ 溢出时为 inf."""
    v = _check_v(v)
    x = math.exp(-log_f(v))
    return x, _exp_or_inf(log_s_density(v))


def s_density_f_form(v: float) -> float:
    """φ(1/f(v)) = (1/π)·f(v)²/f'(v) = (1/π)·v·f(v)/g(v)."""
    v = _check_v(v)
    return _exp_or_inf(log_f(v) + math.log(v) - math.log(math.pi) - math.log(g_aux(v)))


def s_density_at(t: float) -> float:
    """φ_𝔰(t)，t ∈ (0, e)：先由 x(v) = t 反解 v，再求参数形式."""
    t = float(t)
    if not 0 < t < math.e:
        raise SpecialFunctionError(f"t 必须在 (0, e) 内，实际 t = {t}")
    return s_density(f_inverse(1.0 / t))[1]


def s_moment(k: int) -> float:
    """m_k(𝔰) = (1/π)∫₀^π f(v)^{-k} dv；k = 0 为总质量."""
    if k < 0:
        raise SpecialFunctionError(f"矩的阶数必须 >= 0: {k}")
    return integrate(lambda v: math.exp(-k * log_f(v)), 0.0, math.pi) / math.pi


def s_density_samples(grid: int) -> list[tuple[float, float]]:
    """v ∈ (0, π) 上中点等距取样，输出 (x(v), φ(v))."""
    _check_grid(grid)
    vs = (np.arange(grid) + 0.5) * math.pi / grid
    return [s_density(float(v)) for v in vs]


# ── η 的边界值与 Stieltjes 反演 ──────────────────────────────────


def eta_boundary(x: float) -> tuple[complex, complex]:
    """(η⁺(x), η⁻(x)) = (θ cot θ + iθ, θ cot θ - iθ)，θ = f⁻¹(x) ∈ [0, π).

    η⁻ 是从下半平面趋近的边界值，G_𝔰 在上半平面趋近实轴时用到它。

    Raises:
        SpecialFunctionError: x < 1/e。
    """
    x = float(x)
    if x < math.exp(-1.0) * (1 - 1e-15):
        raise SpecialFunctionError(f"η 的边界值要求 x >= 1/e，实际 x = {x}")
    theta = f_inverse(max(x, math.exp(-1.0)))
    real = 1.0 if theta == 0.0 else theta / math.tan(theta)
    return complex(real, theta), complex(real, -theta)


def boundary_density(t: float) -> float:
    """由 η⁻ 直接给出的边界值 -(1/π)·Im[(1/t)/(1 - η⁻(1/t))]，t ∈ (0, e)."""
    t = float(t)
    if not 0 < t < math.e:
        raise SpecialFunctionError(f"t 必须在 (0, e) 内，实际 t = {t}")
    _, eta_minus = eta_boundary(1.0 / t)
    return -((1.0 / t) / (1.0 - eta_minus)).imag / math.pi


def stieltjes_density(
    t: float, eps: float, *, endpoint_guard: float = ENDPOINT_GUARD
) -> float:
    """-(1/π)·Im G_𝔰(t + iε)，G_𝔰(ζ) = (1/ζ)/(1 - η(1/ζ))，η(w) = -W₀(-w).

    t > e（支撑外）同样可以求值，结果随 ε → 0 趋于 0。

    Raises:
        SpecialFunctionError: ε <= 0，或 t 距 0 / e 不足 endpoint_guard。
    """
    t, eps = float(t), float(eps)
    if not eps > 0:
        raise SpecialFunctionError(f"ε 必须 > 0，实际 ε = {eps}")
    if abs(t) < endpoint_guard or abs(t - math.e) < endpoint_guard:
        raise SpecialFunctionError(
            f"t = {t} 距支撑端点 0 或 e 过近（保护距离 {endpoint_guard}）"
        )
    w = 1.0 / complex(t, eps)
    eta = -lambert_w0_complex(-w)
    g = w / (1.0 - eta)
    return -g.imag / math.pi


# ── 形状 ──────────────────────────────────────────────────────────


def count_local_maxima(values: Sequence[float]) -> int:
    """严格局部极大值个数，端点只与唯一的邻点比较.

    连续的 +inf 视为一个点（溢出的密度尾部算作一个极大值）。
    """
    arr = np.asarray(values, dtype=float)
    if arr.size:
        inf = np.isposinf(arr)
        arr = arr[np.concatenate(([True], ~(inf[1:] & inf[:-1])))]
    if arr.size < 2:
        return int(arr.size)
    padded = np.concatenate(([-np.inf], arr, [-np.inf]))
    middle = padded[1:-1]
    peaks = (middle > padded[:-2]) & (middle > padded[2:])
    return int(np.count_nonzero(peaks))


def _check_grid(grid: int) -> None:
    if grid < 1:
        raise SpecialFunctionError(f"取样点数必须 >= 1: {grid}")
