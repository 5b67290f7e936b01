"""Lambert W₀、辅助函数 f / g、Lévy 测度与 𝔰 密度."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import lambertw

from src.series import TruncSeries, compose, exp_series, mul
from src.special import SpecialFunctionError
from src.special.auxiliary import f_aux, f_derivative, f_inverse, g_aux, log_f
from src.special.densities import (
    boundary_density,
    count_local_maxima,
    eta_boundary,
    free_poisson_atom,
    free_poisson_density,
    free_poisson_moment,
    free_poisson_samples,
    free_poisson_support,
    levy_constant,
    levy_density_y,
    levy_moment,
    levy_moment_exact,
    levy_samples,
    log_s_density,
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
from src.special.quadrature import integrate
from src.special.roots import monotone_root

OMEGA = 0.5671432904097838


# ── Lambert W₀ ────────────────────────────────────────────────────


def test_lambert_known_values():
    assert lambert_w0(0.0) == 0.0
    assert lambert_w0(1.0) == pytest.approx(OMEGA, abs=1e-15)
    assert lambert_w0(math.e) == pytest.approx(1.0, abs=1e-15)
    assert lambert_w0(-INV_E) == pytest.approx(-1.0, abs=1e-7)


def test_lambert_rejects_values_below_branch_point():
    with pytest.raises(SpecialFunctionError):
        lambert_w0(-0.5)
    with pytest.raises(SpecialFunctionError):
        lambert_w0(math.nan)


def test_lambert_complex_rejects_branch_cut():
    with pytest.raises(SpecialFunctionError, match="分支切割"):
        lambert_w0_complex(complex(-1.0, 0.0))


def test_real_residuals(rng):
    for x in rng.uniform(-INV_E, 100.0, 4000):
        w = lambert_w0(float(x))
        assert w >= -1.0
        assert lambert_residual(w, x) <= 1e-14 * max(1.0, abs(x))


def test_complex_residuals(rng):
    for re, im in rng.uniform(-100.0, 100.0, (4000, 2)):
        z = complex(re, im)
        assert lambert_residual(lambert_w0_complex(z), z) <= 1e-14 * max(1.0, abs(z))


def test_residuals_next_to_branch_cut(rng):
    for re in rng.uniform(-100.0, -INV_E - 1e-3, 1000):
        for im in (1e-6, -1e-6):
            z = complex(re, im)
            w = lambert_w0_complex(z)
            assert lambert_residual(w, z) <= 1e-14 * max(1.0, abs(z))
            assert math.copysign(1.0, w.imag) == math.copysign(1.0, im)


def test_residuals_near_branch_point(rng):
    radii = 10.0 ** rng.uniform(-10.0, -2.0, 500)
    angles = rng.uniform(-math.pi, math.pi, 500)
    for r, theta in zip(radii, angles):
        z = complex(-INV_E, 0.0) + r * complex(math.cos(theta), math.sin(theta))
        if z.imag == 0.0 and z.real < -INV_E:
            continue
        assert lambert_residual(lambert_w0_complex(z), z) <= 1e-14
    for x in -INV_E + 10.0 ** rng.uniform(-14.0, -2.0, 500):
        w = lambert_w0(float(x))
        assert w >= -1.0
        assert lambert_residual(w, x) <= 1e-14


def test_matches_scipy_away_from_branch_point(rng):
    reals = rng.uniform(-0.3, 100.0, 100)
    for x in reals:
        assert lambert_w0(float(x)) == pytest.approx(lambertw(x).real, rel=1e-12, abs=1e-14)
    for re, im in rng.uniform(-20.0, 20.0, (100, 2)):
        z = complex(re, im)
        if abs(z + INV_E) < 0.05:
            continue
        assert abs(lambert_w0_complex(z) - complex(lambertw(z))) <= 1e-12 * max(1.0, abs(z))


def test_w0_series_coefficients():
    assert w0_series(4).coeffs == (0, 1, 1, Fraction(3, 2), Fraction(8, 3))
    series = w0_series(12)
    assert all(
        series[n] == Fraction(n ** (n - 1), math.factorial(n)) for n in range(1, 13)
    )


def test_w0_series_solves_functional_equation():
    # W₀(z) = -T(-z)，T 为 w0_series
    t = w0_series(10)
    w = compose(-t, -TruncSeries.identity(10))
    assert mul(w, exp_series(w)).is_identity()


@pytest.mark.parametrize("z", [1.0, 0.25, 5.0, 1j, complex(-0.2, 0.7), complex(2.0, -3.0)])
def test_integral_representation(z):
    direct = lambert_w0_complex(z) / z
    assert abs(w0_integral_repr(z) - direct) <= 1e-8


def test_integral_representation_at_zero():
    assert w0_integral_repr(0.0) == pytest.approx(1.0, abs=1e-9)


def test_integral_representation_rejects_singular_real_axis():
    with pytest.raises(SpecialFunctionError):
        w0_integral_repr(-1.0)


# ── f / g ─────────────────────────────────────────────────────────


def test_auxiliary_values_at_half_pi():
    assert f_aux(math.pi / 2) == pytest.approx(math.pi / 2, rel=1e-14)
    assert g_aux(math.pi / 2) == pytest.approx(1 + math.pi**2 / 4, rel=1e-14)
    assert f_aux(0.0) == pytest.approx(INV_E, rel=1e-15)


def test_f_is_strictly_increasing():
    values = [f_aux(float(u)) for u in np.linspace(0.0, 3.0, 400)]
    assert all(b > a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("u", np.linspace(0.1, 3.0, 15))
def test_g_relates_f_and_its_derivative(u):
    h = 1e-6
    numeric = (f_aux(u + h) - f_aux(u - h)) / (2 * h)
    assert u * numeric == pytest.approx(g_aux(u) * f_aux(u), rel=1e-6)
    assert f_derivative(u) == pytest.approx(numeric, rel=1e-6)


def test_small_u_branch_is_continuous():
    assert log_f(1e-4) == pytest.approx(-1 + 0.5e-8, abs=1e-12)
    assert log_f(0.5e-4) == pytest.approx(-1 + 0.125e-8, abs=1e-12)
    assert log_f(0.0) == -1.0


@pytest.mark.parametrize("u", [0.0, 1e-3, 0.5, 1.0, 2.0, 3.0, 3.1])
def test_f_inverse_round_trip(u):
    assert f_inverse(f_aux(u)) == pytest.approx(u, abs=1e-10)


def test_f_inverse_domain():
    assert f_inverse(INV_E) == 0.0
    with pytest.raises(SpecialFunctionError):
        f_inverse(0.3)
    with pytest.raises(SpecialFunctionError):
        f_aux(math.pi)


def test_monotone_root_needs_bracket():
    assert monotone_root(lambda x: x * x - 2, 0.0, 2.0) == pytest.approx(math.sqrt(2))
    with pytest.raises(SpecialFunctionError, match="同号"):
        monotone_root(lambda x: x * x + 1, -1.0, 1.0)


def test_integrate_polynomial():
    assert integrate(lambda x: x**3, 0.0, 2.0) == pytest.approx(4.0)


# ── 𝔶_α 的 Lévy 测度 ──────────────────────────────────────────────


def test_levy_density_vanishes_at_right_end():
    assert levy_density_y(1.0, math.e) == pytest.approx(0.0, abs=1e-12)
    assert levy_density_y(2.0, 1.0) > 0
    with pytest.raises(SpecialFunctionError):
        levy_density_y(1.0, 3.0)


@pytest.mark.parametrize("alpha", [1.0, 2.0, 0.5])
@pytest.mark.parametrize("k", range(5))
def test_levy_moments(alpha, k):
    want = levy_moment_exact(alpha, k)
    assert levy_moment(alpha, k) == pytest.approx(want, rel=1e-6)


def test_levy_second_moment_value():
    assert levy_moment_exact(1.0, 2) == pytest.approx(8 / 3)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, 3.0])
def test_levy_constant_is_independent_of_alpha(alpha):
    assert levy_constant(alpha) == pytest.approx(1.0, abs=1e-6)


def test_levy_samples_start_at_endpoint():
    rows = levy_samples(1.0, 8)
    assert rows[0] == (pytest.approx(math.e), 0.0)
    s_values = [s for s, _ in rows]
    assert all(b < a for a, b in zip(s_values, s_values[1:]))
    assert all(density >= 0 for _, density in rows)


# ── 自由 Poisson ──────────────────────────────────────────────────


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_free_poisson_total_mass(t):
    assert free_poisson_moment(t, 0) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("k, catalan", [(1, 1), (2, 2), (3, 5), (4, 14)])
def test_free_poisson_catalan_moments(k, catalan):
    assert free_poisson_moment(1.0, k) == pytest.approx(catalan, abs=1e-8)


def test_free_poisson_density_support():
    assert free_poisson_support(1.0) == (0.0, 4.0)
    assert free_poisson_density(1.0, 5.0) == 0.0
    assert free_poisson_density(1.0, -1.0) == 0.0
    assert free_poisson_density(1.0, 2.0) == pytest.approx(1 / (2 * math.pi))
    assert free_poisson_atom(0.5) == 0.5
    assert free_poisson_atom(2.0) == 0.0
    lo, hi = free_poisson_support(2.0)
    assert all(lo <= x <= hi for x, _ in free_poisson_samples(2.0, 50))


# ── 𝔰 密度 ────────────────────────────────────────────────────────


def test_s_density_at_half_pi():
    x, phi = s_density(math.pi / 2)
    assert x == pytest.approx(2 / math.pi, rel=1e-14)
    assert phi == pytest.approx(math.pi / (4 * (1 + math.pi**2 / 4)), rel=1e-12)


@pytest.mark.parametrize("v", np.linspace(0.05, math.pi - 0.05, 25))
def test_s_density_forms_agree(v):
    _, phi = s_density(v)
    assert phi == pytest.approx(s_density_f_form(v), rel=1e-10)


@pytest.mark.parametrize("k, want", [(0, 1.0), (1, 1.0), (2, 2.0), (3, 4.5)])
def test_s_moments(k, want):
    assert s_moment(k) == pytest.approx(want, abs=1e-8)


def test_s_density_is_bimodal():
    phis = [phi for _, phi in s_density_samples(10_000)]
    assert count_local_maxima(phis) >= 2


def test_count_local_maxima():
    assert count_local_maxima([1, 3, 2, 4, 1]) == 2
    assert count_local_maxima([1, 2, 3]) == 1
    assert count_local_maxima([2, 2, 2]) == 0
    assert count_local_maxima([]) == 0


def test_count_local_maxima_merges_infinite_runs():
    assert count_local_maxima([5, 1, 2, math.inf, math.inf]) == 2
    assert count_local_maxima([math.inf, math.inf]) == 1
    assert count_local_maxima([math.inf, 1, math.inf, math.inf, math.inf]) == 2


@pytest.mark.parametrize("v", [0.01, 1.0, 2.0, 3.0])
def test_log_s_density_matches_direct_value(v):
    assert log_s_density(v) == pytest.approx(math.log(s_density(v)[1]), rel=1e-12)


def test_s_density_near_right_end_overflows_to_inf():
    v = math.pi - 1e-3
    assert 3100.0 < log_s_density(v) < 3200.0
    x, phi = s_density(v)
    assert phi == math.inf
    assert 0.0 <= x < 1e-300
    assert s_density_f_form(v) == math.inf


def test_s_density_samples_on_fine_grid():
    rows = s_density_samples(1000)
    assert len(rows) == 1000
    assert rows[-1][1] == math.inf
    assert count_local_maxima([phi for _, phi in rows]) == 2


def test_eta_boundary_values():
    plus, minus = eta_boundary(INV_E)
    assert plus == pytest.approx(1.0)
    assert minus == pytest.approx(1.0)
    plus, minus = eta_boundary(math.pi / 2)
    assert plus.real == pytest.approx(0.0, abs=1e-12)
    assert plus.imag == pytest.approx(math.pi / 2, rel=1e-12)
    assert minus == plus.conjugate()
    with pytest.raises(SpecialFunctionError):
        eta_boundary(0.3)


@pytest.mark.parametrize("t", [0.2, 2 / math.pi, 1.0, 2.0, 2.6])
def test_boundary_density_matches_parametric_form(t):
    assert boundary_density(t) == pytest.approx(s_density_at(t), rel=1e-9)


@pytest.mark.parametrize("t", np.linspace(0.05, math.e - 0.05, 20))
def test_stieltjes_inversion(t):
    assert stieltjes_density(t, 1e-7) == pytest.approx(s_density_at(t), abs=1e-4)


def test_stieltjes_inversion_at_half_pi_parameter():
    want = math.pi / (4 * (1 + math.pi**2 / 4))
    assert stieltjes_density(2 / math.pi, 1e-7) == pytest.approx(want, abs=1e-4)


def test_stieltjes_outside_support_is_small():
    assert abs(stieltjes_density(3.5, 1e-7)) < 1e-5


def test_stieltjes_guards():
    with pytest.raises(SpecialFunctionError):
        stieltjes_density(1.0, 0.0)
    with pytest.raises(SpecialFunctionError):
        stieltjes_density(math.e + 1e-4, 1e-7)
    with pytest.raises(SpecialFunctionError):
        stieltjes_density(1e-4, 1e-7)
