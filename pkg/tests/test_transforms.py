"""矩 ↔ Ψ / S / Σ / 𝓡 / η 的换算."""

from __future__ import annotations

from fractions import Fraction

import pytest

from src.free.models import CumulantKind, CumulantSeq, MomentSeq, TransformError
from src.free.transforms import (
    boolean_cumulants,
    boolean_eta,
    free_cumulants,
    hankel_min_eigenvalue,
    is_measure_like,
    moments_from_boolean_cumulants,
    moments_from_eta,
    moments_from_free_cumulants,
    moments_from_r,
    moments_from_s,
    moments_from_sigma,
    psi_inverse,
    r_from_moments,
    s_from_moments,
    s_r_functional_check,
    sigma_from_moments,
)
from src.series import TruncSeries


def test_s_transform_of_free_poisson(catalan):
    s = s_from_moments(catalan.truncate(4))
    assert s.order == 3
    assert s.coeffs == (1, -1, 1, -1)


def test_s_transform_of_dirac():
    s = s_from_moments(MomentSeq.of([1, 2, 4]))
    assert s.coeffs == (Fraction(1, 2), 0)


def test_psi_inverse_leading_coefficients(random_seqs):
    for m in random_seqs:
        b = psi_inverse(m)
        assert b[0] == 0
        assert b[1] == 1 / m[1]
        assert b[2] == -m[2] / m[1] ** 3


def test_s_and_sigma_leading_coefficients(random_seqs):
    for m in random_seqs:
        s = s_from_moments(m)
        sigma = sigma_from_moments(m)
        variance = m[2] - m[1] ** 2
        assert s[0] == sigma[0] == 1 / m[1]
        assert s[1] == sigma[1] == -variance / m[1] ** 3


def test_functional_equation_on_random_sequences(random_seqs):
    assert all(s_r_functional_check(m) for m in random_seqs)


def test_functional_equation_on_float_backend(random_seqs):
    m = random_seqs[0]
    approx = MomentSeq.of([float(v) for v in m.truncate(4).m])
    assert s_r_functional_check(approx, tol=1e-6)


@pytest.mark.parametrize("bad", [[1, 0, 1], [1, Fraction(-1, 2), 1]])
def test_nonpositive_mean_is_rejected(bad):
    with pytest.raises(TransformError, match="m₁ must be > 0"):
        s_from_moments(MomentSeq.of(bad))


def test_round_trips(random_seqs):
    for m in random_seqs[:8]:
        assert moments_from_s(s_from_moments(m)) == m
        assert moments_from_sigma(sigma_from_moments(m)) == m
        assert moments_from_r(r_from_moments(m)) == m
        assert moments_from_eta(boolean_eta(m)) == m


def test_moments_from_s_guards():
    with pytest.raises(TransformError):
        moments_from_s(TruncSeries.of([0, 1]))
    with pytest.raises(TransformError):
        moments_from_s(TruncSeries.of([1, -1]), 3)


def test_free_cumulants_of_free_poisson(catalan):
    kappa = free_cumulants(catalan)
    assert kappa.kind is CumulantKind.FREE
    assert kappa.values == (1, 1, 1, 1, 1)
    assert kappa[1] == 1
    with pytest.raises(IndexError):
        kappa[0]


def test_cumulants_of_dirac():
    m = MomentSeq.of([Fraction(3, 2) ** k for k in range(6)])
    assert free_cumulants(m).values == (Fraction(3, 2), 0, 0, 0, 0)
    assert boolean_cumulants(m).values == (Fraction(3, 2), 0, 0, 0, 0)


def test_boolean_cumulants_of_free_poisson_are_shifted_catalan(catalan):
    assert boolean_cumulants(catalan).values == (1, 1, 2, 5, 14)


def test_cumulant_round_trips(random_seqs):
    m = random_seqs[3]
    assert moments_from_free_cumulants(free_cumulants(m)) == m
    assert moments_from_boolean_cumulants(boolean_cumulants(m)) == m


def test_cumulant_kind_mismatch():
    beta = CumulantSeq(CumulantKind.BOOLEAN, (Fraction(1),))
    with pytest.raises(TransformError):
        moments_from_free_cumulants(beta)
    with pytest.raises(TransformError):
        moments_from_free_cumulants([])


def test_eta_needs_zero_constant():
    with pytest.raises(TransformError):
        moments_from_eta(TruncSeries.of([1, 1]))


def test_moment_seq_validation():
    with pytest.raises(TransformError):
        MomentSeq.of([2, 1])
    with pytest.raises(TransformError):
        MomentSeq.of([1])
    with pytest.raises(TransformError):
        MomentSeq((Fraction(1), 0.5))


def test_hankel_checks(random_seqs):
    assert all(is_measure_like(m.truncate(4)) for m in random_seqs)
    # m₂ < m₁² 不可能是概率测度的矩
    assert not is_measure_like(MomentSeq.of([1, 1, 0]))
    assert hankel_min_eigenvalue([1, 1, 2], 2) == pytest.approx(0.381966, abs=1e-6)
    with pytest.raises(TransformError):
        hankel_min_eigenvalue([1, 1], 2)
