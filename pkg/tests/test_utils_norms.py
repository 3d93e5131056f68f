"""Тесты для utils/norms.py"""

import math

import numpy as np
import pytest

from utils.calculus import DiskScalar
from utils.errors import DomainError, UnsupportedExponentError
from utils.norms import (
    CallableScalar,
    angular_nodes,
    bergman_norm,
    bergman_norms,
    circle_mean,
    contracting,
    hardy_norm,
    magnitude_divergence,
    radial_grid,
    stalled_growth,
    validate_exponent,
)

Z = CallableScalar(lambda z: z, name="z", analytic_modulus=True)
ONE = CallableScalar(lambda z: np.ones_like(z), name="one", analytic_modulus=True)


@pytest.mark.parametrize("p", [1, 1.5, 2, 3, math.inf])
def test_circle_mean_of_modulus_z(p):
    """Тест круговых средних |z|"""
    report = circle_mean(Z, 0.5, p)

    assert report.value == pytest.approx(0.5, abs=1e-14)
    assert report.radius == 0.5


def test_circle_mean_of_cosine():
    """M_2(1/2, cos-волна): ((1/2pi) int |r cos t|^2)^{1/2} = r / sqrt(2)."""
    scalar = CallableScalar(lambda z: z.real)
    report = circle_mean(scalar, 0.5, 2)

    assert report.value == pytest.approx(0.5 / math.sqrt(2.0), abs=1e-13)


def test_circle_mean_rejects_radius_outside_disk():
    """Тест отказа для радиуса вне (0, 1)"""
    with pytest.raises(DomainError):
        circle_mean(Z, 1.0, 2)
    with pytest.raises(DomainError):
        circle_mean(Z, 0.0, 2)


@pytest.mark.parametrize("p", [0.5, "abc", float("nan"), -1])
def test_validate_exponent_rejects(p):
    with pytest.raises(UnsupportedExponentError):
        validate_exponent(p)


def test_radial_grid_and_angular_nodes():
    assert radial_grid(3) == [0.5, 0.75, 0.875]
    assert angular_nodes(0.5) == 64
    assert angular_nodes(1.0 - 2.0 ** -10) == 2 ** 14
    assert angular_nodes(1.0 - 2.0 ** -20) == 2 ** 18


def test_hardy_norm_of_z_is_certified_and_extrapolated(fast_levels):
    """Тест нормы Харди для z: сертификат и экстраполяция"""
    report = hardy_norm(Z, 2, levels=fast_levels)

    assert report.kind == "hardy"
    assert report.value == pytest.approx(1.0 - 2.0 ** -fast_levels)
    assert report.certificate == "subharmonic-monotone"
    assert report.extrapolated == pytest.approx(1.0, abs=1e-12)
    assert report.trend == sorted(report.trend)
    assert report.is_finite


def test_hardy_norm_flags_logarithmic_growth():
    """Тест: логарифмический рост помечается как расходимость"""
    scalar = CallableScalar(lambda z: np.log(1.0 - z), analytic_modulus=True)
    report = hardy_norm(scalar, math.inf, levels=9)

    assert report.divergent
    assert report.value == math.inf
    assert report.grid_value == pytest.approx(9 * math.log(2.0), rel=1e-9)
    assert not report.is_finite


def test_bergman_norm_of_constant_is_one():
    """Тест нормы Бергмана константы"""
    report = bergman_norm(ONE, 2, levels=8)

    assert report.value == pytest.approx(1.0, abs=1e-12)
    assert report.grid["radial_panels"] == 9
    assert report.grid["inner_integral"] == pytest.approx(0.25, abs=1e-14)


def test_bergman_norm_of_z(identity_field):
    """||z||_{b^2}^2 = int_0^1 2 r^3 dr = 1/2."""
    report = bergman_norm(DiskScalar(identity_field, "f"), 2, levels=10)

    assert report.value == pytest.approx(math.sqrt(0.5), abs=1e-4)
    assert report.error_estimate > 0
    assert not report.divergent


def test_bergman_norms_share_one_pass(elliptic_trace_field):
    """Тест: несколько полей за один радиальный проход"""
    reports = bergman_norms(
        {"f_z": DiskScalar(elliptic_trace_field, "f_z"), "f_zbar": DiskScalar(elliptic_trace_field, "f_zbar")},
        2, levels=8,
    )

    assert reports["f_z"].value == pytest.approx(1.0, abs=1e-10)
    assert reports["f_zbar"].value == pytest.approx(math.sqrt(0.5), abs=1e-3)


def test_bergman_sup_goes_through_hardy_grid():
    report = bergman_norm(Z, math.inf, levels=5)

    assert report.kind == "bergman"
    assert report.value == pytest.approx(1.0 - 2.0 ** -5)


def test_magnitude_divergence_rule():
    """Тест правила роста по величине"""
    assert magnitude_divergence([2e3 * 1.1 ** k for k in range(8)])
    assert not magnitude_divergence([2.0 * 1.1 ** k for k in range(8)])
    assert not magnitude_divergence([2e3] * 8)


def test_stalled_growth_and_contraction():
    linear = [float(k) for k in range(6)]
    geometric = [1.0 - 0.5 ** k for k in range(6)]

    assert stalled_growth(linear)
    assert not stalled_growth(geometric)
    assert contracting(geometric)
    assert not contracting(linear)


def test_circle_mean_parseval(random_trig_spec):
    """M_2(r, f)^2 = sum |c_n|^2 r^{2|n|}."""
    from utils.boundary import fourier_coefficients
    from utils.extension import extend

    r = 0.8
    coeffs = fourier_coefficients(random_trig_spec, 8)
    expected = math.sqrt(float(np.sum(np.abs(coeffs.values) ** 2 * r ** (2 * np.abs(coeffs.indices)))))
    report = circle_mean(DiskScalar(extend(random_trig_spec), "f"), r, 2)

    assert report.value == pytest.approx(expected, abs=1e-10)


EXP = CallableScalar(lambda z: np.exp(z), name="exp", analytic_modulus=True)


@pytest.mark.parametrize("scale", [2.5, 0.1])
@pytest.mark.parametrize("p", [1, 2, 3, math.inf])
def test_hardy_and_bergman_norms_are_homogeneous(scale, p):
    """Тест: обе нормы линейны при умножении поля на скаляр"""
    scaled = CallableScalar(lambda z: scale * np.exp(z), name="scaled-exp", analytic_modulus=True)

    assert hardy_norm(scaled, p, levels=8).value == pytest.approx(scale * hardy_norm(EXP, p, levels=8).value,
                                                                  rel=1e-12)
    assert bergman_norm(scaled, p, levels=8).value == pytest.approx(scale * bergman_norm(EXP, p, levels=8).value,
                                                                    rel=1e-12)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_bergman_norm_never_exceeds_hardy_norm(p, elliptic_trace_field, abs_sin_field):
    """Тест: ||s||_{b^p} <= ||s||_p с учётом оценок ошибок"""
    scalars = {
        "exp": EXP,
        "f_z": DiskScalar(elliptic_trace_field, "f_z"),
        "f_zbar": DiskScalar(elliptic_trace_field, "f_zbar"),
        "abs-sin": DiskScalar(abs_sin_field, "f"),
    }
    for name, scalar in scalars.items():
        hardy = hardy_norm(scalar, p, levels=8)
        bergman = bergman_norm(scalar, p, levels=8)

        assert bergman.value <= hardy.value + hardy.error_estimate + bergman.error_estimate + 1e-12, name


def test_circle_means_of_harmonic_modulus_grow_with_radius(abs_sin_field):
    """Тест: M_p(r, f) не убывает по r на радиальной сетке"""
    trend = hardy_norm(DiskScalar(abs_sin_field, "f"), 2, levels=8).trend

    assert all(b >= a - 1e-12 for a, b in zip(trend[:-1], trend[1:]))
